#include <partlist/lab.hpp>

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>

namespace {

struct Options {
    std::vector<std::string> inputs;
    std::string format = "graph6";
    std::vector<std::string> families;
    std::optional<int> t_max;
    std::optional<int> palette;
    int jobs = 1;
    std::string cache;
    std::string out_json;
    std::string out_csv;
    std::uint64_t seed = 1;
    bool unsafe_caps = false;
    std::vector<std::string> statements;

    std::string n_range = "5";
    std::string edge_prob = "1/2";
    int count = 10;
    std::string bundles;

    std::string graph;
    int t = 1;
};

void add_common(CLI::App* app, Options& o, bool with_inputs)
{
    if (with_inputs) {
        app->add_option("--input", o.inputs, "graph file (repeatable)");
        app->add_option("--format", o.format, "input format: graph6 or edges")
            ->check(CLI::IsMember({"graph6", "edges"}));
        app->add_option("--family", o.families,
                        "generated graph: complete:N cycle:N path:N bipartite:M,N petersen gnp:N,P/Q,SEED");
    }
    app->add_option("--t-max", o.t_max, "skip graphs whose choice number exceeds this");
    app->add_option("--palette", o.palette, "palette bound for the adversary (results flagged palette-limited)");
    app->add_option("--jobs", o.jobs, "worker threads")->check(CLI::PositiveNumber);
    app->add_option("--cache", o.cache, "results cache (JSON lines)");
    app->add_option("--out-json", o.out_json, "write the JSON report here ('-' for stdout)");
    app->add_option("--out-csv", o.out_csv, "write the CSV summary here");
    app->add_option("--seed", o.seed, "seed for sampling and hunting");
    app->add_flag("--unsafe-caps", o.unsafe_caps, "lift the adversary size caps (exponential)");
    app->add_option("--bundles", o.bundles, "append counterexample bundles here (JSON lines)");
}

plc::RunConfig config_from(const Options& o)
{
    plc::RunConfig cfg;
    const auto format = o.format == "edges" ? plc::GraphFormat::EdgeList : plc::GraphFormat::Graph6;
    for (const auto& path : o.inputs)
        for (auto& g : plc::read_graph_file(path, format))
            cfg.graphs.push_back(std::move(g));
    for (const auto& f : o.families)
        cfg.graphs.push_back(plc::generate(plc::parse_family(f)));
    cfg.t_max = o.t_max;
    cfg.palette = o.palette;
    cfg.jobs = o.jobs;
    cfg.cache_path = o.cache;
    cfg.bundle_path = o.bundles;
    cfg.seed = o.seed;
    cfg.caps.unsafe = o.unsafe_caps;
    cfg.statements = {o.statements.begin(), o.statements.end()};
    return cfg;
}

void write_file(const std::string& path, const std::string& text)
{
    if (path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot write " + path);
    out << text;
}

void print_summary(const plc::RunReport& r)
{
    for (const auto& e : r.entries) {
        std::cout << e.graph6;
        if (!e.report) {
            std::cout << "  " << e.status << ": " << e.reason << '\n';
            continue;
        }
        const auto& tab = e.report->table;
        std::cout << "  n=" << tab.n << " alpha=" << tab.alpha << " chi=" << tab.chi << " chi_l=" << tab.chi_l
                  << " lambda=(";
        for (std::size_t t = 0; t < tab.values.size(); ++t)
            std::cout << (t ? "," : "") << tab.values[t];
        std::cout << ")";
        if (r.mode != "table") {
            int failed = 0;
            for (const auto& v : e.report->verdicts)
                failed += v.holds ? 0 : 1;
            std::cout << "  verdicts=" << e.report->verdicts.size() << " failed=" << failed;
        }
        std::cout << '\n';
    }
    for (const auto& b : r.bugs)
        std::cout << b << '\n';
}

int finish(const plc::RunReport& r, const Options& o)
{
    const std::set<std::string> filter(o.statements.begin(), o.statements.end());
    if (!o.out_json.empty())
        write_file(o.out_json, plc::report_json(r, filter).dump(2) + "\n");
    if (!o.out_csv.empty())
        write_file(o.out_csv, plc::report_csv(r));
    if (o.out_json != "-")
        print_summary(r);
    std::cerr << "graphs=" << r.entries.size() << " searches=" << r.searches << " cache_hits=" << r.cache_hits
              << " counterexamples=" << r.conjecture_failures << " proved_failures=" << r.proved_failures
              << " seconds=" << r.seconds << '\n';
    return plc::exit_code(r);
}

plc::HuntSpec hunt_spec(const Options& o)
{
    plc::HuntSpec h;
    const auto dash = o.n_range.find('-');
    try {
        h.n_min = std::stoi(o.n_range.substr(0, dash));
        h.n_max = dash == std::string::npos ? h.n_min : std::stoi(o.n_range.substr(dash + 1));
    } catch (const std::exception&) {
        throw std::invalid_argument("--n-range expects N or MIN-MAX");
    }
    h.p = plc::parse_probability(o.edge_prob);
    h.count = o.count;
    return h;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Exact partial list coloring: lambda tables, statement checks, counterexample hunts"};
    app.require_subcommand(1);
    Options o;

    auto* table = app.add_subcommand("table", "compute lambda_0 .. lambda_chi_l for each graph");
    add_common(table, o, true);

    auto* check = app.add_subcommand("check", "compute tables and evaluate every statement");
    add_common(check, o, true);
    check->add_option("--statement", o.statements, "only report these statement ids");

    auto* hunt = app.add_subcommand("hunt", "search random graphs for conjecture counterexamples");
    add_common(hunt, o, false);
    hunt->add_option("--n-range", o.n_range, "vertex count N or range MIN-MAX");
    hunt->add_option("--edge-prob", o.edge_prob, "edge probability P/Q");
    hunt->add_option("--count", o.count, "number of distinct graphs")->check(CLI::NonNegativeNumber);

    auto* witness = app.add_subcommand("witness", "print a cached minimizing assignment and a maximum coloring");
    witness->add_option("--cache", o.cache, "results cache")->required();
    witness->add_option("--graph", o.graph, "graph6 string")->required();
    witness->add_option("--t", o.t, "list size")->required();
    witness->add_option("--palette", o.palette, "palette key (default n*t)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*witness) {
            plc::ResultsCache cache(o.cache);
            auto w = plc::show_witness(cache, o.graph, o.t, o.palette);
            std::cout << plc::witness_json(w).dump(2) << '\n';
            return 0;
        }
        plc::RunConfig cfg = config_from(o);
        if (*hunt) {
            cfg.hunt = hunt_spec(o);
            return finish(plc::hunt_counterexamples(cfg), o);
        }
        if (cfg.graphs.empty())
            throw std::invalid_argument("no graphs: pass --input or --family");
        if (*table)
            return finish(plc::run_tables(cfg), o);
        return finish(plc::run_catalog(cfg), o);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
