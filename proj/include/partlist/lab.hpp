#pragma once

#include "adversary.hpp"
#include "generate.hpp"
#include "graph6.hpp"
#include "json_io.hpp"
#include "list_solver.hpp"
#include "theory.hpp"

#include <atomic>
#include <chrono>
#include <fstream>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

namespace plc {

class IntegrityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class CacheMiss : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline std::uint64_t text_hash(const std::string& s)
{
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

// Append-only JSON lines, one per (graph6, t, palette, version). Every line is checked on load:
// the stored witness must be a t-uniform assignment within the palette whose lambda equals the value.
class ResultsCache {
public:
    ResultsCache() = default;

    explicit ResultsCache(const std::string& path) : path_(path)
    {
        std::ifstream in(path);
        std::string line;
        int lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            if (line.empty())
                continue;
            load_line(line, lineno);
        }
        out_.open(path, std::ios::app);
        if (!out_)
            throw std::runtime_error("cannot open cache file " + path + " for writing");
    }

    std::optional<AdversaryResult> find(const Graph& g, const std::string& graph6, int t, int palette)
    {
        std::lock_guard lock(mu_);
        auto it = entries_.find({graph6, t, palette});
        if (it == entries_.end())
            return std::nullopt;
        ++hits_;
        AdversaryResult r{it->second.value, ListAssignment(g, it->second.lists, it->second.witness_palette)};
        r.palette_limited = it->second.palette_limited;
        return r;
    }

    void store(const std::string& graph6, int t, int palette, const AdversaryResult& r)
    {
        std::lock_guard lock(mu_);
        Key key{graph6, t, palette};
        if (entries_.count(key))
            return;
        entries_[key] = {r.value, r.witness.lists(), r.witness.palette(), r.palette_limited};
        if (out_.is_open()) {
            Json line{{"version", kSchemaVersion},
                      {"graph", graph6},
                      {"t", t},
                      {"palette", palette},
                      {"value", r.value},
                      {"palette_limited", r.palette_limited},
                      {"witness", assignment_json(graph6, r.witness)}};
            out_ << line.dump() << '\n';
            out_.flush();
        }
    }

    bool contains(const std::string& graph6, int t, int palette) const
    {
        std::lock_guard lock(mu_);
        return entries_.count({graph6, t, palette}) > 0;
    }

    std::size_t size() const
    {
        std::lock_guard lock(mu_);
        return entries_.size();
    }
    std::uint64_t hits() const { return hits_; }

private:
    using Key = std::tuple<std::string, int, int>;
    struct Entry {
        int value;
        std::vector<ColorSet> lists;
        int witness_palette;
        bool palette_limited;
    };

    void load_line(const std::string& line, int lineno)
    {
        const std::string where = path_ + ":" + std::to_string(lineno) + ": ";
        Json j;
        try {
            j = Json::parse(line);
            if (j.at("version").get<int>() != kSchemaVersion)
                return;
            const std::string graph6 = j.at("graph").get<std::string>();
            const int t = j.at("t").get<int>();
            const int palette = j.at("palette").get<int>();
            const int value = j.at("value").get<int>();
            ParsedAssignment w = assignment_from_json(j.at("witness"));
            if (emit_graph6(w.graph) != graph6 || j.at("witness").at("graph").get<std::string>() != graph6)
                throw IntegrityError(where + "witness belongs to a different graph");
            const auto size = w.lists.uniform_size();
            const bool uniform = t == 0 ? w.lists.color_list() == 0 : size && *size == t;
            if (!uniform)
                throw IntegrityError(where + "witness is not " + std::to_string(t) + "-uniform");
            if (w.lists.palette() > palette)
                throw IntegrityError(where + "witness exceeds the palette bound");
            if (lambda_of_assignment(w.graph, w.lists).value != value)
                throw IntegrityError(where + "stored value does not match its witness");
            Key key{graph6, t, palette};
            auto it = entries_.find(key);
            if (it != entries_.end() && it->second.value != value)
                throw IntegrityError(where + "conflicting values for the same key");
            entries_[key] = {value, w.lists.lists(), w.lists.palette(), j.value("palette_limited", false)};
        } catch (const IntegrityError&) {
            throw;
        } catch (const std::exception& e) {
            throw IntegrityError(where + "unreadable cache line (" + e.what() + ")");
        }
    }

    std::string path_;
    mutable std::mutex mu_;
    std::map<Key, Entry> entries_;
    std::ofstream out_;
    std::atomic<std::uint64_t> hits_{0};
};

struct HuntSpec {
    int n_min = 5;
    int n_max = 5;
    Probability p{1, 2};
    int count = 10;
};

struct RunConfig {
    std::vector<Graph> graphs;
    std::optional<HuntSpec> hunt;
    std::optional<int> t_max;
    AdversaryCaps caps;
    std::optional<int> palette;
    int jobs = 1;
    std::string cache_path;
    std::string bundle_path;
    std::set<std::string> statements; // empty: all
    std::uint64_t seed = 1;
    int induced_samples = 3;
    int restriction_samples = 6;
};

// lambda_t and tables through the results cache, memoized in memory by graph6.
class Lab {
public:
    Lab(AdversaryOptions opt, ResultsCache* cache) : opt_(std::move(opt)), cache_(cache) {}

    int palette_key(const Graph& g, int t) const { return opt_.palette.value_or(g.order() * t); }

    AdversaryResult lambda(const Graph& g, int t)
    {
        const std::string g6 = emit_graph6(g);
        const int key = palette_key(g, t);
        if (cache_)
            if (auto hit = cache_->find(g, g6, t, key))
                return *hit;
        ++searches_;
        AdversaryResult r = lambda_t(g, t, opt_);
        if (cache_)
            cache_->store(g6, t, key, r);
        return r;
    }

    // Stops with SizeError once t passes t_max without reaching lambda_t = n.
    LambdaTable table(const Graph& g, std::optional<int> t_max = std::nullopt)
    {
        const std::string g6 = emit_graph6(g);
        {
            std::lock_guard lock(mu_);
            auto it = tables_.find(g6);
            if (it != tables_.end()) {
                if (t_max && it->second.chi_l > *t_max)
                    throw SizeError("choice number exceeds t-max " + std::to_string(*t_max));
                return it->second;
            }
        }
        LambdaTable tab = lambda_table(g, [&](const Graph& h, int t) {
            if (t_max && t > *t_max)
                throw SizeError("choice number exceeds t-max " + std::to_string(*t_max));
            return lambda(h, t);
        });
        std::lock_guard lock(mu_);
        tables_.emplace(g6, tab);
        return tab;
    }

    int choice_number(const Graph& g) { return table(g).chi_l; }

    std::uint64_t searches() const { return searches_; }
    const AdversaryOptions& options() const { return opt_; }

private:
    AdversaryOptions opt_;
    ResultsCache* cache_;
    std::mutex mu_;
    std::map<std::string, LambdaTable> tables_;
    std::atomic<std::uint64_t> searches_{0};
};

struct GraphEntry {
    int index = 0;
    std::string graph6;
    std::string status = "ok"; // ok | skipped | aborted
    std::string reason;
    std::optional<ConjectureReport> report;
};

struct RunReport {
    std::string mode;
    std::vector<GraphEntry> entries;
    std::vector<Json> bundles;
    std::vector<std::string> bugs;
    int conjecture_failures = 0;
    int proved_failures = 0;
    std::uint64_t searches = 0;
    std::uint64_t cache_hits = 0;
    double seconds = 0;
};

inline int exit_code(const RunReport& r)
{
    if (r.proved_failures > 0)
        return 3;
    if (r.conjecture_failures > 0)
        return 2;
    return 0;
}

namespace detail {

inline VertexSet random_subset(Xorshift64& rng, int n, int min_size)
{
    while (true) {
        Bits s = rng.next() & low_bits(n);
        if (popcount(s) >= min_size)
            return VertexSet{s};
    }
}

inline ReportInputs sample_inputs(const Graph& g, const LambdaTable& tab, Lab& lab, std::uint64_t seed,
                                  const RunConfig& cfg)
{
    ReportInputs in;
    in.table_of = [&lab](const Graph& h) { return lab.table(h); };
    in.choice_number = [&lab](const Graph& h) { return lab.choice_number(h); };
    const int n = g.order();
    Xorshift64 rng(seed ^ text_hash(tab.graph6));
    in.induced_sample.push_back(g.vertices());
    in.induced_sample.push_back(VertexSet::of({0}));
    for (int v = 0; v < n && n > 1; ++v)
        in.induced_sample.push_back(g.vertices() - VertexSet::of({v}));
    for (int i = 0; i < cfg.induced_samples && n > 2; ++i)
        in.induced_sample.push_back(random_subset(rng, n, 2));
    for (int i = 0; i < cfg.restriction_samples; ++i) {
        const int t = 1 + i % tab.chi_l;
        VertexSet s = random_subset(rng, n, 1);
        if (i % 2 == 0) {
            in.restriction_sample.push_back({tab.witnesses[static_cast<std::size_t>(t)], s});
            continue;
        }
        const int palette = t + 2;
        std::vector<ColorSet> lists;
        for (int v = 0; v < n; ++v) {
            ColorSet l = 0;
            while (popcount(l) < t)
                l |= bit(static_cast<int>(rng.below(static_cast<std::uint64_t>(palette))));
            lists.push_back(l);
        }
        in.restriction_sample.push_back({ListAssignment(g, std::move(lists), palette), s});
    }
    return in;
}

inline ConjectureReport conjecture_report(const LambdaTable& tab)
{
    ConjectureReport rep{tab.graph6, tab, {}, {}};
    for (auto& v : check_agh(tab))
        rep.verdicts.push_back(std::move(v));
    for (auto& v : check_ratio(tab))
        rep.verdicts.push_back(std::move(v));
    for (const auto& s : statement_checklist())
        rep.tally[s.id] = {};
    for (const auto& v : rep.verdicts) {
        ++rep.tally[v.statement].checked;
        rep.tally[v.statement].failed += v.holds ? 0 : 1;
    }
    return rep;
}

} // namespace detail

// Recomputes lambda_t independently of the pruned search: raw enumeration where it is feasible,
// otherwise the canonical search with every reduction and prune switched off.
inline int recheck_lambda(const Graph& g, int t, const AdversaryCaps& caps)
{
    if (g.order() <= 4 && t <= 2)
        return lambda_t_oracle(g, t);
    AdversaryOptions plain;
    plain.caps = caps;
    plain.reduce = false;
    plain.dominance = false;
    plain.prefix_bound = false;
    return lambda_t(g, t, plain).value;
}

inline Json make_bundle(const Graph& g, const LambdaTable& tab, const Verdict& v, const std::string& recheck)
{
    Json witnesses = Json::array();
    for (int t : v.witness_t) {
        const ListAssignment& lists = tab.witnesses[static_cast<std::size_t>(std::min(t, tab.chi_l))];
        SolveResult best = lambda_of_assignment(g, lists);
        witnesses.push_back({{"t", t},
                             {"value", tab.at(t)},
                             {"assignment", assignment_json(tab.graph6, lists)},
                             {"coloring", coloring_json(best.witness)}});
    }
    return Json{{"version", kSchemaVersion},
                {"graph", tab.graph6},
                {"statement", v.statement},
                {"params", params_json(v.params)},
                {"lhs", rational_json(v.lhs)},
                {"rhs", rational_json(v.rhs)},
                {"lambda", tab.values},
                {"chi_l", tab.chi_l},
                {"witnesses", std::move(witnesses)},
                {"recheck", recheck}};
}

struct ReplayResult {
    bool reproduced = false;
    std::string detail;
};

// Rebuilds the failing verdict from a bundle: witnesses must color exactly their stated values,
// stated values must match a fresh computation, and the verdict must fail again.
inline ReplayResult replay_bundle(const Json& bundle, const AdversaryCaps& caps = {})
{
    try {
        Graph g = parse_graph6(bundle.at("graph").get<std::string>());
        for (const auto& w : bundle.at("witnesses")) {
            ParsedAssignment a = assignment_from_json(w.at("assignment"));
            if (!(a.graph == g))
                return {false, "witness graph differs from bundle graph"};
            PartialColoring c = coloring_from_json(w.at("coloring"));
            if (c.order() != g.order() || !c.is_proper(g) || !c.conforms_to(a.lists))
                return {false, "coloring is not a proper coloring from the lists"};
            const int value = w.at("value").get<int>();
            if (c.count() != value || lambda_of_assignment(g, a.lists).value != value)
                return {false, "witness does not attain its stated value"};
        }
        AdversaryOptions opt;
        opt.caps = caps;
        LambdaTable tab = lambda_table(g, opt);
        if (Json(tab.values) != bundle.at("lambda"))
            return {false, "stored lambda values differ from a fresh computation"};
        const std::string id = bundle.at("statement").get<std::string>();
        ConjectureReport rep = detail::conjecture_report(tab);
        for (const auto& v : rep.verdicts)
            if (v.statement == id && params_json(v.params) == bundle.at("params"))
                return {!v.holds, v.holds ? "verdict holds on recomputation" : "failure reproduced"};
        return {false, "no verdict with these parameters"};
    } catch (const std::exception& e) {
        return {false, std::string("unreadable bundle: ") + e.what()};
    }
}

class BundleSink {
public:
    explicit BundleSink(const std::string& path)
    {
        if (path.empty())
            return;
        std::ifstream in(path);
        std::string line;
        while (std::getline(in, line))
            if (!line.empty())
                seen_.insert(bundle_key(Json::parse(line)));
        out_.open(path, std::ios::app);
        if (!out_)
            throw std::runtime_error("cannot open bundle file " + path);
    }

    void write(const Json& bundle)
    {
        std::lock_guard lock(mu_);
        if (!out_.is_open() || !seen_.insert(bundle_key(bundle)).second)
            return;
        out_ << bundle.dump() << '\n';
        out_.flush();
    }

private:
    static std::string bundle_key(const Json& b)
    {
        return b.at("graph").get<std::string>() + "|" + b.at("statement").get<std::string>() + "|" +
               b.at("params").dump();
    }

    std::mutex mu_;
    std::set<std::string> seen_;
    std::ofstream out_;
};

namespace detail {

struct Runner {
    const RunConfig& cfg;
    Lab& lab;
    BundleSink& sink;
    bool conjectures_only;
    std::atomic<bool> abort{false};
    std::mutex mu;

    Runner(const RunConfig& c, Lab& l, BundleSink& s, bool only) : cfg(c), lab(l), sink(s), conjectures_only(only) {}

    struct Outcome {
        GraphEntry entry;
        std::vector<Json> bundles;
        std::vector<std::string> bugs;
        int conjecture_failures = 0;
    };

    Outcome process(const Graph& g, int index)
    {
        Outcome out;
        out.entry.index = index;
        out.entry.graph6 = emit_graph6(g);
        LambdaTable tab;
        try {
            tab = lab.table(g, cfg.t_max);
        } catch (const SizeError& e) {
            out.entry.status = "skipped";
            out.entry.reason = e.what();
            return out;
        }
        ConjectureReport rep = conjectures_only
                                   ? conjecture_report(tab)
                                   : build_report(g, tab, sample_inputs(g, tab, lab, cfg.seed, cfg));
        for (const auto& v : rep.verdicts) {
            if (v.holds)
                continue;
            if (v.proved()) {
                out.bugs.push_back("solver bug: proved statement " + v.statement + " fails on " + tab.graph6 + " " +
                                   params_json(v.params).dump());
                continue;
            }
            std::string how = g.order() <= 4 && *std::max_element(v.witness_t.begin(), v.witness_t.end()) <= 2
                                  ? "raw enumeration"
                                  : "unpruned search";
            for (int t : v.witness_t)
                if (t < tab.chi_l && recheck_lambda(g, t, cfg.caps) != tab.at(t))
                    out.bugs.push_back("solver bug: lambda_" + std::to_string(t) + " of " + tab.graph6 +
                                       " disagrees with the independent recomputation");
            Json b = make_bundle(g, tab, v, how);
            sink.write(b);
            out.bundles.push_back(std::move(b));
            ++out.conjecture_failures;
        }
        out.entry.report = std::move(rep);
        return out;
    }

    RunReport run(const std::vector<Graph>& graphs, std::string mode)
    {
        const auto start = std::chrono::steady_clock::now();
        std::vector<std::optional<Outcome>> results(graphs.size());
        std::atomic<std::size_t> next{0};
        std::exception_ptr failure;
        auto worker = [&] {
            while (!abort) {
                const std::size_t i = next++;
                if (i >= graphs.size())
                    return;
                try {
                    Outcome o = process(graphs[i], static_cast<int>(i));
                    if (!o.bugs.empty())
                        abort = true;
                    results[i] = std::move(o);
                } catch (...) {
                    std::lock_guard lock(mu);
                    if (!failure)
                        failure = std::current_exception();
                    abort = true;
                }
            }
        };
        const int workers = std::max(1, std::min<int>(cfg.jobs, static_cast<int>(graphs.size())));
        std::vector<std::thread> pool;
        for (int w = 1; w < workers; ++w)
            pool.emplace_back(worker);
        worker();
        for (auto& t : pool)
            t.join();
        if (failure)
            std::rethrow_exception(failure);

        RunReport rep;
        rep.mode = std::move(mode);
        for (std::size_t i = 0; i < graphs.size(); ++i) {
            if (!results[i]) {
                GraphEntry e;
                e.index = static_cast<int>(i);
                e.graph6 = emit_graph6(graphs[i]);
                e.status = "aborted";
                e.reason = "run stopped after a proved-statement failure";
                rep.entries.push_back(std::move(e));
                continue;
            }
            Outcome& o = *results[i];
            rep.entries.push_back(std::move(o.entry));
            for (auto& b : o.bundles)
                rep.bundles.push_back(std::move(b));
            for (auto& s : o.bugs)
                rep.bugs.push_back(std::move(s));
            rep.conjecture_failures += o.conjecture_failures;
        }
        rep.proved_failures = static_cast<int>(rep.bugs.size());
        rep.searches = lab.searches();
        rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        return rep;
    }
};

inline AdversaryOptions adversary_options(const RunConfig& cfg, std::size_t graph_count)
{
    AdversaryOptions opt;
    opt.caps = cfg.caps;
    opt.palette = cfg.palette;
    opt.jobs = graph_count == 1 ? cfg.jobs : 1;
    return opt;
}

} // namespace detail

inline RunReport run_with(const RunConfig& cfg, const std::vector<Graph>& graphs, bool conjectures_only, std::string mode)
{
    std::optional<ResultsCache> cache;
    if (!cfg.cache_path.empty())
        cache.emplace(cfg.cache_path);
    Lab lab(detail::adversary_options(cfg, graphs.size()), cache ? &*cache : nullptr);
    BundleSink sink(cfg.bundle_path);
    detail::Runner runner(cfg, lab, sink, conjectures_only);
    RunReport rep = runner.run(graphs, std::move(mode));
    rep.cache_hits = cache ? cache->hits() : 0;
    return rep;
}

inline RunReport run_catalog(const RunConfig& cfg) { return run_with(cfg, cfg.graphs, false, "check"); }

// Distinct gnp graphs in stream order; gives up after a bounded number of duplicates.
inline std::vector<Graph> hunt_stream(const HuntSpec& spec, std::uint64_t seed)
{
    if (spec.n_min < 1 || spec.n_max < spec.n_min || spec.n_max > kMaxVertices)
        throw std::invalid_argument("hunt n-range must satisfy 1 <= min <= max <= 64");
    Xorshift64 rng(seed);
    std::vector<Graph> out;
    std::set<std::string> seen;
    const long attempts = 100L * spec.count + 1000;
    for (long i = 0; i < attempts && static_cast<int>(out.size()) < spec.count; ++i) {
        const int n = spec.n_min + static_cast<int>(rng.below(static_cast<std::uint64_t>(spec.n_max - spec.n_min + 1)));
        Graph g = generate_gnp(n, spec.p, rng);
        if (seen.insert(emit_graph6(g)).second)
            out.push_back(std::move(g));
    }
    return out;
}

inline RunReport hunt_counterexamples(const RunConfig& cfg)
{
    if (!cfg.hunt)
        throw std::invalid_argument("hunt needs an n-range, edge probability and count");
    return run_with(cfg, hunt_stream(*cfg.hunt, cfg.seed), true, "hunt");
}

inline RunReport run_tables(const RunConfig& cfg)
{
    RunConfig plain = cfg;
    RunReport rep = run_with(plain, cfg.graphs, true, "table");
    for (auto& e : rep.entries)
        if (e.report)
            e.report->verdicts.clear();
    return rep;
}

inline Json report_json(const RunReport& r, const std::set<std::string>& statements = {}, bool witnesses = true)
{
    Json graphs = Json::array();
    int ok = 0, skipped = 0;
    for (const auto& e : r.entries) {
        Json g{{"index", e.index}, {"graph", e.graph6}, {"status", e.status}};
        if (!e.reason.empty())
            g["reason"] = e.reason;
        if (e.report) {
            ++ok;
            const auto& rep = *e.report;
            g["table"] = table_json(rep.table, witnesses);
            if (r.mode != "table") {
                Json vs = Json::array();
                for (const auto& v : rep.verdicts)
                    if (statements.empty() || statements.count(v.statement))
                        vs.push_back(verdict_json(v, rep.table));
                g["verdicts"] = std::move(vs);
                g["summary"] = tally_json(rep);
            }
        } else if (e.status == "skipped") {
            ++skipped;
        }
        graphs.push_back(std::move(g));
    }
    Json out{{"version", kSchemaVersion}, {"mode", r.mode}, {"graphs", std::move(graphs)}};
    out["summary"] = {{"graphs", r.entries.size()},
                      {"checked", ok},
                      {"skipped", skipped},
                      {"conjecture_failures", r.conjecture_failures},
                      {"proved_failures", r.proved_failures}};
    if (r.mode == "check")
        out["notes"] = {"max_choosable_subgraph ranges over induced subgraphs only",
                        "td_reflexive, td_antisymmetric and td_transitive are reported separately"};
    out["counterexamples"] = r.bundles;
    if (!r.bugs.empty())
        out["errors"] = r.bugs;
    return out;
}

inline std::string report_csv(const RunReport& r)
{
    std::ostringstream out;
    out << "index,graph,status,statement,kind,checked,failed\n";
    for (const auto& e : r.entries) {
        if (!e.report) {
            out << e.index << ',' << csv_escape(e.graph6) << ',' << e.status << ",,,,\n";
            continue;
        }
        for (const auto& s : statement_checklist()) {
            const auto& t = e.report->tally.at(s.id);
            out << e.index << ',' << csv_escape(e.graph6) << ',' << e.status << ',' << s.id << ','
                << (s.kind == StatementKind::Proved ? "proved" : "conjecture") << ',' << t.checked << ',' << t.failed
                << '\n';
        }
    }
    return out.str();
}

struct WitnessView {
    std::string graph6;
    int t = 0;
    int value = 0;
    ListAssignment lists;
    PartialColoring coloring;
};

// Cached minimizing assignment plus a maximum coloring under it, both validated.
inline WitnessView show_witness(ResultsCache& cache, const std::string& graph6, int t, std::optional<int> palette = {})
{
    Graph g = parse_graph6(graph6);
    const std::string key_g6 = emit_graph6(g);
    const int key = palette.value_or(g.order() * t);
    auto hit = cache.find(g, key_g6, t, key);
    if (!hit)
        throw CacheMiss("no cached result for " + key_g6 + " at t = " + std::to_string(t) + " (palette " +
                        std::to_string(key) + ")");
    SolveResult best = lambda_of_assignment(g, hit->witness);
    if (best.value != hit->value || !best.witness.is_proper(g) || !best.witness.conforms_to(hit->witness) ||
        best.witness.count() != hit->value)
        throw IntegrityError("cached witness for " + key_g6 + " at t = " + std::to_string(t) + " fails validation");
    return {key_g6, t, hit->value, hit->witness, best.witness};
}

inline Json witness_json(const WitnessView& w)
{
    return Json{{"version", kSchemaVersion},
                {"graph", w.graph6},
                {"t", w.t},
                {"value", w.value},
                {"assignment", assignment_json(w.graph6, w.lists)},
                {"coloring", coloring_json(w.coloring)}};
}

} // namespace plc
