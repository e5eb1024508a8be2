#include <partlist/generate.hpp>
#include <partlist/lab.hpp>

#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

using namespace plc;

namespace {

std::string temp_path(const std::string& name)
{
    auto p = std::filesystem::temp_directory_path() / ("partlist_test_" + name);
    std::filesystem::remove(p);
    return p.string();
}

RunConfig config(std::vector<Graph> graphs)
{
    RunConfig cfg;
    cfg.graphs = std::move(graphs);
    return cfg;
}

std::vector<Graph> complete_graphs(int max_n)
{
    std::vector<Graph> out;
    for (int n = 1; n <= max_n; ++n)
        out.push_back(generate(family::Complete{n}));
    return out;
}

} // namespace

TEST(RunCatalog, SingleVertex)
{
    RunReport r = run_catalog(config({Graph::edgeless(1)}));
    ASSERT_EQ(r.entries.size(), 1u);
    ASSERT_TRUE(r.entries[0].report);
    EXPECT_EQ(r.entries[0].report->table.values, (std::vector<int>{0, 1}));
    for (const auto& v : r.entries[0].report->verdicts)
        EXPECT_TRUE(v.holds);
    EXPECT_EQ(exit_code(r), 0);
}

TEST(RunCatalog, CompleteGraphsTightAgh)
{
    RunReport r = run_catalog(config(complete_graphs(4)));
    for (const auto& e : r.entries)
        for (const auto& v : e.report->verdicts)
            if (v.statement == "agh") {
                EXPECT_TRUE(v.holds);
                EXPECT_EQ(v.lhs, v.rhs);
            }
}

TEST(RunCatalog, SkipsAboveTMax)
{
    RunConfig cfg = config({generate(family::Complete{5}), generate(family::Cycle{5})});
    cfg.t_max = 4;
    RunReport r = run_catalog(cfg);
    ASSERT_EQ(r.entries.size(), 2u);
    EXPECT_EQ(r.entries[0].status, "skipped");
    EXPECT_EQ(r.entries[1].status, "ok");
    EXPECT_EQ(exit_code(r), 0);
}

TEST(RunCatalog, ReportsCapViolationsPerGraph)
{
    RunConfig cfg = config({generate(family::Gnp{11, {1, 1}, 1}), generate(family::Cycle{4})});
    RunReport r = run_catalog(cfg);
    EXPECT_EQ(r.entries[0].status, "skipped");
    EXPECT_EQ(r.entries[1].status, "ok");
}

TEST(RunCatalog, DeterministicAcrossJobs)
{
    std::vector<Graph> graphs;
    for (std::uint64_t seed = 1; seed <= 12; ++seed)
        graphs.push_back(generate(family::Gnp{6, {1, 2}, seed}));
    RunConfig one = config(graphs);
    RunConfig many = config(graphs);
    many.jobs = 4;
    EXPECT_EQ(report_json(run_catalog(one)).dump(), report_json(run_catalog(many)).dump());
}

TEST(Cache, WarmRunNeedsNoSearch)
{
    const std::string path = temp_path("warm.jsonl");
    RunConfig cfg = config({generate(family::Cycle{5}), generate(family::CompleteBipartite{2, 4})});
    cfg.cache_path = path;
    RunReport cold = run_catalog(cfg);
    RunReport warm = run_catalog(cfg);
    EXPECT_GT(cold.searches, 0u);
    EXPECT_EQ(warm.searches, 0u);
    EXPECT_GT(warm.cache_hits, 0u);
    EXPECT_EQ(report_json(cold).dump(), report_json(warm).dump());
    cfg.cache_path.clear();
    EXPECT_EQ(report_json(run_catalog(cfg)).dump(), report_json(warm).dump());
}

TEST(Cache, ShowWitness)
{
    const std::string path = temp_path("witness.jsonl");
    RunConfig cfg = config({generate(family::Complete{3})});
    cfg.cache_path = path;
    run_catalog(cfg);
    ResultsCache cache(path);
    WitnessView w = show_witness(cache, "Bw", 2);
    EXPECT_EQ(w.value, 2);
    for (int v = 0; v < 3; ++v)
        EXPECT_EQ(w.lists.list(v), ColorSet{0b11});
    EXPECT_EQ(w.coloring.count(), 2);
    WitnessView full = show_witness(cache, "Bw", 3);
    EXPECT_EQ(full.coloring.count(), 3);
    EXPECT_THROW(show_witness(cache, "Bw", 5), CacheMiss);
}

TEST(Cache, TamperIsAnIntegrityError)
{
    const std::string path = temp_path("tamper.jsonl");
    RunConfig cfg = config({generate(family::Complete{3})});
    cfg.cache_path = path;
    run_catalog(cfg);
    std::ifstream in(path);
    std::string text, line;
    while (std::getline(in, line)) {
        Json j = Json::parse(line);
        if (j["t"] == 2)
            j["value"] = 1;
        text += j.dump() + "\n";
    }
    in.close();
    std::ofstream(path) << text;
    EXPECT_THROW(ResultsCache cache(path), IntegrityError);

    std::ofstream(path) << "{not json\n";
    EXPECT_THROW(ResultsCache cache(path), IntegrityError);
}

TEST(Hunt, EmptyCount)
{
    RunConfig cfg;
    cfg.hunt = HuntSpec{5, 5, {1, 2}, 0};
    RunReport r = hunt_counterexamples(cfg);
    EXPECT_TRUE(r.entries.empty());
    EXPECT_EQ(exit_code(r), 0);
}

TEST(Hunt, DeterministicStream)
{
    HuntSpec spec{5, 5, {1, 2}, 10};
    auto a = hunt_stream(spec, 42);
    auto b = hunt_stream(spec, 42);
    ASSERT_EQ(a.size(), 10u);
    std::set<std::string> distinct;
    for (std::size_t i = 0; i < a.size(); ++i) {
        EXPECT_EQ(emit_graph6(a[i]), emit_graph6(b[i]));
        distinct.insert(emit_graph6(a[i]));
    }
    EXPECT_EQ(distinct.size(), 10u);
    EXPECT_EQ(hunt_stream(HuntSpec{1, 1, {1, 2}, 5}, 1).size(), 1u);
}

TEST(Hunt, OnlyConjectureVerdicts)
{
    RunConfig cfg;
    cfg.hunt = HuntSpec{4, 6, {1, 2}, 6};
    RunReport r = hunt_counterexamples(cfg);
    EXPECT_EQ(r.entries.size(), 6u);
    for (const auto& e : r.entries)
        for (const auto& v : e.report->verdicts)
            EXPECT_TRUE(v.statement == "agh" || v.statement == "ratio_conjecture" || v.statement == "divisor_ratio");
}

TEST(Bundles, ReplayRejectsNonFailures)
{
    Graph g = generate(family::Cycle{5});
    LambdaTable tab = lambda_table(g);
    Verdict v = check_agh(tab)[2];
    v.witness_t = {2};
    Json b = make_bundle(g, tab, v, "raw enumeration");
    ReplayResult r = replay_bundle(b);
    EXPECT_FALSE(r.reproduced);
    EXPECT_EQ(r.detail, "verdict holds on recomputation");

    b["witnesses"][0]["value"] = 2;
    EXPECT_FALSE(replay_bundle(b).reproduced);
    EXPECT_FALSE(replay_bundle(Json{{"graph", "??"}}).reproduced);
}

TEST(Bundles, SinkAppendsOnce)
{
    const std::string path = temp_path("bundles.jsonl");
    Graph g = generate(family::Cycle{5});
    LambdaTable tab = lambda_table(g);
    Json b = make_bundle(g, tab, check_agh(tab)[1], "raw enumeration");
    {
        BundleSink sink(path);
        sink.write(b);
        sink.write(b);
    }
    BundleSink again(path);
    again.write(b);
    std::ifstream in(path);
    int lines = 0;
    for (std::string line; std::getline(in, line);)
        ++lines;
    EXPECT_EQ(lines, 1);
}

TEST(Reports, JsonAndCsvShape)
{
    RunConfig cfg = config({generate(family::Cycle{4})});
    RunReport r = run_catalog(cfg);
    Json j = report_json(r);
    EXPECT_EQ(j["version"], kSchemaVersion);
    EXPECT_EQ(j["graphs"][0]["graph"], "Cl");
    const Json& v = j["graphs"][0]["verdicts"][0];
    EXPECT_TRUE(v.contains("lhs") && v["lhs"].contains("num") && v["lhs"].contains("den"));
    EXPECT_FALSE(j.contains("seconds"));
    Json filtered = report_json(r, {"agh"});
    for (const auto& x : filtered["graphs"][0]["verdicts"])
        EXPECT_EQ(x["statement"], "agh");
    const std::string csv = report_csv(r);
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 1 + static_cast<long>(statement_checklist().size()));
}

TEST(Assignments, JsonRoundTrip)
{
    Graph g = generate(family::CompleteBipartite{2, 4});
    ListAssignment l = lambda_t(g, 2).witness;
    ParsedAssignment back = assignment_from_json(assignment_json(emit_graph6(g), l));
    EXPECT_EQ(back.graph, g);
    EXPECT_EQ(back.lists.lists(), l.lists());
    EXPECT_THROW(assignment_from_json(Json{{"graph", "Bw"}, {"palette", 2}, {"lists", {{0}}}}), FormatError);
}
