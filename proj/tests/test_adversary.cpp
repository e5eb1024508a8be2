#include "oracles.hpp"

#include <partlist/adversary.hpp>
#include <partlist/generate.hpp>
#include <partlist/graph6.hpp>

#include <gtest/gtest.h>

#include <fstream>
#include <set>

using namespace plc;

namespace {

Graph k(int n) { return generate(family::Complete{n}); }

std::vector<Graph> small_catalog(int max_n)
{
    std::vector<Graph> out;
    for (auto& g : read_graph_file(PARTLIST_DATA_DIR "/graphs_n1-5.g6", GraphFormat::Graph6))
        if (g.order() <= max_n)
            out.push_back(g);
    return out;
}

std::uint64_t count_classes(const Graph& g, int t, int palette)
{
    CanonicalAssignments it(g, t, palette);
    std::uint64_t count = 0;
    while (it.next())
        ++count;
    return count;
}

// Canonical image of an assignment under color relabeling: relabel colors by first
// appearance along the vertex order, and take the minimum over all relabelings by brute force.
std::vector<std::vector<int>> canonical_image(const std::vector<std::vector<int>>& lists, int palette)
{
    std::vector<int> perm(static_cast<std::size_t>(palette));
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<std::vector<int>> best;
    do {
        std::vector<std::vector<int>> img;
        for (const auto& l : lists) {
            std::vector<int> m;
            for (int c : l)
                m.push_back(perm[c]);
            std::sort(m.begin(), m.end());
            img.push_back(m);
        }
        if (best.empty() || img < best)
            best = img;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

} // namespace

TEST(Canonical, ClassCounts)
{
    EXPECT_EQ(count_classes(Graph::edgeless(1), 1, 1), 1u);
    EXPECT_EQ(count_classes(Graph::edgeless(2), 1, 2), 2u);
    EXPECT_EQ(count_classes(Graph::edgeless(2), 2, 4), 3u);
}

TEST(Canonical, OneRepresentativePerRelabelingClass)
{
    // every raw assignment's class is hit exactly once
    for (auto [n, t] : std::vector<std::pair<int, int>>{{2, 1}, {2, 2}, {3, 1}, {3, 2}, {4, 1}}) {
        Graph g = Graph::edgeless(n);
        const int palette = n * t;
        std::set<std::vector<std::vector<int>>> raw;
        const auto subsets = oracle::t_subsets(palette, t);
        std::vector<std::size_t> pick(static_cast<std::size_t>(n), 0);
        while (true) {
            std::vector<std::vector<int>> lists;
            for (int v = 0; v < n; ++v)
                lists.push_back(subsets[pick[v]]);
            raw.insert(canonical_image(lists, palette));
            int v = 0;
            while (v < n && pick[v] + 1 == subsets.size())
                pick[v++] = 0;
            if (v == n)
                break;
            ++pick[v];
        }
        std::set<std::vector<std::vector<int>>> seen;
        CanonicalAssignments it(g, t, palette);
        while (auto l = it.next()) {
            std::vector<std::vector<int>> lists = l->as_vectors();
            EXPECT_TRUE(seen.insert(canonical_image(lists, palette)).second) << "duplicate class n=" << n;
        }
        EXPECT_EQ(seen, raw) << "n=" << n << " t=" << t;
    }
}

TEST(LambdaT, Examples)
{
    EXPECT_EQ(lambda_t(k(3), 2).value, 2);
    EXPECT_EQ(lambda_t(generate(family::Cycle{4}), 1).value, 2);
    EXPECT_EQ(lambda_t(k(2), 1).value, 1);
    EXPECT_EQ(lambda_t(k(3), 0).value, 0);
}

TEST(LambdaT, MatchesRawEnumeration)
{
    for (const Graph& g : small_catalog(4))
        for (int t = 1; t <= 2; ++t) {
            const int raw = lambda_t_oracle(g, t);
            EXPECT_EQ(lambda_t(g, t).value, raw) << emit_graph6(g) << " t=" << t;
            EXPECT_EQ(oracle::lambda_t(g, t), raw) << emit_graph6(g) << " t=" << t;
        }
}

TEST(LambdaT, WitnessAttainsValue)
{
    for (const Graph& g : small_catalog(5))
        for (int t = 0; t <= 3; ++t) {
            AdversaryResult r = lambda_t(g, t);
            EXPECT_EQ(lambda_of_assignment(g, r.witness).value, r.value) << emit_graph6(g) << " t=" << t;
            if (t > 0) {
                EXPECT_EQ(r.witness.uniform_size(), t);
            }
            EXPECT_FALSE(r.palette_limited);
        }
}

TEST(LambdaT, PruningIsSound)
{
    // every combination of the optional reductions gives the same minimum
    for (const Graph& g : small_catalog(5)) {
        for (int t = 1; t <= 2; ++t) {
            const int reference = lambda_t(g, t).value;
            for (int mask = 0; mask < 8; ++mask) {
                AdversaryOptions opt;
                opt.reduce = mask & 1;
                opt.dominance = mask & 2;
                opt.prefix_bound = mask & 4;
                EXPECT_EQ(lambda_t(g, t, opt).value, reference) << emit_graph6(g) << " t=" << t << " mask=" << mask;
            }
            if (g.order() <= 4) {
                EXPECT_EQ(reference, lambda_t_oracle(g, t));
            }
        }
    }
}

TEST(LambdaT, PaletteSufficiency)
{
    for (const Graph& g : small_catalog(4))
        for (int t = 1; t <= 2; ++t) {
            AdversaryOptions base;
            base.reduce = false;
            base.palette = g.order() * t;
            AdversaryOptions wider = base;
            wider.palette = g.order() * t + 2;
            EXPECT_EQ(lambda_t(g, t, base).value, lambda_t(g, t, wider).value) << emit_graph6(g);
        }
}

TEST(LambdaT, LimitedPaletteIsFlagged)
{
    AdversaryOptions opt;
    opt.palette = 3;
    AdversaryResult r = lambda_t(generate(family::CompleteBipartite{2, 4}), 2, opt);
    EXPECT_TRUE(r.palette_limited);
    EXPECT_GE(r.value, lambda_t(generate(family::CompleteBipartite{2, 4}), 2).value);
}

TEST(LambdaT, DeterministicAcrossJobs)
{
    std::vector<Graph> graphs = {generate(family::CompleteBipartite{2, 4}), generate(family::Cycle{6}),
                                 parse_graph6("E{Sw"), generate(family::Gnp{6, {1, 2}, 4})};
    for (const Graph& g : graphs)
        for (int t = 1; t <= 3; ++t) {
            AdversaryOptions one;
            AdversaryOptions many;
            many.jobs = 4;
            AdversaryResult a = lambda_t(g, t, one);
            AdversaryResult b = lambda_t(g, t, many);
            EXPECT_EQ(a.value, b.value);
            EXPECT_EQ(a.witness, b.witness) << emit_graph6(g) << " t=" << t;
        }
}

TEST(ChoiceNumber, Landmarks)
{
    EXPECT_EQ(list_chromatic_number(generate(family::CompleteBipartite{2, 4})), 3);
    EXPECT_EQ(list_chromatic_number(generate(family::Cycle{4})), 2);
    EXPECT_EQ(list_chromatic_number(generate(family::Cycle{5})), 3);
    for (int n = 1; n <= 5; ++n)
        EXPECT_EQ(list_chromatic_number(k(n)), n);
    EXPECT_EQ(oracle::choice_number(generate(family::Cycle{4})), 2);
    EXPECT_EQ(oracle::choice_number(k(3)), 3);
}

TEST(ChoiceNumber, K24WitnessIsTheClassicAssignment)
{
    Graph g = generate(family::CompleteBipartite{2, 4});
    AdversaryResult r = lambda_t(g, 2);
    EXPECT_EQ(r.value, 5);
    // left lists are disjoint, right lists are the four cross pairs
    auto lists = r.witness.as_vectors();
    std::set<int> left(lists[0].begin(), lists[0].end());
    left.insert(lists[1].begin(), lists[1].end());
    EXPECT_EQ(left.size(), 4u);
    std::set<std::vector<int>> right(lists.begin() + 2, lists.end());
    EXPECT_EQ(right.size(), 4u);
    for (const auto& l : right) {
        EXPECT_EQ(std::count(lists[0].begin(), lists[0].end(), l[0]) + std::count(lists[0].begin(), lists[0].end(), l[1]), 1);
        EXPECT_EQ(std::count(lists[1].begin(), lists[1].end(), l[0]) + std::count(lists[1].begin(), lists[1].end(), l[1]), 1);
    }
}

TEST(LambdaTable, Examples)
{
    LambdaTable k4 = lambda_table(k(4));
    EXPECT_EQ(k4.n, 4);
    EXPECT_EQ(k4.chi, 4);
    EXPECT_EQ(k4.chi_l, 4);
    EXPECT_EQ(k4.values, (std::vector<int>{0, 1, 2, 3, 4}));

    LambdaTable k1 = lambda_table(k(1));
    EXPECT_EQ(k1.values, (std::vector<int>{0, 1}));
    EXPECT_EQ(k1.chi_l, 1);

    LambdaTable e3 = lambda_table(Graph::edgeless(3));
    EXPECT_EQ(e3.values, (std::vector<int>{0, 3}));
    EXPECT_EQ(e3.chi_l, 1);
    EXPECT_EQ(e3.alpha, 3);
}

TEST(LambdaTable, Invariants)
{
    for (const Graph& g : small_catalog(5)) {
        LambdaTable tab = lambda_table(g);
        ASSERT_EQ(tab.values.size(), static_cast<std::size_t>(tab.chi_l + 1));
        EXPECT_EQ(tab.values[0], 0);
        EXPECT_EQ(tab.values[1], oracle::alpha(g));
        EXPECT_EQ(tab.values.back(), g.order());
        EXPECT_EQ(tab.chi, oracle::chi(g));
        EXPECT_GE(tab.chi_l, tab.chi);
        for (std::size_t t = 1; t < tab.values.size(); ++t)
            EXPECT_LE(tab.values[t - 1], tab.values[t]);
    }
}

TEST(Caps, Enforced)
{
    Graph g = generate(family::Gnp{11, {1, 1}, 1});
    EXPECT_THROW(lambda_t(g, 2), SizeError);
    try {
        lambda_t(g, 2);
    } catch (const SizeError& e) {
        EXPECT_NE(std::string(e.what()).find("--unsafe-caps"), std::string::npos);
    }
    // the t-core of K5 at t = 5 is empty, so no search is needed
    EXPECT_EQ(lambda_t(k(5), 5).value, 5);
    AdversaryOptions tight;
    tight.caps.max_t = 1;
    EXPECT_THROW(lambda_t(k(4), 2, tight), SizeError);
    EXPECT_THROW(lambda_t_oracle(k(6), 1), SizeError);
}
