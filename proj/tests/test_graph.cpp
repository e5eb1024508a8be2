#include "oracles.hpp"

#include <partlist/generate.hpp>
#include <partlist/graph.hpp>
#include <partlist/graph6.hpp>

#include <gtest/gtest.h>

#include <sstream>

using namespace plc;

namespace {

Graph k3() { return Graph::from_edges(3, {{0, 1}, {1, 2}, {0, 2}}); }
Graph c4() { return Graph::from_edges(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}}); }

ParseErrorKind kind_of(std::string_view text)
{
    try {
        parse_graph6(text);
    } catch (const ParseError& e) {
        return e.kind();
    }
    ADD_FAILURE() << "no error for " << text;
    return ParseErrorKind::BadHeader;
}

} // namespace

TEST(Graph6, DecodesSmallGraphs)
{
    Graph g = parse_graph6("Bw");
    EXPECT_EQ(g.order(), 3);
    EXPECT_EQ(g.edge_count(), 3);
    EXPECT_EQ(g, k3());

    Graph two = parse_graph6("A?");
    EXPECT_EQ(two.order(), 2);
    EXPECT_EQ(two.edge_count(), 0);

    Graph one = parse_graph6("@");
    EXPECT_EQ(one.order(), 1);
    EXPECT_EQ(one.edge_count(), 0);
}

TEST(Graph6, EmitsAgainstBitStringOracle)
{
    EXPECT_EQ(emit_graph6(k3()), "Bw");
    EXPECT_EQ(emit_graph6(Graph::edgeless(1)), "@");
    // x01,x02,x12,x03,x13,x23 = 1,0,1,1,0,1 -> 101101 = 45 -> byte 108 'l'
    EXPECT_EQ(emit_graph6(c4()), "Cl");
    EXPECT_EQ(emit_graph6(c4()), oracle::graph6(c4()));
}

TEST(Graph6, RoundTripsRandomGraphsUpTo12)
{
    for (int n = 1; n <= 12; ++n)
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            Graph g = generate(family::Gnp{n, {1, 2}, seed});
            const std::string text = emit_graph6(g);
            EXPECT_EQ(text, oracle::graph6(g));
            EXPECT_EQ(parse_graph6(text), g);
        }
}

TEST(Graph6, LargeHeaderRoundTrip)
{
    Graph g = generate(family::Gnp{64, {1, 3}, 5});
    const std::string text = emit_graph6(g);
    EXPECT_EQ(static_cast<unsigned char>(text[0]), 126);
    EXPECT_EQ(parse_graph6(text), g);
}

TEST(Graph6, DistinctErrors)
{
    EXPECT_EQ(kind_of(""), ParseErrorKind::BadHeader);
    EXPECT_EQ(kind_of("B\x01"), ParseErrorKind::ByteOutOfRange);
    EXPECT_EQ(kind_of("C"), ParseErrorKind::Truncated);
    EXPECT_EQ(kind_of("Bw?"), ParseErrorKind::TrailingGarbage);
    EXPECT_EQ(kind_of("Bx"), ParseErrorKind::BadPadding);
    try {
        parse_graph6("Bw?");
    } catch (const ParseError& e) {
        EXPECT_EQ(e.offset(), 2u);
    }
    // 65 vertices: long header ~ then 0, 1, 2
    EXPECT_EQ(kind_of(std::string("~?@") + static_cast<char>(63 + 2)), ParseErrorKind::TooLarge);
}

TEST(EdgeList, Parses)
{
    EXPECT_EQ(parse_edge_list("3\n0 1\n1 2\n0 2"), k3());
    Graph g = parse_edge_list("2\n");
    EXPECT_EQ(g.order(), 2);
    EXPECT_EQ(g.edge_count(), 0);
    EXPECT_EQ(parse_edge_list("3\n0 1\n1 0\n0 1\n1 2\n0 2\n"), k3());
}

TEST(EdgeList, RejectsBadInput)
{
    auto kind = [](std::string_view text) {
        try {
            parse_edge_list(text);
        } catch (const ParseError& e) {
            return e.kind();
        }
        return ParseErrorKind::BadHeader;
    };
    EXPECT_EQ(kind("3\n0 0"), ParseErrorKind::Loop);
    EXPECT_EQ(kind("3\n0 3"), ParseErrorKind::IndexOutOfRange);
    EXPECT_EQ(kind("3\n0 x"), ParseErrorKind::BadToken);
}

TEST(GraphStream, ReadsBothFormats)
{
    std::istringstream g6("Bw\n\nCl\n");
    auto a = parse_graph_stream(g6, GraphFormat::Graph6);
    ASSERT_EQ(a.size(), 2u);
    EXPECT_EQ(a[1], c4());

    std::istringstream edges("3\n0 1\n1 2\n0 2\n\n2\n");
    auto b = parse_graph_stream(edges, GraphFormat::EdgeList);
    ASSERT_EQ(b.size(), 2u);
    EXPECT_EQ(b[0], k3());
    EXPECT_EQ(b[1].order(), 2);
}

TEST(Graph, RejectsInvalidAdjacency)
{
    EXPECT_THROW(Graph::from_rows({0b10, 0b00}), GraphError);
    EXPECT_THROW(Graph::from_rows({0b01}), GraphError);
    EXPECT_THROW(Graph::edgeless(0), SizeError);
    EXPECT_THROW(Graph::edgeless(65), SizeError);
}

TEST(Generate, Families)
{
    for (int n = 1; n <= 8; ++n)
        EXPECT_EQ(generate(family::Complete{n}).edge_count(), n * (n - 1) / 2);
    for (int n = 3; n <= 8; ++n) {
        Graph c = generate(family::Cycle{n});
        for (int v = 0; v < n; ++v)
            EXPECT_EQ(c.degree(v), 2);
        EXPECT_TRUE(c.adjacent(0, n - 1));
    }
    Graph k24 = generate(family::CompleteBipartite{2, 4});
    EXPECT_EQ(k24.order(), 6);
    EXPECT_EQ(k24.edge_count(), 8);
    EXPECT_FALSE(k24.adjacent(0, 1));
    EXPECT_TRUE(k24.adjacent(0, 2));
    Graph p = generate(family::Petersen{});
    EXPECT_EQ(p.order(), 10);
    EXPECT_EQ(p.edge_count(), 15);
    EXPECT_EQ(generate(family::Path{4}).edge_count(), 3);
    EXPECT_THROW(generate(family::Cycle{2}), GraphError);
}

TEST(Generate, GnpIsDeterministic)
{
    Graph a = generate(family::Gnp{5, {1, 2}, 7});
    Graph b = generate(family::Gnp{5, {1, 2}, 7});
    EXPECT_EQ(a, b);
    EXPECT_EQ(generate(family::Gnp{6, {0, 1}, 3}).edge_count(), 0);
    EXPECT_EQ(generate(family::Gnp{6, {1, 1}, 3}).edge_count(), 15);
}

TEST(Generate, ParsesFamilySpecs)
{
    EXPECT_EQ(generate(parse_family("complete:4")).edge_count(), 6);
    EXPECT_EQ(generate(parse_family("bipartite:2,4")), generate(family::CompleteBipartite{2, 4}));
    EXPECT_EQ(generate(parse_family("gnp:5,1/2,7")), generate(family::Gnp{5, {1, 2}, 7}));
    EXPECT_EQ(generate(parse_family("petersen")).order(), 10);
    EXPECT_THROW(parse_family("wheel:5"), GraphError);
    EXPECT_THROW(parse_probability("3/2"), GraphError);
}

TEST(InducedSubgraph, Examples)
{
    Graph k4 = generate(family::Complete{4});
    for (int drop = 0; drop < 4; ++drop) {
        InducedSubgraph s = induced_subgraph(k4, k4.vertices() - VertexSet::of({drop}));
        EXPECT_EQ(s.graph, k3());
    }
    InducedSubgraph p = induced_subgraph(generate(family::Cycle{5}), VertexSet::of({0, 1, 2}));
    EXPECT_EQ(p.graph, generate(family::Path{3}));
    EXPECT_EQ(p.original, (std::vector<int>{0, 1, 2}));
    Graph g = generate(family::Gnp{7, {1, 2}, 11});
    EXPECT_EQ(induced_subgraph(g, g.vertices()).graph, g);
    EXPECT_THROW(induced_subgraph(g, VertexSet{}), GraphError);
}

TEST(InducedSubgraph, ComposesHereditarily)
{
    Graph g = generate(family::Gnp{8, {1, 2}, 4});
    Xorshift64 rng(9);
    for (int i = 0; i < 200; ++i) {
        VertexSet s{rng.next() & low_bits(8)};
        if (s.empty())
            continue;
        InducedSubgraph outer = induced_subgraph(g, s);
        VertexSet inner_local{rng.next() & low_bits(outer.graph.order())};
        if (inner_local.empty())
            continue;
        VertexSet inner_global;
        for (int v : inner_local.members())
            inner_global.insert(outer.original[v]);
        InducedSubgraph twice = induced_subgraph(outer.graph, inner_local);
        InducedSubgraph once = induced_subgraph(g, inner_global);
        EXPECT_EQ(twice.graph, once.graph);
    }
}

TEST(GraphHelpers, CoreComponentsDegeneracy)
{
    // triangle with a pendant path
    Graph g = Graph::from_edges(5, {{0, 1}, {1, 2}, {0, 2}, {2, 3}, {3, 4}});
    EXPECT_EQ(core(g, 2), VertexSet::of({0, 1, 2}));
    EXPECT_TRUE(core(g, 3).empty());
    EXPECT_EQ(degeneracy(g), 2);
    EXPECT_TRUE(is_connected(g));
    EXPECT_EQ(components(Graph::edgeless(3), VertexSet::first(3)).size(), 3u);
}
