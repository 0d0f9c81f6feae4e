#include <gtest/gtest.h>

#include <sstream>

#include "oracles.hpp"
#include "spancent/errors.hpp"
#include "spancent/graph.hpp"

using namespace spancent;

namespace {

Graph parse(const std::string& text, LoadReport* report = nullptr) {
    std::istringstream in(text);
    return load_edge_list(in, report);
}

void expect_well_formed(const Graph& g) {
    std::size_t degree_sum = 0;
    for (NodeId v = 0; v < g.num_nodes(); ++v) {
        const auto nb = g.neighbors(v);
        degree_sum += nb.size();
        EXPECT_TRUE(std::is_sorted(nb.begin(), nb.end()));
        EXPECT_EQ(std::adjacent_find(nb.begin(), nb.end()), nb.end());
        for (std::size_t k = 0; k < nb.size(); ++k) {
            EXPECT_NE(nb[k], v);
            EXPECT_TRUE(g.has_edge(nb[k], v));
            const Edge& e = g.edge(g.edge_of_slot(g.offset(v) + k));
            EXPECT_EQ(e, canonical(v, nb[k]));
        }
    }
    EXPECT_EQ(degree_sum, 2 * g.num_edges());
}

}  // namespace

TEST(LoadEdgeList, TwoEdgePath) {
    const Graph g = parse("0 1\n1 2\n");
    EXPECT_EQ(g.num_nodes(), 3u);
    EXPECT_EQ(g.num_edges(), 2u);
    EXPECT_EQ(g.degree(1), 2u);
    expect_well_formed(g);
}

TEST(LoadEdgeList, DropsDuplicatesAndSelfLoops) {
    LoadReport report;
    const Graph g = parse("# c\n5 7\n7 5\n5 5\n", &report);
    EXPECT_EQ(g.num_nodes(), 2u);
    EXPECT_EQ(g.num_edges(), 1u);
    EXPECT_EQ(report.data_lines, 3u);
    EXPECT_EQ(report.duplicates_dropped, 1u);
    EXPECT_EQ(report.self_loops_dropped, 1u);
    EXPECT_EQ(g.label(0), 5u);
    EXPECT_EQ(g.label(1), 7u);
}

TEST(LoadEdgeList, CompactsSparseLabelsInOrder) {
    const Graph g = parse("1000 20\n20 3\n3 1000\n");
    ASSERT_EQ(g.num_nodes(), 3u);
    EXPECT_EQ(g.label(0), 3u);
    EXPECT_EQ(g.label(1), 20u);
    EXPECT_EQ(g.label(2), 1000u);
    expect_well_formed(g);
}

TEST(LoadEdgeList, AcceptsCrlfTabsAndBlankLines) {
    const Graph g = parse("# header\r\n0\t1\r\n\r\n  1 2  \r\n2 0\r\n");
    EXPECT_EQ(g.num_edges(), 3u);
}

TEST(LoadEdgeList, ReportsLineNumberOnMalformedInput) {
    try {
        parse("0 1\n# note\n1 x\n");
        FAIL() << "expected ParseError";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 3u);
    }
    EXPECT_THROW(parse("0 1 2\n"), ParseError);
    EXPECT_THROW(parse("0\n"), ParseError);
    EXPECT_THROW(parse("-1 2\n"), ParseError);
}

TEST(LoadEdgeList, EmptyGraphIsAnError) {
    EXPECT_THROW(parse(""), DataError);
    EXPECT_THROW(parse("# only comments\n"), DataError);
    EXPECT_THROW(parse("4 4\n"), DataError);
}

TEST(LoadEdgeList, RoundTripsThroughWriter) {
    const Graph g = parse("10 11\n11 12\n12 10\n12 40\n");
    std::ostringstream out;
    write_edge_list(out, g);
    const Graph again = parse(out.str());
    EXPECT_EQ(g, again);
}

TEST(Graph, EdgeLookup) {
    const Graph g = oracle::two_triangles_bridge();
    EXPECT_TRUE(g.has_edge(2, 3));
    EXPECT_TRUE(g.has_edge(3, 2));
    EXPECT_FALSE(g.has_edge(0, 5));
    const EdgeId e = g.edge_id(3, 2);
    EXPECT_EQ(g.edge(e), (Edge{2, 3}));
    expect_well_formed(g);
}

TEST(ValidateErgodic, Diagnostics) {
    EXPECT_EQ(validate_ergodic(oracle::complete(3)), ErgodicStatus::ok);
    EXPECT_EQ(validate_ergodic(oracle::path(3)), ErgodicStatus::bipartite);
    EXPECT_EQ(validate_ergodic(oracle::cycle(6)), ErgodicStatus::bipartite);
    const Graph two = oracle::from_pairs(6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}});
    EXPECT_EQ(validate_ergodic(two), ErgodicStatus::disconnected);
    EXPECT_THROW(require_ergodic(two), DataError);
    EXPECT_TRUE(is_connected(oracle::path(3)));
    EXPECT_FALSE(is_connected(two));
}

TEST(ErdosRenyi, CompleteGraphIsForced) {
    EXPECT_EQ(generate_erdos_renyi(4, 6, 17), oracle::complete(4));
}

TEST(ErdosRenyi, ExactEdgeCountAndDeterminism) {
    const Graph a = generate_erdos_renyi(500, 2500, 9);
    const Graph b = generate_erdos_renyi(500, 2500, 9);
    const Graph c = generate_erdos_renyi(500, 2500, 10);
    EXPECT_EQ(a.num_edges(), 2500u);
    EXPECT_EQ(a, b);
    EXPECT_FALSE(a == c);
    expect_well_formed(a);
}

TEST(ErdosRenyi, DenseRequestUsesComplement) {
    const Graph g = generate_erdos_renyi(60, 1700, 3);
    EXPECT_EQ(g.num_edges(), 1700u);
    expect_well_formed(g);
}

TEST(ErdosRenyi, InfeasibleRequestThrows) {
    EXPECT_THROW(generate_erdos_renyi(4, 7, 0), std::invalid_argument);
}

TEST(ErdosRenyi, PairsAreRoughlyUniform) {
    // Every pair of K6 should appear in about m / 15 of the samples.
    std::vector<int> hits(36, 0);
    const int samples = 3000;
    for (int s = 0; s < samples; ++s) {
        const Graph g = generate_erdos_renyi(6, 5, static_cast<std::uint64_t>(s));
        for (const Edge& e : g.edges()) ++hits[e.u * 6 + e.v];
    }
    const double expected = samples * 5.0 / 15.0;
    for (NodeId u = 0; u < 6; ++u)
        for (NodeId v = u + 1; v < 6; ++v) EXPECT_NEAR(hits[u * 6 + v], expected, 5 * std::sqrt(expected));
}
