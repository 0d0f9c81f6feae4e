#include <gtest/gtest.h>

#include <boost/math/distributions/chi_squared.hpp>
#include <map>
#include <numeric>

#include "oracles.hpp"
#include "spancent/baselines.hpp"
#include "spancent/exact.hpp"

using namespace spancent;

TEST(Wilson, PathHasOneTree) {
    const Graph g = oracle::path(3);
    Rng rng = stream_rng(0, 0);
    for (int k = 0; k < 20; ++k) EXPECT_EQ(wilson_spanning_tree(g, 0, rng).edges, (std::vector<EdgeId>{0, 1}));
}

TEST(Wilson, TreesAreValid) {
    for (const Graph& g : oracle::er_zoo(5, 20, 200, 7)) {
        Rng rng = stream_rng(1, g.num_nodes());
        for (int k = 0; k < 50; ++k) ASSERT_TRUE(is_spanning_tree(g, wilson_spanning_tree(g, 0, rng)));
    }
}

TEST(Wilson, TriangleTreesUniform) {
    const Graph g = oracle::complete(3);
    std::map<std::vector<EdgeId>, int> counts;
    const int samples = 30000;
    for (int t = 0; t < samples; ++t) {
        Rng rng = stream_rng(11, static_cast<std::uint64_t>(t));
        ++counts[wilson_spanning_tree(g, 0, rng).edges];
    }
    ASSERT_EQ(counts.size(), 3u);
    for (const auto& [tree, c] : counts) EXPECT_NEAR(c / static_cast<double>(samples), 1.0 / 3.0, 0.01);
}

TEST(Wilson, K4TreesUniform) {
    const Graph g = oracle::complete(4);
    std::map<std::vector<EdgeId>, int> counts;
    const int samples = 16000;
    for (int t = 0; t < samples; ++t) {
        Rng rng = stream_rng(12, static_cast<std::uint64_t>(t));
        ++counts[wilson_spanning_tree(g, 0, rng).edges];
    }
    ASSERT_EQ(counts.size(), 16u);
    const double expected = samples / 16.0;
    double stat = 0.0;
    for (const auto& [tree, c] : counts) stat += (c - expected) * (c - expected) / expected;
    const boost::math::chi_squared dist(15);
    EXPECT_GT(boost::math::cdf(boost::math::complement(dist, stat)), 0.001);
}

TEST(StEdge, TreeCount) {
    EXPECT_EQ(st_edge_tree_count(3, 0.05, 0.01), static_cast<std::uint64_t>(std::ceil(std::log(600.0) / 0.005)));
}

TEST(StEdge, TriangleWithinEpsilon) {
    const Graph g = oracle::complete(3);
    StEdgeOptions options;
    options.epsilon = 0.05;
    options.delta = 0.01;
    const EdgeScores s = st_edge_all_edges(g, options);
    for (double x : s.scores) EXPECT_NEAR(x, 2.0 / 3.0, 0.05);
}

TEST(StEdge, BridgeIsAlwaysPresentAndSumIsExact) {
    const Graph g = oracle::two_triangles_bridge();
    StEdgeOptions options;
    options.trees = 1000;
    options.seed = 4;
    const EdgeScores s = st_edge_all_edges(g, options);
    EXPECT_EQ(s.scores[g.edge_id(2, 3)], 1.0);
    // Every score is count/1000; the counts sum to 1000·(n−1).
    double counted = 0.0;
    for (double x : s.scores) counted += std::round(x * 1000.0);
    EXPECT_EQ(counted, 1000.0 * (g.num_nodes() - 1));
}

TEST(StEdge, ThreadIndependent) {
    const Graph g = generate_ergodic_erdos_renyi(60, 200, 2);
    StEdgeOptions options;
    options.trees = 500;
    const EdgeScores a = st_edge_all_edges(g, options);
    options.threads = 3;
    EXPECT_EQ(a.scores, st_edge_all_edges(g, options).scores);
}

TEST(MonteCarlo, WalkCountFormula) {
    const double range = 3 * (1.0 / 4 + 1.0 / 2);
    const auto expected = static_cast<std::uint64_t>(std::ceil(8 * range * range * std::log(4 * 10 / 0.1) / 0.01));
    EXPECT_EQ(montecarlo_walk_count(3, 4, 2, 0.1, 0.1, 10), expected);
    EXPECT_EQ(montecarlo_walk_count(0, 4, 2, 0.1, 0.1, 10), 0u);
}

TEST(MonteCarlo, TriangleWithinEpsilon) {
    const Graph g = oracle::complete(3);
    MonteCarloOptions options;
    options.epsilon = 0.1;
    const EdgeScores s = montecarlo_all_edges(g, compute_spectral_basis(g, 3), options);
    for (double x : s.scores) EXPECT_NEAR(x, 2.0 / 3.0, 0.1);
}

TEST(MonteCarlo, RandomGraphWithinEpsilonAndDeterministic) {
    const Graph g = generate_ergodic_erdos_renyi(60, 300, 19);
    const SpectralBasis b = compute_spectral_basis(g, 60);
    const EdgeScores exact = exact_sc_pseudoinverse(g);
    MonteCarloOptions options;
    options.epsilon = 0.2;
    options.seed = 3;
    const EdgeScores s = montecarlo_all_edges(g, b, options);
    for (EdgeId e = 0; e < g.num_edges(); ++e) EXPECT_LE(std::abs(s.scores[e] - exact.scores[e]), 0.2);
    options.threads = 2;
    EXPECT_EQ(s.scores, montecarlo_all_edges(g, b, options).scores);
}

TEST(MonteCarlo, EdgeWiseLengthsNeedFewerWalks) {
    const Graph g = generate_ergodic_erdos_renyi(300, 1500, 5);
    const SpectralBasis b = compute_spectral_basis(g, 128);
    const double eps = 0.01;
    const double delta = 1.0 / g.num_nodes();
    const TruncationTable table = compute_truncation_table(g, b, eps / 2);
    double ours = 0.0;
    double global = 0.0;
    for (EdgeId e = 0; e < g.num_edges(); ++e) {
        const Edge& edge = g.edge(e);
        const auto di = g.degree(edge.u);
        const auto dj = g.degree(edge.v);
        ours += montecarlo_walk_count(table.tau[e], di, dj, eps, delta, g.num_edges());
        global += montecarlo_walk_count(table.peng_tau_half, di, dj, eps, delta, g.num_edges());
    }
    EXPECT_LT(ours, global);
}
