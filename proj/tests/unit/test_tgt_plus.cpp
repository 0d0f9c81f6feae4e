#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "spancent/exact.hpp"
#include "spancent/spectral.hpp"
#include "spancent/tgt_plus.hpp"

using namespace spancent;

namespace {

const std::vector<double> kTriangleP2{0.5, 0.25, 0.25};

}  // namespace

TEST(SampleCount, DirectEvaluation) {
    EXPECT_EQ(sample_count(0.1, 2, 0.05, 1.0 / 3.0, 3), 24u);
    EXPECT_EQ(sample_count(0.0, 2, 0.05, 0.1, 3), 0u);
    const auto base = sample_count(0.37, 5, 0.04, 0.01, 1000);
    const auto halved = sample_count(0.37, 5, 0.02, 0.01, 1000);
    EXPECT_NEAR(static_cast<double>(halved), 4.0 * static_cast<double>(base), 4.0);
}

TEST(SampleCount, CapsPathologicalBudgets) {
    EXPECT_EQ(sample_count(1e6, 1, 1e-3, 1e-3, 1000000), 100000000u);
}

TEST(WalkBounds, TriangleExample) {
    const Graph g = oracle::complete(3);
    const BoundPair b = walk_bounds(g, 0, kTriangleP2, 0.75, 2);
    EXPECT_DOUBLE_EQ(b.lb, 0.5);
    EXPECT_DOUBLE_EQ(b.ub, 0.75);
    // Length-2 walks from v0 sum to 0.75 or 0.5.
    EXPECT_LE(b.lb, 0.5);
    EXPECT_GE(b.ub, 0.75);
    const BoundPair one = walk_bounds(g, 1, kTriangleP2, 0.75, 1);
    EXPECT_DOUBLE_EQ(one.lb, 0.25);
    EXPECT_DOUBLE_EQ(one.ub, 0.5 / 2 + 0.5 / 2);
}

TEST(CalChi, TriangleExample) {
    const Graph g = oracle::complete(3);
    EXPECT_NEAR(rho_hat(g, kTriangleP2, {}, 2), 0.75, 1e-15);
    EXPECT_NEAR(cal_chi(g, 0, 1, kTriangleP2, 2, 2), 0.625, 1e-15);
    EXPECT_NEAR(cal_chi(g, 0, 1, kTriangleP2, 0, 2), 1.0, 1e-15);
}

TEST(RhoHat, NeverBelowBruteForce) {
    for (const Graph& g : oracle::er_zoo(6, 20, 120, 41)) {
        TraversalState state(g);
        for (NodeId s = 0; s < g.num_nodes(); s += 5) {
            state.reset(s);
            for (int hop = 0; hop <= 6; ++hop) {
                if (hop > 0) traverse_step(g, state);
                const std::vector<double> p(state.values().begin(), state.values().end());
                const double rho = oracle::brute_rho(g, p);
                for (int gamma : {1, 2, 3, 10, 100}) {
                    const auto support = state.dense() ? std::span<const NodeId>{} : state.support();
                    EXPECT_GE(rho_hat(g, p, support, gamma), rho - 1e-15);
                    EXPECT_GE(rho_hat(g, p, {}, gamma), rho - 1e-15);
                }
            }
        }
    }
}

TEST(ShouldSwitch, RightHandSideEmptyWhenAllEdgesDone) {
    const Graph g = oracle::complete(4);
    TraversalState state(g);
    state.reset(0);
    traverse_step(g, state);
    traverse_step(g, state);
    const std::vector<int> tau{1, 1, 1};
    EXPECT_TRUE(should_switch(g, state, tau, {0.05, 0.1, 6}));
}

TEST(ShouldSwitch, ComparesFrontierAgainstCoarseBudget) {
    // Star with a triangle among leaves 1-2 so it is ergodic.
    std::vector<std::pair<NodeId, NodeId>> pairs{{1, 2}};
    for (NodeId leaf = 1; leaf <= 40; ++leaf) pairs.emplace_back(0, leaf);
    const Graph g = oracle::from_pairs(41, pairs);
    TraversalState state(g);
    state.reset(0);
    traverse_step(g, state);
    traverse_step(g, state);
    // After two hops the support is {0, 1, 2}: frontier 44 against 40 single-walk budgets.
    const SamplingParams params{0.5, 0.5, g.num_edges()};
    std::vector<int> tau(g.degree(0), 3);
    const Extremes ex{state.max_value(), state.min_value()};
    const double per_edge = std::ceil(8.0 * std::pow(coarse_chi(ex, 1), 2) * std::log(2.0 * g.num_edges() / 0.5) /
                                      (40.0 * 40.0 * 0.25));
    const double rhs = per_edge * 40.0;
    EXPECT_EQ(should_switch(g, state, tau, params), static_cast<double>(state.frontier_degree_sum()) > rhs);
    EXPECT_TRUE(should_switch(g, state, tau, params));
    // A tiny ε makes walks expensive, so traversal continues.
    EXPECT_FALSE(should_switch(g, state, tau, {1e-4, 0.5, g.num_edges()}));
}

TEST(SimulateWalk, ForcedPath) {
    const Graph g = oracle::path(2);
    Rng rng = stream_rng(1, 2);
    EXPECT_EQ(simulate_walk(g, 0, 3, rng).nodes, (std::vector<NodeId>{1, 0, 1}));
}

TEST(SimulateWalk, UniformNeighbourChoice) {
    const Graph g = oracle::complete(3);
    Rng rng = stream_rng(3, 0);
    int ones = 0;
    const int draws = 30000;
    for (int k = 0; k < draws; ++k) ones += simulate_walk(g, 0, 1, rng).nodes[0] == 1;
    EXPECT_NEAR(ones / static_cast<double>(draws), 0.5, 0.02);
}

TEST(SimulateWalk, OccupancyMatchesTransitionPowers) {
    const Graph g = oracle::lollipop(4, 4);
    const NodeId start = 2;
    const int hop = 5;
    const int walks = 100000;
    std::vector<int> counts(g.num_nodes(), 0);
    Rng rng = stream_rng(9, 9);
    for (int w = 0; w < walks; ++w) ++counts[simulate_walk(g, start, hop, rng).nodes.back()];
    const auto into_start = transition_power_row(g, start, hop).values;
    for (NodeId x = 0; x < g.num_nodes(); ++x) {
        // p(start, x) = p(x, start) d(x) / d(start)
        const double p = into_start[x] * g.degree(x) / g.degree(start);
        const double sigma = std::sqrt(p * (1 - p) / walks);
        EXPECT_NEAR(counts[x] / static_cast<double>(walks), p, 3 * sigma + 1e-12);
    }
}

TEST(Decomposition, SplitAtAnyIntermediateHop) {
    for (const Graph& g : oracle::er_zoo(3, 10, 64, 23)) {
        const auto powers = oracle::transition_powers(g, 12);
        for (const Edge& e : g.edges()) {
            for (int tau = 0; tau <= 12; tau += 3) {
                for (int tilde = 0; tilde <= tau; ++tilde) {
                    const double whole = oracle::g_tau(powers, g, e.u, e.v, tau);
                    const double split = oracle::g_tau(powers, g, e.u, e.v, tilde) +
                                         oracle::g_range(powers, g, e.u, e.v, tilde, tau);
                    ASSERT_NEAR(whole, split, 1e-9);
                }
            }
        }
    }
}

TEST(EstimateRemainder, UnbiasedOnSmallGraph) {
    const Graph g = oracle::lollipop(4, 3);
    const auto powers = oracle::transition_powers(g, 8);
    const NodeId i = 3;
    const NodeId j = 4;
    const int tilde = 2;
    const int tau = 6;
    const auto p = oracle::column(powers, i, tilde);
    const double target = oracle::g_range(powers, g, i, j, tilde, tau);

    const std::uint64_t draws = 1000000;
    Rng rng = stream_rng(5, 1);
    double sum = 0.0;
    double sq = 0.0;
    for (std::uint64_t r = 0; r < draws; ++r) {
        const double x = (walk_sum(g, i, tau - tilde, p, rng) - walk_sum(g, j, tau - tilde, p, rng)) / g.degree(i);
        sum += x;
        sq += x * x;
    }
    const double mean = sum / draws;
    const double sigma = std::sqrt((sq / draws - mean * mean) / draws);
    EXPECT_NEAR(mean, target, 3 * sigma);

    WalkBudget budget{Edge{i, j}, tau - tilde, 1.0, draws};
    Rng same = stream_rng(5, 1);
    EXPECT_NEAR(estimate_remainder(g, p, budget, same), mean, 1e-12);
}

TEST(EstimateRemainder, ZeroLengthIsSkipped) {
    const Graph g = oracle::complete(3);
    Rng rng = stream_rng(0, 0);
    EXPECT_EQ(estimate_remainder(g, kTriangleP2, WalkBudget{Edge{0, 1}, 0, 1.0, 10}, rng), 0.0);
}

TEST(TgtPlus, AuditFindsNoBoundViolations) {
    for (const Graph& g : oracle::er_zoo(4, 40, 150, 61)) {
        const SpectralBasis b = compute_spectral_basis(g, std::min<std::size_t>(128, g.num_nodes()));
        for (int gamma : {0, 3, 10}) {
            TgtPlusOptions options;
            options.epsilon = 0.1;
            options.gamma = gamma;
            options.audit = true;
            TgtPlusStats stats;
            tgt_plus_all_edges(g, b, options, &stats);
            EXPECT_EQ(stats.audit.walk_bound_violations, 0u) << "gamma " << gamma;
            EXPECT_EQ(stats.audit.range_violations, 0u);
        }
    }
}

TEST(TgtPlus, TriangleRepeatedRuns) {
    const Graph g = oracle::complete(3);
    const SpectralBasis b = compute_spectral_basis(g, 3);
    int good = 0;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        TgtPlusOptions options;
        options.epsilon = 0.05;
        options.delta = 1.0 / 3.0;
        options.gamma = 2;
        options.seed = seed;
        const EdgeScores s = tgt_plus_all_edges(g, b, options);
        bool ok = true;
        for (double x : s.scores) ok = ok && std::abs(x - 2.0 / 3.0) <= 0.05;
        good += ok;
    }
    EXPECT_GE(good, 19);
}

TEST(TgtPlus, RandomGraphErrorWellBelowEpsilon) {
    const Graph g = generate_ergodic_erdos_renyi(300, 1500, 44);
    const SpectralBasis b = compute_spectral_basis(g, 128);
    const EdgeScores exact = exact_sc_pseudoinverse(g);
    TgtPlusOptions options;
    options.epsilon = 0.05;
    TgtPlusStats stats;
    const EdgeScores s = tgt_plus_all_edges(g, b, options, &stats);
    double max_err = 0.0;
    double mean_err = 0.0;
    for (EdgeId e = 0; e < g.num_edges(); ++e) {
        const double err = std::abs(s.scores[e] - exact.scores[e]);
        max_err = std::max(max_err, err);
        mean_err += err / g.num_edges();
    }
    EXPECT_LE(max_err, 0.05);
    EXPECT_LT(mean_err, 0.01);
}

TEST(TgtPlus, ReproducibleAndThreadIndependent) {
    const Graph g = generate_ergodic_erdos_renyi(250, 1000, 8);
    const SpectralBasis b = compute_spectral_basis(g, 64);
    TgtPlusOptions options;
    options.epsilon = 0.05;
    options.seed = 99;
    const EdgeScores a = tgt_plus_all_edges(g, b, options);
    const EdgeScores again = tgt_plus_all_edges(g, b, options);
    options.threads = 3;
    const EdgeScores threaded = tgt_plus_all_edges(g, b, options);
    EXPECT_EQ(a.scores, again.scores);
    EXPECT_EQ(a.scores, threaded.scores);
}
