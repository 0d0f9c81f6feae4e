#pragma once

#include <cstdint>
#include <vector>

#include "spancent/edge_scores.hpp"
#include "spancent/graph.hpp"
#include "spancent/rng.hpp"
#include "spancent/spectral.hpp"
#include "spancent/truncation.hpp"

namespace spancent {

/// n − 1 edge ids of a spanning tree, sorted.
struct SpanningTree {
    std::vector<EdgeId> edges;
};

/// Uniform spanning tree by loop-erased random walks (Wilson), processing
/// nodes in id order. `g` must be connected.
SpanningTree wilson_spanning_tree(const Graph& g, NodeId root, Rng& rng);

/// True iff `tree` has n − 1 distinct edges and connects every node.
bool is_spanning_tree(const Graph& g, const SpanningTree& tree);

/// ⌈ln(2m/δ) / (2ε²)⌉.
std::uint64_t st_edge_tree_count(std::size_t m, double epsilon, double delta);

struct StEdgeOptions {
    double epsilon = 0.01;
    double delta = 0.0;  // 0 selects 1/n
    std::uint64_t seed = 0;
    int threads = 1;
    /// Overrides the Hoeffding count when nonzero.
    std::uint64_t trees = 0;
};

/// Fraction of sampled trees containing each edge; tree t uses stream t.
EdgeScores st_edge_all_edges(const Graph& g, const StEdgeOptions& options);

/// Walks from v_i needed for edge (i, j): each half of s_τ is a mean of
/// per-walk terms in [−τ/d_j, τ/d_i], held to ε/4 with failure δ/(2m):
///   ⌈8 τ² (1/d_i + 1/d_j)² ln(4m/δ) / ε²⌉.
std::uint64_t montecarlo_walk_count(int tau, std::size_t d_i, std::size_t d_j, double epsilon, double delta,
                                    std::size_t m);

struct MonteCarloOptions {
    double epsilon = 0.01;
    double delta = 0.0;  // 0 selects 1/n
    std::uint64_t seed = 0;
    int threads = 1;
};

struct MonteCarloStats {
    std::uint64_t walks = 0;
    std::uint64_t walk_steps = 0;
};

/// Per source v_i, n_w walks of length τ_p = max_j τ_ij (at ε/2); the
/// occupancy of v_i and v_j at hop ℓ ≤ τ_ij estimates p_ℓ(v_i, v_i) and
/// p_ℓ(v_i, v_j), and g(v_i, v_j) = Σ_ℓ p_ℓ(v_i,v_i)/d_i − p_ℓ(v_i,v_j)/d_j.
EdgeScores montecarlo_all_edges(const Graph& g, const TruncationTable& half_table, const MonteCarloOptions& options,
                                MonteCarloStats* stats = nullptr);
EdgeScores montecarlo_all_edges(const Graph& g, const SpectralBasis& basis, const MonteCarloOptions& options,
                                MonteCarloStats* stats = nullptr);

}  // namespace spancent
