#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "spancent/edge_scores.hpp"
#include "spancent/graph.hpp"
#include "spancent/rng.hpp"
#include "spancent/spectral.hpp"
#include "spancent/traversal.hpp"

namespace spancent {

/// Walk budget for one g-half: n_r walk pairs of length remaining_len.
struct WalkBudget {
    Edge edge;  // (source, neighbor), not necessarily canonical
    int remaining_len = 0;
    double chi = 0.0;
    std::uint64_t n_r = 0;
};

/// Nodes visited at hops 1..ℓ; the start node is not included.
struct WalkSample {
    std::vector<NodeId> nodes;
};

/// Range of Σ_{x ∈ W} p_τ̃(x, v_i) over length-ℓ walks W from one start node.
struct BoundPair {
    double lb = 0.0;
    double ub = 0.0;
    double rho_hat = 0.0;
};

struct SamplingParams {
    double epsilon = 0.0;
    double delta = 0.0;
    std::size_t m = 0;
};

/// Largest and smallest entry of p_τ̃(·, v_i) over all of V.
struct Extremes {
    double max = 0.0;
    double min = 0.0;
};

Extremes extremes(std::span<const double> p);

/// ⌈8χ² ln(2m/δ) / (d² ε²)⌉, 0 when χ = 0. Capped at 1e8 with a diagnostic
/// on stderr.
std::uint64_t sample_count(double chi, std::size_t degree, double epsilon, double delta, std::size_t m);

/// χ = 2ℓ (max_V p − min_V p): the range of a walk-sum difference without
/// any structural information.
double coarse_chi(const Extremes& ex, int remaining_len);

/// Switch rule: true iff the next traversal hop (cost frontier_degree_sum) is
/// dearer than the walks still needed, Σ over neighbors with τ_ij > hop of
/// R(e_ij, τ_ij − hop) under the coarse χ. `tau` is in neighbor-list order.
bool should_switch(const Graph& g, const TraversalState& state, std::span<const int> tau,
                   const SamplingParams& params);

/// Upper bound ρ̂ on max over edges (x, y) of p(x) + p(y), using the γ
/// largest entries of p (ties by ascending node id). `support` lists the
/// nodes with p > 0; pass an empty span to scan all of V.
double rho_hat(const Graph& g, std::span<const double> p, std::span<const NodeId> support, int gamma);

/// LB/UB on the walk sum for walks of length ℓ >= 1 from `start`.
BoundPair walk_bounds(const Graph& g, NodeId start, std::span<const double> p, const Extremes& ex,
                      double rho_hat, int len);
BoundPair walk_bounds(const Graph& g, NodeId start, std::span<const double> p, double rho_hat, int len);

/// χ for edge (i, j): coarse when γ = 0, otherwise UB_i + UB_j − LB_i − LB_j,
/// raised to UB_i − LB_j or UB_j − LB_i if either is larger so that
/// |X| ≤ χ / d(v_i) holds for every draw, not just the range width.
double cal_chi(const Graph& g, NodeId i, NodeId j, std::span<const double> p, int gamma, int remaining_len);

/// Same with the per-source quantities (extremes, ρ̂) precomputed.
double cal_chi(const Graph& g, NodeId i, NodeId j, std::span<const double> p, const Extremes& ex,
               double rho_hat, int gamma, int remaining_len);

WalkSample simulate_walk(const Graph& g, NodeId start, int len, Rng& rng);

/// Σ_{x ∈ W} p[x] for one length-`len` walk from `start`.
double walk_sum(const Graph& g, NodeId start, int len, std::span<const double> p, Rng& rng);

/// Audit counters for estimate_remainder; violations should stay at zero.
struct SamplingAudit {
    std::uint64_t walks = 0;
    std::uint64_t walk_bound_violations = 0;
    std::uint64_t range_violations = 0;
    double max_abs_x = 0.0;
};

/// Mean of n_r draws of X = (Σ_{W_i} p − Σ_{W_j} p) / d(v_i), walks of length
/// budget.remaining_len from budget.edge.u and budget.edge.v. Returns 0 when
/// no walks are needed. With `audit` set, every walk sum is checked against
/// [LB, UB] (bounds built from `rho`) and every X against χ/d(v_i).
double estimate_remainder(const Graph& g, std::span<const double> p, const WalkBudget& budget, Rng& rng,
                          SamplingAudit* audit = nullptr, double rho = 0.0);

struct TgtPlusOptions {
    double epsilon = 0.01;
    double delta = 0.0;  // 0 selects 1/n
    int gamma = 10;
    std::uint64_t seed = 0;
    int threads = 1;
    /// Check every walk against its bounds (slower).
    bool audit = false;
};

struct TgtPlusStats {
    std::uint64_t traversal_hops = 0;
    std::uint64_t sampled_edges = 0;  // g-halves that needed walks
    std::uint64_t walk_pairs = 0;
    std::uint64_t walk_steps = 0;
    std::uint64_t capped_budgets = 0;
    SamplingAudit audit;
};

/// All-edge estimate with |ŝ(e) − s(e)| ≤ ε for every edge with probability
/// at least 1 − δ. Output depends only on (graph, basis, options), never on
/// the thread count.
EdgeScores tgt_plus_all_edges(const Graph& g, const SpectralBasis& basis, const TgtPlusOptions& options,
                              TgtPlusStats* stats = nullptr);

/// Same with truncation lengths precomputed (at ε/2).
EdgeScores tgt_plus_all_edges(const Graph& g, const TruncationTable& half_table, const TgtPlusOptions& options,
                              TgtPlusStats* stats = nullptr);

}  // namespace spancent
