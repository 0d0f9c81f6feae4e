#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "spancent/edge_scores.hpp"
#include "spancent/graph.hpp"
#include "spancent/spectral.hpp"
#include "spancent/truncation.hpp"

namespace spancent {

/// Working state of a deterministic traversal toward one source node.
///
/// Holds p_ℓ(·, source), the ℓ-hop probabilities *into* the source. Columns
/// of P are not stochastic, so the conserved quantity is the degree-weighted
/// mass Σ_x d(x)·p_ℓ(x, source) = d(source).
///
/// Storage is a dense array reused across sources plus a support list; once
/// the support reaches n/4 the step switches to a dense gather and stays
/// there until the next reset. Allocate once per worker and call reset().
class TraversalState {
public:
    explicit TraversalState(const Graph& g);

    void reset(NodeId source);

    NodeId source() const noexcept { return source_; }
    int hop() const noexcept { return hop_; }

    /// p_hop(x, source).
    double value(NodeId x) const noexcept { return current_[x]; }
    std::span<const double> values() const noexcept { return current_; }

    std::size_t support_size() const noexcept { return support_size_; }
    bool dense() const noexcept { return dense_; }
    /// Nodes with nonzero value, in discovery order. Only meaningful while !dense().
    std::span<const NodeId> support() const noexcept { return support_; }

    /// Σ d(x) over x with p_hop(x, source) > 0: the cost of the next step.
    std::uint64_t frontier_degree_sum() const noexcept { return frontier_degree_sum_; }

    double max_value() const noexcept { return max_value_; }
    /// 0 unless the support is all of V.
    double min_value() const;

    /// Per-neighbor accumulators g(source, v_j) in neighbor-list order.
    std::vector<long double> g_acc;

private:
    friend void traverse_step(const Graph& g, TraversalState& state);

    const Graph* graph_;
    NodeId source_ = 0;
    int hop_ = 0;
    bool dense_ = false;
    std::vector<double> current_;
    std::vector<double> next_;
    std::vector<NodeId> support_;
    std::vector<NodeId> next_support_;
    std::vector<std::uint32_t> stamp_;
    std::uint32_t epoch_ = 0;
    std::size_t support_size_ = 0;
    std::uint64_t frontier_degree_sum_ = 0;
    double max_value_ = 0.0;
};

/// Advances p_ℓ(·, s) to p_{ℓ+1}(·, s) = P · p_ℓ(·, s).
void traverse_step(const Graph& g, TraversalState& state);

/// Adds hop `state.hop()`'s term (p_ℓ(s,s) − p_ℓ(v_j,s))/d(s) to g_acc[k] for
/// every neighbor slot k with limit[k] >= hop; an empty `limit` means no limit.
void accumulate_hop(const Graph& g, TraversalState& state, std::span<const int> limit = {});

/// Runs a `tau_p`-hop traversal from `source` and returns
/// g(source, v_j) = Σ_{ℓ=0}^{τ_p} (p_ℓ(s,s) − p_ℓ(v_j,s)) / d(s) per neighbor.
std::vector<double> tgt_source(const Graph& g, NodeId source, int tau_p, TraversalState& state);

/// Same, with τ_p = max over the source's incident edges in `table`.
std::vector<double> tgt_source(const Graph& g, const TruncationTable& table, NodeId source,
                               TraversalState& state);

struct TgtStats {
    std::uint64_t hops = 0;
    std::uint64_t edge_visits = 0;
};

/// s_T(e_ij) = g_T(v_i, v_j) + g_T(v_j, v_i) for every edge, each source
/// traversed for its τ_p and both halves summed to T = min(τ_p(i), τ_p(j)),
/// an odd length >= τ_ij. Deterministic for any thread count.
EdgeScores tgt_all_edges(const Graph& g, const TruncationTable& table, int threads = 1, TgtStats* stats = nullptr);

/// Computes the truncation table at ε from `basis`, then runs the traversal.
EdgeScores tgt_all_edges(const Graph& g, const SpectralBasis& basis, double epsilon, int threads = 1,
                         TgtStats* stats = nullptr);

}  // namespace spancent
