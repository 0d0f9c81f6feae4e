#pragma once

#include "spancent/edge_scores.hpp"
#include "spancent/graph.hpp"

namespace spancent {

/// Exact SC of every edge as its effective resistance L⁺[i,i] + L⁺[j,j] − 2L⁺[i,j].
/// Dense O(n³); intended for graphs up to a few thousand nodes.
/// Throws DataError if g is disconnected.
EdgeScores exact_sc_pseudoinverse(const Graph& g);

struct PowerOracleOptions {
    /// Stop once every edge's per-hop increment stays below this for two consecutive hops.
    double tail_tol = 1e-12;
    int tau_max = 1000;
};

/// Exact SC by summing the hop series
///   s(e_ij) = Σ_ℓ p_ℓ(i,i)/d(i) + p_ℓ(j,j)/d(j) − 2 p_ℓ(i,j)/d(j)
/// with dense transition powers. Throws DataError unless g is ergodic.
/// `hops_used`, when given, receives the last hop summed.
EdgeScores exact_sc_power(const Graph& g, const PowerOracleOptions& options = {}, int* hops_used = nullptr);

}  // namespace spancent
