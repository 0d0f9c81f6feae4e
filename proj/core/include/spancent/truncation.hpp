#pragma once

#include <vector>

#include "spancent/graph.hpp"
#include "spancent/spectral.hpp"

namespace spancent {

/// Global truncation length from the second eigenvalue alone:
///   ⌈ log(4 / (ε − ελ)) / log(1/λ) − 1 ⌉,  λ = |λ_2|.
int peng_tau(double lambda2_abs, double epsilon);

/// Intermediate values of one cal_tau search, for auditing.
struct CalTauTrace {
    int initial_tau = 0;          // λ_2-only bound (odd-rounded)
    double upsilon = 0.0;         // Υ
    std::vector<int> t;           // odd candidates visited
    std::vector<double> delta;    // Δ_t for each visited t
    std::vector<double> tau_prime;  // candidate length (may be ±inf)
};

/// Edge-wise truncation length: the returned odd τ guarantees
/// |s(e) − s_τ(e)| ≤ ε, using the ω eigenpairs in `basis`.
int cal_tau(const Graph& g, const SpectralBasis& basis, NodeId i, NodeId j, double epsilon,
            CalTauTrace* trace = nullptr);

struct TruncationTable {
    double epsilon = 0.0;
    /// τ per EdgeId; always odd and >= 1.
    std::vector<int> tau;
    /// Global lengths from peng_tau at ε and at ε/2, for comparison.
    int peng_tau = 0;
    int peng_tau_half = 0;

    int max_tau() const;
    double mean_tau() const;
};

TruncationTable compute_truncation_table(const Graph& g, const SpectralBasis& basis, double epsilon,
                                         int threads = 1);

}  // namespace spancent
