#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "spancent/graph.hpp"

namespace spancent {

/// Top-ω eigenpairs (by |λ|) of the normalized transition operator
/// D^{1/2} P D^{-1/2} = D^{-1/2} A D^{-1/2}, with eigenvectors rescaled to
/// f_k = sqrt(2m) D^{-1/2} φ_k so that p_ℓ(i,j)/d(j) = (1/2m) Σ_k f_k[i] f_k[j] λ_k^ℓ.
struct SpectralBasis {
    std::size_t n = 0;
    std::size_t m = 0;
    /// λ_1..λ_ω by descending |λ|; λ_1 = 1.
    std::vector<double> eigenvalues;
    /// f_1..f_ω, each of length n; f_1 is the all-ones vector.
    std::vector<std::vector<double>> vectors;

    std::size_t omega() const noexcept { return eigenvalues.size(); }
    double two_m() const noexcept { return 2.0 * static_cast<double>(m); }
};

enum class EigenBackend { automatic, dense, iterative };

struct SpectralOptions {
    EigenBackend backend = EigenBackend::automatic;
    /// automatic picks the dense solver up to this many nodes.
    std::size_t dense_limit = 2000;
    /// Required ‖Mφ − λφ‖ for every returned pair.
    double residual_tolerance = 1e-8;
    int max_iterations = 20000;
};

/// Throws std::invalid_argument unless 2 <= omega <= n, and NumericalError
/// (carrying the achieved residual) when the solver misses the tolerance.
SpectralBasis compute_spectral_basis(const Graph& g, std::size_t omega, const SpectralOptions& options = {});

/// Largest residual ‖Mφ_k − λ_k φ_k‖ over the basis, recomputed from the graph.
double max_residual(const Graph& g, const SpectralBasis& basis);

/// Cache format: "n m omega" header, one line of ω eigenvalues, then ω lines
/// of n vector entries; all reals with 17 significant digits.
void write_spectral_cache(std::ostream& out, const SpectralBasis& basis);
void write_spectral_cache_file(const std::string& path, const SpectralBasis& basis);
SpectralBasis read_spectral_cache(std::istream& in);
SpectralBasis read_spectral_cache_file(const std::string& path);

/// ℓ-hop transition probabilities into `target`: values[j] = p_ℓ(v_j, target).
/// By reversibility p_ℓ(v_j, t)·d(v_j) = p_ℓ(t, v_j)·d(t).
struct DenseDistribution {
    NodeId target = 0;
    int hop = 0;
    std::vector<double> values;
};

/// p_ℓ(·, v) = P^ℓ e_v by ℓ sparse multiplies.
DenseDistribution transition_power_row(const Graph& g, NodeId v, int hop);

}  // namespace spancent
