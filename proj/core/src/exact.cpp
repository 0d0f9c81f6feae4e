#include "spancent/exact.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Dense>

#include "spancent/errors.hpp"

namespace spancent {

EdgeScores exact_sc_pseudoinverse(const Graph& g) {
    if (!is_connected(g)) throw DataError("exact_sc_pseudoinverse: graph is disconnected");
    const auto n = static_cast<Eigen::Index>(g.num_nodes());

    // L + J/n is SPD for a connected graph and its inverse is L⁺ + J/n. The
    // J/n part cancels in x_ii + x_jj − 2x_ij, so the inverse is used as is.
    Eigen::MatrixXd shifted = Eigen::MatrixXd::Constant(n, n, 1.0 / static_cast<double>(n));
    for (NodeId v = 0; v < g.num_nodes(); ++v) shifted(v, v) += g.degree(v);
    for (const Edge& e : g.edges()) {
        shifted(e.u, e.v) -= 1.0;
        shifted(e.v, e.u) -= 1.0;
    }
    Eigen::LLT<Eigen::MatrixXd> llt(shifted);
    if (llt.info() != Eigen::Success) {
        throw NumericalError("Cholesky of the shifted Laplacian failed", std::numeric_limits<double>::infinity());
    }
    const Eigen::MatrixXd inverse = llt.solve(Eigen::MatrixXd::Identity(n, n));

    EdgeScores out = EdgeScores::zeros(g);
    for (std::size_t e = 0; e < out.size(); ++e) {
        const Edge& edge = out.edges[e];
        out.scores[e] = inverse(edge.u, edge.u) + inverse(edge.v, edge.v) - 2.0 * inverse(edge.u, edge.v);
    }
    return out;
}

EdgeScores exact_sc_power(const Graph& g, const PowerOracleOptions& options, int* hops_used) {
    require_ergodic(g);
    const std::size_t n = g.num_nodes();

    std::vector<double> inv_deg(n);
    for (NodeId v = 0; v < n; ++v) inv_deg[v] = 1.0 / g.degree(v);

    // Row i holds p_ℓ(i, ·); advancing is X ← X·P.
    std::vector<double> current(n * n, 0.0);
    std::vector<double> next(n * n);
    for (std::size_t i = 0; i < n; ++i) current[i * n + i] = 1.0;

    EdgeScores out = EdgeScores::zeros(g);
    std::vector<long double> sums(out.size(), 0.0L);
    int quiet_hops = 0;
    int hop = 0;
    for (;; ++hop) {
        double largest = 0.0;
        for (std::size_t e = 0; e < out.size(); ++e) {
            const auto [i, j] = out.edges[e];
            const double inc = current[i * n + i] * inv_deg[i] + current[j * n + j] * inv_deg[j] -
                               2.0 * current[i * n + j] * inv_deg[j];
            sums[e] += inc;
            largest = std::max(largest, std::abs(inc));
        }
        quiet_hops = largest < options.tail_tol ? quiet_hops + 1 : 0;
        if (quiet_hops >= 2 || hop >= options.tau_max) break;

        for (std::size_t i = 0; i < n; ++i) {
            const double* row = current.data() + i * n;
            double* out_row = next.data() + i * n;
            for (NodeId y = 0; y < n; ++y) {
                double acc = 0.0;
                for (NodeId x : g.neighbors(y)) acc += row[x] * inv_deg[x];
                out_row[y] = acc;
            }
        }
        current.swap(next);
    }
    for (std::size_t e = 0; e < out.size(); ++e) out.scores[e] = static_cast<double>(sums[e]);
    if (hops_used) *hops_used = hop;
    return out;
}

}  // namespace spancent
