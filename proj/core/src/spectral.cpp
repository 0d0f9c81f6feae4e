#include "spancent/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>
#include <stdexcept>

#include <Eigen/Dense>
#include <arpack/arpack.hpp>

#include "spancent/errors.hpp"
#include "spancent/rng.hpp"

namespace spancent {

namespace {

struct Eigenpair {
    double value;
    std::vector<double> vector;  // unit φ_k
};

std::vector<double> inverse_sqrt_degrees(const Graph& g) {
    std::vector<double> out(g.num_nodes());
    for (NodeId v = 0; v < g.num_nodes(); ++v) out[v] = 1.0 / std::sqrt(static_cast<double>(g.degree(v)));
    return out;
}

// y = D^{-1/2} A D^{-1/2} x
void apply_normalized_adjacency(const Graph& g, const std::vector<double>& inv_sqrt_deg,
                                const double* x, double* y) {
    for (NodeId v = 0; v < g.num_nodes(); ++v) {
        double acc = 0.0;
        for (NodeId w : g.neighbors(v)) acc += x[w] * inv_sqrt_deg[w];
        y[v] = acc * inv_sqrt_deg[v];
    }
}

std::vector<Eigenpair> dense_eigenpairs(const Graph& g) {
    const std::size_t n = g.num_nodes();
    const auto inv_sqrt_deg = inverse_sqrt_degrees(g);
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (const Edge& e : g.edges()) {
        const double w = inv_sqrt_deg[e.u] * inv_sqrt_deg[e.v];
        m(e.u, e.v) = w;
        m(e.v, e.u) = w;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m);
    if (solver.info() != Eigen::Success) {
        throw NumericalError("dense symmetric eigensolver failed", std::numeric_limits<double>::infinity());
    }
    std::vector<Eigenpair> pairs(n);
    for (std::size_t k = 0; k < n; ++k) {
        pairs[k].value = solver.eigenvalues()(static_cast<Eigen::Index>(k));
        const auto col = solver.eigenvectors().col(static_cast<Eigen::Index>(k));
        pairs[k].vector.assign(col.data(), col.data() + n);
    }
    return pairs;
}

std::vector<Eigenpair> arpack_eigenpairs(const Graph& g, std::size_t omega, const SpectralOptions& options) {
    const auto n = static_cast<a_int>(g.num_nodes());
    const auto nev = static_cast<a_int>(omega);
    const a_int ncv = std::min<a_int>(n, std::max<a_int>(2 * nev + 1, nev + 32));
    const a_int ldv = n;
    const a_int lworkl = ncv * (ncv + 8);
    const double tol = 1e-12;

    const auto inv_sqrt_deg = inverse_sqrt_degrees(g);

    std::vector<double> resid(static_cast<std::size_t>(n));
    // Fixed start vector keeps the Krylov sequence reproducible.
    Rng rng = stream_rng(0x5bec7ULL, 0);
    std::uniform_real_distribution<double> unit(0.5, 1.5);
    for (auto& r : resid) r = unit(rng);

    std::vector<double> v(static_cast<std::size_t>(ldv * ncv));
    std::vector<double> workd(static_cast<std::size_t>(3 * n));
    std::vector<double> workl(static_cast<std::size_t>(lworkl));
    a_int iparam[11] = {};
    a_int ipntr[14] = {};
    iparam[0] = 1;  // exact shifts
    iparam[2] = options.max_iterations;
    iparam[6] = 1;  // regular mode
    a_int ido = 0;
    a_int info = 1;  // use resid as the start vector

    for (;;) {
        arpack::saupd(ido, arpack::bmat::identity, n, arpack::which::largest_magnitude, nev, tol,
                      resid.data(), ncv, v.data(), ldv, iparam, ipntr, workd.data(), workl.data(),
                      lworkl, info);
        if (ido == -1 || ido == 1) {
            apply_normalized_adjacency(g, inv_sqrt_deg, workd.data() + ipntr[0] - 1, workd.data() + ipntr[1] - 1);
            continue;
        }
        break;
    }
    if (info < 0) {
        throw NumericalError("ARPACK dsaupd failed with info=" + std::to_string(info),
                             std::numeric_limits<double>::infinity());
    }
    if (info == 1 || iparam[4] < nev) {
        throw NumericalError("ARPACK reached the iteration limit with " + std::to_string(iparam[4]) + " of " +
                                 std::to_string(nev) + " eigenpairs converged",
                             std::numeric_limits<double>::infinity());
    }

    std::vector<a_int> select(static_cast<std::size_t>(ncv));
    std::vector<double> values(static_cast<std::size_t>(nev));
    std::vector<double> z(static_cast<std::size_t>(n * nev));
    arpack::seupd(true, arpack::howmny::ritz_vectors, select.data(), values.data(), z.data(), n, 0.0,
                  arpack::bmat::identity, n, arpack::which::largest_magnitude, nev, tol, resid.data(), ncv,
                  v.data(), ldv, iparam, ipntr, workd.data(), workl.data(), lworkl, info);
    if (info != 0) {
        throw NumericalError("ARPACK dseupd failed with info=" + std::to_string(info),
                             std::numeric_limits<double>::infinity());
    }
    std::vector<Eigenpair> pairs(static_cast<std::size_t>(nev));
    for (a_int k = 0; k < nev; ++k) {
        pairs[static_cast<std::size_t>(k)].value = values[static_cast<std::size_t>(k)];
        pairs[static_cast<std::size_t>(k)].vector.assign(z.begin() + k * n, z.begin() + (k + 1) * n);
    }
    return pairs;
}

double pair_residual(const Graph& g, const std::vector<double>& inv_sqrt_deg, const Eigenpair& pair,
                     std::vector<double>& scratch) {
    apply_normalized_adjacency(g, inv_sqrt_deg, pair.vector.data(), scratch.data());
    double sq = 0.0;
    for (std::size_t i = 0; i < scratch.size(); ++i) {
        const double r = scratch[i] - pair.value * pair.vector[i];
        sq += r * r;
    }
    return std::sqrt(sq);
}

}  // namespace

SpectralBasis compute_spectral_basis(const Graph& g, std::size_t omega, const SpectralOptions& options) {
    const std::size_t n = g.num_nodes();
    if (omega < 2 || omega > n) throw std::invalid_argument("compute_spectral_basis: need 2 <= omega <= n");
    require_ergodic(g);

    bool dense = false;
    switch (options.backend) {
        case EigenBackend::dense: dense = true; break;
        case EigenBackend::iterative: dense = false; break;
        case EigenBackend::automatic: dense = n <= options.dense_limit; break;
    }
    // ARPACK needs nev < n and room for the Krylov basis.
    if (!dense && omega + 1 >= n) dense = true;

    std::vector<Eigenpair> pairs = dense ? dense_eigenpairs(g) : arpack_eigenpairs(g, omega, options);

    // Descending |λ|, then descending λ, then solver order.
    std::vector<std::size_t> order(pairs.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const double fa = std::abs(pairs[a].value);
        const double fb = std::abs(pairs[b].value);
        if (fa != fb) return fa > fb;
        return pairs[a].value > pairs[b].value;
    });
    order.resize(omega);

    const auto inv_sqrt_deg = inverse_sqrt_degrees(g);
    std::vector<double> scratch(n);
    double worst = 0.0;
    for (std::size_t k : order) worst = std::max(worst, pair_residual(g, inv_sqrt_deg, pairs[k], scratch));
    if (!(worst <= options.residual_tolerance)) {
        throw NumericalError("eigensolver residual " + std::to_string(worst) + " exceeds tolerance", worst);
    }
    if (std::abs(pairs[order[0]].value - 1.0) > 1e-8) {
        throw NumericalError("leading eigenvalue is not 1", std::abs(pairs[order[0]].value - 1.0));
    }

    SpectralBasis basis;
    basis.n = n;
    basis.m = g.num_edges();
    basis.eigenvalues.reserve(omega);
    basis.vectors.reserve(omega);
    const double scale = std::sqrt(basis.two_m());
    for (std::size_t rank = 0; rank < omega; ++rank) {
        Eigenpair& pair = pairs[order[rank]];
        if (rank == 0) {
            basis.eigenvalues.push_back(1.0);
            basis.vectors.emplace_back(n, 1.0);
            continue;
        }
        auto first = std::find_if(pair.vector.begin(), pair.vector.end(),
                                  [](double x) { return std::abs(x) > 1e-12; });
        const double sign = (first != pair.vector.end() && *first < 0.0) ? -1.0 : 1.0;
        std::vector<double> f(n);
        for (std::size_t i = 0; i < n; ++i) f[i] = sign * scale * pair.vector[i] * inv_sqrt_deg[i];
        basis.eigenvalues.push_back(pair.value);
        basis.vectors.push_back(std::move(f));
    }
    return basis;
}

double max_residual(const Graph& g, const SpectralBasis& basis) {
    const std::size_t n = g.num_nodes();
    const auto inv_sqrt_deg = inverse_sqrt_degrees(g);
    const double scale = std::sqrt(basis.two_m());
    std::vector<double> scratch(n);
    double worst = 0.0;
    for (std::size_t k = 0; k < basis.omega(); ++k) {
        Eigenpair pair{basis.eigenvalues[k], std::vector<double>(n)};
        // φ = D^{1/2} f / sqrt(2m)
        for (std::size_t i = 0; i < n; ++i) pair.vector[i] = basis.vectors[k][i] / (inv_sqrt_deg[i] * scale);
        worst = std::max(worst, pair_residual(g, inv_sqrt_deg, pair, scratch));
    }
    return worst;
}

void write_spectral_cache(std::ostream& out, const SpectralBasis& basis) {
    char buffer[40];
    const auto put = [&](double x) {
        std::snprintf(buffer, sizeof buffer, "%.17g", x == 0.0 ? 0.0 : x);
        out << buffer;
    };
    out << basis.n << ' ' << basis.m << ' ' << basis.omega() << '\n';
    for (std::size_t k = 0; k < basis.omega(); ++k) {
        if (k) out << ' ';
        put(basis.eigenvalues[k]);
    }
    out << '\n';
    for (const auto& f : basis.vectors) {
        for (std::size_t i = 0; i < f.size(); ++i) {
            if (i) out << ' ';
            put(f[i]);
        }
        out << '\n';
    }
}

void write_spectral_cache_file(const std::string& path, const SpectralBasis& basis) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write spectral cache '" + path + "'");
    write_spectral_cache(out, basis);
}

SpectralBasis read_spectral_cache(std::istream& in) {
    SpectralBasis basis;
    std::size_t omega = 0;
    if (!(in >> basis.n >> basis.m >> omega) || omega == 0 || omega > basis.n) {
        throw DataError("spectral cache: bad header");
    }
    basis.eigenvalues.resize(omega);
    for (auto& value : basis.eigenvalues) {
        if (!(in >> value)) throw DataError("spectral cache: truncated eigenvalue line");
    }
    basis.vectors.assign(omega, std::vector<double>(basis.n));
    for (auto& f : basis.vectors) {
        for (auto& x : f) {
            if (!(in >> x)) throw DataError("spectral cache: truncated vector data");
        }
    }
    return basis;
}

SpectralBasis read_spectral_cache_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open spectral cache '" + path + "'");
    return read_spectral_cache(in);
}

DenseDistribution transition_power_row(const Graph& g, NodeId v, int hop) {
    const std::size_t n = g.num_nodes();
    DenseDistribution dist{v, hop, std::vector<double>(n, 0.0)};
    dist.values[v] = 1.0;
    std::vector<double> next(n);
    for (int step = 0; step < hop; ++step) {
        for (NodeId x = 0; x < n; ++x) {
            double acc = 0.0;
            for (NodeId j : g.neighbors(x)) acc += dist.values[j];
            next[x] = acc / g.degree(x);
        }
        dist.values.swap(next);
    }
    return dist;
}

}  // namespace spancent
