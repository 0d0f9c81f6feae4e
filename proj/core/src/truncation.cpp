#include "spancent/truncation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "spancent/parallel.hpp"

namespace spancent {

namespace {

constexpr double kInfinity = std::numeric_limits<double>::infinity();

int round_up_odd(double x) {
    if (!(x >= 1.0)) return 1;
    auto t = static_cast<long long>(std::ceil(x));
    if (t % 2 == 0) ++t;
    return static_cast<int>(std::min<long long>(t, std::numeric_limits<int>::max() - 1));
}

// ⌈ log(numerator / (budget · (1 − λ²))) / log(1/λ) − 1 ⌉ as a real; ±inf for
// the degenerate cases.
double tail_length(double numerator, double budget, double lambda_abs) {
    if (budget <= 0.0) return kInfinity;
    if (numerator <= 0.0) return -kInfinity;
    const double ratio = numerator / (budget * (1.0 - lambda_abs * lambda_abs));
    return std::ceil(std::log(ratio) / std::log(1.0 / lambda_abs) - 1.0);
}


}  // namespace

int peng_tau(double lambda2_abs, double epsilon) {
    if (!(lambda2_abs > 0.0 && lambda2_abs < 1.0) || !(epsilon > 0.0 && epsilon < 1.0)) {
        throw std::invalid_argument("peng_tau: arguments must lie in (0, 1)");
    }
    const double x = std::log(4.0 / (epsilon - epsilon * lambda2_abs)) / std::log(1.0 / lambda2_abs) - 1.0;
    // Absorb last-ulp noise so exact integers (e.g. log2(16) − 1) do not round up.
    return static_cast<int>(std::ceil(x - 1e-10));
}

namespace {

struct CalTauScratch {
    std::vector<double> weight;   // (f_k[i] − f_k[j])² / 2m / (1 − λ_k)
    std::vector<double> power;    // λ_k^{t+1}
    std::vector<double> squared;
};

struct TauStart {
    double numerator = 0.0;
    double lambda_omega = 0.0;
    int initial = 1;  // λ_2-only bound; every later candidate is at most this long
    int decided = 0;  // nonzero when no search is needed
    bool searchable = false;  // the search could run (it returns 1 when initial is 1)
};

TauStart tau_start(const Graph& g, const SpectralBasis& basis, NodeId i, NodeId j, double epsilon) {
    const std::size_t omega = basis.omega();
    if (omega < 2) throw std::invalid_argument("cal_tau: basis needs omega >= 2");
    TauStart st;
    const double di = g.degree(i);
    const double dj = g.degree(j);
    st.numerator = 1.0 / di + 1.0 / dj - 2.0 / (di * dj);
    const double lambda2 = std::abs(basis.eigenvalues[1]);
    st.lambda_omega = std::abs(basis.eigenvalues[omega - 1]);
    if (lambda2 <= 1e-12) {
        st.decided = 1;
        return st;
    }
    st.initial = round_up_odd(tail_length(st.numerator, epsilon, lambda2));
    st.searchable = st.lambda_omega >= 1e-12 && st.lambda_omega <= 1.0 - 1e-12;
    if (!st.searchable || st.initial == 1) st.decided = st.initial;
    return st;
}

// `diff(k)` is f_k[i] − f_k[j] for basis index k.
template <typename Diff>
int cal_tau_search(const SpectralBasis& basis, const TauStart& st, double epsilon, Diff diff, CalTauScratch& scratch,
                   CalTauTrace* trace) {
    const std::size_t omega = basis.omega();
    const double numerator = st.numerator;
    const double lambda_omega = st.lambda_omega;
    const int initial = st.initial;

    // Terms k = 2 .. ω−1 (indices 1 .. ω−2).
    const double inv_two_m = 1.0 / basis.two_m();
    const std::size_t terms = omega >= 3 ? omega - 2 : 0;
    auto& weight = scratch.weight;
    auto& power = scratch.power;
    auto& squared = scratch.squared;
    weight.resize(terms);
    power.resize(terms);
    squared.resize(terms);
    double upsilon = 0.0;
    for (std::size_t k = 0; k < terms; ++k) {
        const double lambda = basis.eigenvalues[k + 1];
        const double d = diff(k + 1);
        const double c = d * d * inv_two_m;
        upsilon += c * (1.0 + lambda);
        weight[k] = c / (1.0 - lambda);
        squared[k] = lambda * lambda;
        power[k] = squared[k];  // t = 1
    }
    if (trace) trace->upsilon = upsilon;
    const double remainder = numerator - upsilon;

    int t = 1;
    for (;;) {
        double delta = 0.0;
        for (std::size_t k = 0; k < terms; ++k) delta += weight[k] * power[k];
        const double candidate = tail_length(remainder, epsilon - delta, lambda_omega);
        if (trace) {
            trace->t.push_back(t);
            trace->delta.push_back(delta);
            trace->tau_prime.push_back(candidate);
        }
        if (!(static_cast<double>(t) <= candidate)) return t;
        // The λ_2-only length is itself a sound choice; never search past it.
        if (t >= initial) return t;
        t += 2;
        for (std::size_t k = 0; k < terms; ++k) power[k] *= squared[k];
    }
}

}  // namespace

int cal_tau(const Graph& g, const SpectralBasis& basis, NodeId i, NodeId j, double epsilon, CalTauTrace* trace) {
    const TauStart st = tau_start(g, basis, i, j, epsilon);
    if (trace) trace->initial_tau = st.initial;
    if (st.decided && !(trace && st.searchable)) return st.decided;
    CalTauScratch scratch;
    const auto diff = [&](std::size_t k) { return basis.vectors[k][i] - basis.vectors[k][j]; };
    return cal_tau_search(basis, st, epsilon, diff, scratch, trace);
}

int TruncationTable::max_tau() const {
    return tau.empty() ? 0 : *std::max_element(tau.begin(), tau.end());
}

double TruncationTable::mean_tau() const {
    if (tau.empty()) return 0.0;
    const double total = std::accumulate(tau.begin(), tau.end(), 0.0);
    return total / static_cast<double>(tau.size());
}

TruncationTable compute_truncation_table(const Graph& g, const SpectralBasis& basis, double epsilon, int threads) {
    TruncationTable table;
    table.epsilon = epsilon;
    table.tau.resize(g.num_edges());

    std::vector<TauStart> starts(g.num_edges());
    std::size_t pending = 0;
    for (EdgeId e = 0; e < g.num_edges(); ++e) {
        starts[e] = tau_start(g, basis, g.edge(e).u, g.edge(e).v, epsilon);
        table.tau[e] = starts[e].decided;
        pending += starts[e].decided == 0;
    }

    if (pending > 0) {
        // Node-major copy so one edge reads two contiguous rows.
        const std::size_t omega = basis.omega();
        std::vector<double> rows(g.num_nodes() * omega);
        for (std::size_t k = 0; k < omega; ++k)
            for (std::size_t v = 0; v < g.num_nodes(); ++v) rows[v * omega + k] = basis.vectors[k][v];

        std::vector<CalTauScratch> scratch(worker_count(g.num_edges(), threads));
        parallel_for(g.num_edges(), threads, [&](std::size_t e, std::size_t worker) {
            if (starts[e].decided) return;
            const Edge& edge = g.edge(static_cast<EdgeId>(e));
            const double* fi = rows.data() + edge.u * omega;
            const double* fj = rows.data() + edge.v * omega;
            const auto diff = [&](std::size_t k) { return fi[k] - fj[k]; };
            table.tau[e] = cal_tau_search(basis, starts[e], epsilon, diff, scratch[worker], nullptr);
        });
    }
    const double lambda2 = std::abs(basis.eigenvalues[1]);
    if (lambda2 > 0.0 && lambda2 < 1.0) {
        table.peng_tau = peng_tau(lambda2, epsilon);
        table.peng_tau_half = peng_tau(lambda2, epsilon / 2.0);
    }
    return table;
}

}  // namespace spancent
