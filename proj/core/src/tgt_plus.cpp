#include "spancent/tgt_plus.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <optional>

#include "spancent/parallel.hpp"
#include "spancent/truncation.hpp"

namespace spancent {

namespace {

constexpr double kMaxSamples = 1e8;
constexpr double kAuditSlack = 1e-12;

double raw_sample_count(double chi, std::size_t degree, double epsilon, double delta, std::size_t m) {
    if (chi <= 0.0) return 0.0;
    const double d = static_cast<double>(degree);
    return 8.0 * chi * chi * std::log(2.0 * static_cast<double>(m) / delta) / (d * d * epsilon * epsilon);
}

std::atomic<bool> cap_reported{false};

}  // namespace

Extremes extremes(std::span<const double> p) {
    if (p.empty()) return {};
    const auto [lo, hi] = std::minmax_element(p.begin(), p.end());
    return {*hi, *lo};
}

std::uint64_t sample_count(double chi, std::size_t degree, double epsilon, double delta, std::size_t m) {
    const double raw = raw_sample_count(chi, degree, epsilon, delta, m);
    if (raw <= 0.0) return 0;
    const double count = std::ceil(raw);
    if (count > kMaxSamples) {
        if (!cap_reported.exchange(true)) {
            std::fprintf(stderr,
                         "warning: walk budget %.3g exceeds the cap; using %.0f samples (chi=%.3g, d=%zu). "
                         "The failure probability bound no longer holds for this edge.\n",
                         count, kMaxSamples, chi, degree);
        }
        return static_cast<std::uint64_t>(kMaxSamples);
    }
    return static_cast<std::uint64_t>(count);
}

double coarse_chi(const Extremes& ex, int remaining_len) {
    return 2.0 * remaining_len * (ex.max - ex.min);
}

bool should_switch(const Graph& g, const TraversalState& state, std::span<const int> tau, const SamplingParams& params) {
    const auto lhs = static_cast<double>(state.frontier_degree_sum());
    const Extremes ex{state.max_value(), state.min_value()};
    const std::size_t degree = g.degree(state.source());
    double rhs = 0.0;
    for (int t : tau) {
        if (t <= state.hop()) continue;
        const double chi = coarse_chi(ex, t - state.hop());
        rhs += std::ceil(raw_sample_count(chi, degree, params.epsilon, params.delta, params.m));
        if (rhs >= lhs) return false;
    }
    return lhs > rhs;
}

double rho_hat(const Graph& g, std::span<const double> p, std::span<const NodeId> support, int gamma) {
    std::vector<NodeId> candidates;
    if (support.empty()) {
        candidates.resize(p.size());
        std::iota(candidates.begin(), candidates.end(), NodeId{0});
    } else {
        candidates.assign(support.begin(), support.end());
    }
    if (candidates.empty()) return 0.0;
    const auto before = [&](NodeId a, NodeId b) { return p[a] != p[b] ? p[a] > p[b] : a < b; };
    const std::size_t want = std::min<std::size_t>(static_cast<std::size_t>(std::max(gamma, 1)) + 1, candidates.size());
    std::partial_sort(candidates.begin(), candidates.begin() + static_cast<std::ptrdiff_t>(want), candidates.end(), before);

    const std::size_t c = std::min<std::size_t>(static_cast<std::size_t>(std::max(gamma, 1)), candidates.size());
    // An edge with an endpoint outside C sums to at most p(c_1) + (largest p outside C).
    double bound = 0.0;
    if (candidates.size() > c) {
        bound = p[candidates[0]] + p[candidates[c]];
    } else if (candidates.size() < p.size()) {
        bound = p[candidates[0]];  // the rest of V has p = 0
    }
    // Edges inside C, scanned in decreasing order of pair sum.
    for (std::size_t a = 0; a + 1 < c; ++a) {
        if (p[candidates[a]] + p[candidates[a + 1]] <= bound) break;
        for (std::size_t b = a + 1; b < c; ++b) {
            const double sum = p[candidates[a]] + p[candidates[b]];
            if (sum <= bound) break;
            if (g.has_edge(candidates[a], candidates[b])) {
                bound = sum;
                break;
            }
        }
    }
    return bound;
}

BoundPair walk_bounds(const Graph& g, NodeId start, std::span<const double> p, const Extremes& ex, double rho,
                      int len) {
    double lo = p[g.neighbors(start).front()];
    double hi = lo;
    for (NodeId x : g.neighbors(start)) {
        lo = std::min(lo, p[x]);
        hi = std::max(hi, p[x]);
    }
    BoundPair out;
    out.rho_hat = rho;
    out.lb = lo + (len - 1) * ex.min;
    out.ub = hi / 2.0 + ex.max / 2.0 + (len - 1) * rho / 2.0;
    return out;
}

BoundPair walk_bounds(const Graph& g, NodeId start, std::span<const double> p, double rho, int len) {
    return walk_bounds(g, start, p, extremes(p), rho, len);
}

double cal_chi(const Graph& g, NodeId i, NodeId j, std::span<const double> p, const Extremes& ex, double rho,
               int gamma, int remaining_len) {
    if (gamma <= 0) return coarse_chi(ex, remaining_len);
    const BoundPair bi = walk_bounds(g, i, p, ex, rho, remaining_len);
    const BoundPair bj = walk_bounds(g, j, p, ex, rho, remaining_len);
    // X·d(v_i) lies in [LB_i − UB_j, UB_i − LB_j]. Its width is the sum below;
    // when the interval misses 0 an endpoint is larger, and |X| ≤ χ/d(v_i)
    // needs that endpoint.
    const double width = bi.ub + bj.ub - bi.lb - bj.lb;
    return std::max({width, bi.ub - bj.lb, bj.ub - bi.lb});
}

double cal_chi(const Graph& g, NodeId i, NodeId j, std::span<const double> p, int gamma, int remaining_len) {
    const Extremes ex = extremes(p);
    if (gamma <= 0) return coarse_chi(ex, remaining_len);
    return cal_chi(g, i, j, p, ex, rho_hat(g, p, {}, gamma), gamma, remaining_len);
}

WalkSample simulate_walk(const Graph& g, NodeId start, int len, Rng& rng) {
    WalkSample walk;
    walk.nodes.reserve(static_cast<std::size_t>(std::max(len, 0)));
    NodeId at = start;
    for (int h = 0; h < len; ++h) {
        const auto nb = g.neighbors(at);
        at = nb[uniform_index(rng, static_cast<std::uint32_t>(nb.size()))];
        walk.nodes.push_back(at);
    }
    return walk;
}

double walk_sum(const Graph& g, NodeId start, int len, std::span<const double> p, Rng& rng) {
    double sum = 0.0;
    NodeId at = start;
    for (int h = 0; h < len; ++h) {
        const auto nb = g.neighbors(at);
        at = nb[uniform_index(rng, static_cast<std::uint32_t>(nb.size()))];
        sum += p[at];
    }
    return sum;
}

double estimate_remainder(const Graph& g, std::span<const double> p, const WalkBudget& budget, Rng& rng,
                          SamplingAudit* audit, double rho) {
    if (budget.remaining_len <= 0 || budget.n_r == 0) return 0.0;
    const NodeId i = budget.edge.u;
    const NodeId j = budget.edge.v;
    const int len = budget.remaining_len;
    const double inv_degree = 1.0 / g.degree(i);

    BoundPair bi, bj;
    double x_limit = 0.0;
    if (audit) {
        const Extremes ex = extremes(p);
        // Without a candidate set, 2·max p still bounds every edge's pair sum.
        if (rho <= 0.0) rho = 2.0 * ex.max;
        bi = walk_bounds(g, i, p, ex, rho, len);
        bj = walk_bounds(g, j, p, ex, rho, len);
        x_limit = budget.chi * inv_degree;
    }

    long double total = 0.0L;
    for (std::uint64_t r = 0; r < budget.n_r; ++r) {
        const double si = walk_sum(g, i, len, p, rng);
        const double sj = walk_sum(g, j, len, p, rng);
        const double x = (si - sj) * inv_degree;
        total += x;
        if (audit) {
            audit->walks += 2;
            if (si < bi.lb - kAuditSlack || si > bi.ub + kAuditSlack) ++audit->walk_bound_violations;
            if (sj < bj.lb - kAuditSlack || sj > bj.ub + kAuditSlack) ++audit->walk_bound_violations;
            if (std::abs(x) > x_limit + kAuditSlack) ++audit->range_violations;
            audit->max_abs_x = std::max(audit->max_abs_x, std::abs(x));
        }
    }
    return static_cast<double>(total / static_cast<long double>(budget.n_r));
}

EdgeScores tgt_plus_all_edges(const Graph& g, const TruncationTable& half_table, const TgtPlusOptions& options,
                              TgtPlusStats* stats) {
    const std::size_t n = g.num_nodes();
    const double delta = options.delta > 0.0 ? options.delta : 1.0 / static_cast<double>(n);
    // Each edge has two sampled halves; δ/2 per half-budget keeps the union
    // over all 2m halves within δ.
    const SamplingParams params{options.epsilon, delta / 2.0, g.num_edges()};

    std::vector<double> half(g.num_slots(), 0.0);
    const std::size_t workers = worker_count(n, options.threads);
    std::vector<TraversalState> states;
    std::vector<TgtPlusStats> local(workers);
    states.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) states.emplace_back(g);

    parallel_for(n, options.threads, [&](std::size_t v, std::size_t worker) {
        TraversalState& state = states[worker];
        TgtPlusStats& st = local[worker];
        const auto source = static_cast<NodeId>(v);
        const std::size_t begin = g.offset(source);
        const std::size_t degree = g.degree(source);
        std::vector<int> tau(degree);
        for (std::size_t k = 0; k < degree; ++k) tau[k] = half_table.tau[g.edge_of_slot(begin + k)];

        state.reset(source);
        accumulate_hop(g, state, tau);
        while (!should_switch(g, state, tau, params)) {
            traverse_step(g, state);
            accumulate_hop(g, state, tau);
        }
        const int tilde = state.hop();
        st.traversal_hops += static_cast<std::uint64_t>(tilde);

        const auto p = state.values();
        const auto nb = g.neighbors(source);
        Extremes ex{};
        double rho = 0.0;
        bool prepared = false;
        std::optional<Rng> rng;
        for (std::size_t k = 0; k < degree; ++k) {
            double value = static_cast<double>(state.g_acc[k]);
            if (tau[k] > tilde) {
                if (!prepared) {
                    ex = {state.max_value(), state.min_value()};
                    if (options.gamma > 0) {
                        rho = rho_hat(g, p, state.dense() ? std::span<const NodeId>{} : state.support(), options.gamma);
                    }
                    rng.emplace(stream_rng(options.seed, source));
                    prepared = true;
                }
                WalkBudget budget;
                budget.edge = Edge{source, nb[k]};
                budget.remaining_len = tau[k] - tilde;
                budget.chi = cal_chi(g, source, nb[k], p, ex, rho, options.gamma, budget.remaining_len);
                budget.n_r = sample_count(budget.chi, degree, params.epsilon, params.delta, params.m);
                if (budget.n_r >= static_cast<std::uint64_t>(kMaxSamples)) ++st.capped_budgets;
                value += estimate_remainder(g, p, budget, *rng, options.audit ? &st.audit : nullptr, rho);
                ++st.sampled_edges;
                st.walk_pairs += budget.n_r;
                st.walk_steps += 2 * budget.n_r * static_cast<std::uint64_t>(budget.remaining_len);
            }
            half[begin + k] = value;
        }
    });

    EdgeScores out = EdgeScores::zeros(g);
    for (std::size_t slot = 0; slot < half.size(); ++slot) out.scores[g.edge_of_slot(slot)] += half[slot];
    if (stats) {
        *stats = {};
        for (const auto& st : local) {
            stats->traversal_hops += st.traversal_hops;
            stats->sampled_edges += st.sampled_edges;
            stats->walk_pairs += st.walk_pairs;
            stats->walk_steps += st.walk_steps;
            stats->capped_budgets += st.capped_budgets;
            stats->audit.walks += st.audit.walks;
            stats->audit.walk_bound_violations += st.audit.walk_bound_violations;
            stats->audit.range_violations += st.audit.range_violations;
            stats->audit.max_abs_x = std::max(stats->audit.max_abs_x, st.audit.max_abs_x);
        }
    }
    return out;
}

EdgeScores tgt_plus_all_edges(const Graph& g, const SpectralBasis& basis, const TgtPlusOptions& options,
                              TgtPlusStats* stats) {
    const TruncationTable table = compute_truncation_table(g, basis, options.epsilon / 2.0, options.threads);
    return tgt_plus_all_edges(g, table, options, stats);
}

}  // namespace spancent
