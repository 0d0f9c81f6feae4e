#include "spancent/traversal.hpp"

#include <algorithm>
#include <atomic>

#include "spancent/parallel.hpp"

namespace spancent {

TraversalState::TraversalState(const Graph& g)
    : graph_(&g),
      current_(g.num_nodes(), 0.0),
      next_(g.num_nodes(), 0.0),
      stamp_(g.num_nodes(), 0) {
    support_.reserve(64);
    next_support_.reserve(64);
}

void TraversalState::reset(NodeId source) {
    if (dense_) {
        std::fill(current_.begin(), current_.end(), 0.0);
        std::fill(next_.begin(), next_.end(), 0.0);
        dense_ = false;
    } else {
        for (NodeId x : support_) current_[x] = 0.0;
    }
    support_.clear();
    support_.push_back(source);
    current_[source] = 1.0;
    source_ = source;
    hop_ = 0;
    support_size_ = 1;
    frontier_degree_sum_ = graph_->degree(source);
    max_value_ = 1.0;
    g_acc.assign(graph_->degree(source), 0.0L);
}

double TraversalState::min_value() const {
    if (support_size_ < current_.size()) return 0.0;
    return *std::min_element(current_.begin(), current_.end());
}

void traverse_step(const Graph& g, TraversalState& s) {
    const std::size_t n = g.num_nodes();
    double max_value = 0.0;
    std::size_t support = 0;
    std::uint64_t frontier = 0;

    if (s.dense_) {
        for (NodeId x = 0; x < n; ++x) {
            double sum = 0.0;
            for (NodeId j : g.neighbors(x)) sum += s.current_[j];
            const double value = sum / g.degree(x);
            s.next_[x] = value;
            if (value > 0.0) {
                ++support;
                frontier += g.degree(x);
                max_value = std::max(max_value, value);
            }
        }
        std::swap(s.current_, s.next_);
    } else {
        if (++s.epoch_ == 0) {
            std::fill(s.stamp_.begin(), s.stamp_.end(), 0);
            s.epoch_ = 1;
        }
        s.next_support_.clear();
        // Scatter raw sums, divide once per reached node.
        for (NodeId j : s.support_) {
            const double pj = s.current_[j];
            for (NodeId x : g.neighbors(j)) {
                if (s.stamp_[x] != s.epoch_) {
                    s.stamp_[x] = s.epoch_;
                    s.next_support_.push_back(x);
                }
                s.next_[x] += pj;
            }
        }
        for (NodeId j : s.support_) s.current_[j] = 0.0;
        for (NodeId x : s.next_support_) {
            const double value = s.next_[x] / g.degree(x);
            s.next_[x] = value;
            frontier += g.degree(x);
            max_value = std::max(max_value, value);
        }
        support = s.next_support_.size();
        std::swap(s.current_, s.next_);
        std::swap(s.support_, s.next_support_);
        if (4 * support >= n) s.dense_ = true;
    }

    ++s.hop_;
    s.support_size_ = support;
    s.frontier_degree_sum_ = frontier;
    s.max_value_ = max_value;
}

void accumulate_hop(const Graph& g, TraversalState& state, std::span<const int> limit) {
    const NodeId source = state.source();
    const auto nb = g.neighbors(source);
    const long double inv_degree = 1.0L / g.degree(source);
    const long double self = state.value(source);
    const int hop = state.hop();
    for (std::size_t k = 0; k < nb.size(); ++k) {
        if (!limit.empty() && limit[k] < hop) continue;
        state.g_acc[k] += (self - state.value(nb[k])) * inv_degree;
    }
}

std::vector<double> tgt_source(const Graph& g, NodeId source, int tau_p, TraversalState& state) {
    state.reset(source);
    accumulate_hop(g, state);
    for (int hop = 1; hop <= tau_p; ++hop) {
        traverse_step(g, state);
        accumulate_hop(g, state);
    }
    return {state.g_acc.begin(), state.g_acc.end()};
}

namespace {

int source_tau(const Graph& g, const TruncationTable& table, NodeId source) {
    int tau_p = 0;
    const std::size_t begin = g.offset(source);
    for (std::size_t k = 0; k < g.degree(source); ++k) {
        tau_p = std::max(tau_p, table.tau[g.edge_of_slot(begin + k)]);
    }
    return tau_p;
}

}  // namespace

std::vector<double> tgt_source(const Graph& g, const TruncationTable& table, NodeId source, TraversalState& state) {
    return tgt_source(g, source, source_tau(g, table, source), state);
}

EdgeScores tgt_all_edges(const Graph& g, const TruncationTable& table, int threads, TgtStats* stats) {
    const std::size_t n = g.num_nodes();
    // half[slot] = g(owner of slot, neighbor at slot).
    std::vector<double> half(g.num_slots(), 0.0);
    const std::size_t workers = worker_count(n, threads);
    std::vector<TraversalState> states;
    states.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) states.emplace_back(g);
    std::atomic<std::uint64_t> hops{0};
    std::atomic<std::uint64_t> visits{0};

    std::vector<int> tau_p(n);
    for (NodeId v = 0; v < n; ++v) tau_p[v] = source_tau(g, table, v);

    parallel_for(n, threads, [&](std::size_t v, std::size_t worker) {
        TraversalState& state = states[worker];
        const auto source = static_cast<NodeId>(v);
        // Both halves of an edge stop at the same odd length min(τ_p(i), τ_p(j)) >= τ_ij;
        // halves summed to different lengths are not a truncation of the series.
        const auto nb = g.neighbors(source);
        std::vector<int> limit(nb.size());
        for (std::size_t k = 0; k < nb.size(); ++k) limit[k] = std::min(tau_p[source], tau_p[nb[k]]);
        state.reset(source);
        accumulate_hop(g, state, limit);
        std::uint64_t local_visits = 0;
        for (int hop = 1; hop <= tau_p[source]; ++hop) {
            local_visits += state.dense() ? 2 * g.num_edges() : state.frontier_degree_sum();
            traverse_step(g, state);
            accumulate_hop(g, state, limit);
        }
        const std::size_t begin = g.offset(source);
        for (std::size_t k = 0; k < state.g_acc.size(); ++k) half[begin + k] = static_cast<double>(state.g_acc[k]);
        hops.fetch_add(static_cast<std::uint64_t>(tau_p[source]), std::memory_order_relaxed);
        visits.fetch_add(local_visits, std::memory_order_relaxed);
    });

    EdgeScores out = EdgeScores::zeros(g);
    for (std::size_t slot = 0; slot < half.size(); ++slot) out.scores[g.edge_of_slot(slot)] += half[slot];
    if (stats) {
        stats->hops = hops.load();
        stats->edge_visits = visits.load();
    }
    return out;
}

EdgeScores tgt_all_edges(const Graph& g, const SpectralBasis& basis, double epsilon, int threads, TgtStats* stats) {
    const TruncationTable table = compute_truncation_table(g, basis, epsilon, threads);
    return tgt_all_edges(g, table, threads, stats);
}

}  // namespace spancent
