#include "spancent/baselines.hpp"

#include <algorithm>
#include <cmath>

#include "spancent/parallel.hpp"

namespace spancent {

SpanningTree wilson_spanning_tree(const Graph& g, NodeId root, Rng& rng) {
    const std::size_t n = g.num_nodes();
    std::vector<char> in_tree(n, 0);
    std::vector<std::size_t> next_slot(n, 0);
    in_tree[root] = 1;
    SpanningTree tree;
    tree.edges.reserve(n > 0 ? n - 1 : 0);
    for (NodeId start = 0; start < n; ++start) {
        // Later visits overwrite next_slot, which erases loops implicitly.
        for (NodeId u = start; !in_tree[u];) {
            const auto degree = static_cast<std::uint32_t>(g.degree(u));
            next_slot[u] = g.offset(u) + uniform_index(rng, degree);
            u = g.neighbors(u)[next_slot[u] - g.offset(u)];
        }
        for (NodeId u = start; !in_tree[u];) {
            in_tree[u] = 1;
            tree.edges.push_back(g.edge_of_slot(next_slot[u]));
            u = g.neighbors(u)[next_slot[u] - g.offset(u)];
        }
    }
    std::sort(tree.edges.begin(), tree.edges.end());
    return tree;
}

bool is_spanning_tree(const Graph& g, const SpanningTree& tree) {
    const std::size_t n = g.num_nodes();
    if (tree.edges.size() + 1 != n) return false;
    std::vector<NodeId> parent(n);
    for (NodeId v = 0; v < n; ++v) parent[v] = v;
    const auto find = [&](NodeId v) {
        while (parent[v] != v) v = parent[v] = parent[parent[v]];
        return v;
    };
    for (EdgeId e : tree.edges) {
        if (e >= g.num_edges()) return false;
        const NodeId a = find(g.edge(e).u);
        const NodeId b = find(g.edge(e).v);
        if (a == b) return false;
        parent[a] = b;
    }
    return true;
}

std::uint64_t st_edge_tree_count(std::size_t m, double epsilon, double delta) {
    return static_cast<std::uint64_t>(
        std::ceil(std::log(2.0 * static_cast<double>(m) / delta) / (2.0 * epsilon * epsilon)));
}

EdgeScores st_edge_all_edges(const Graph& g, const StEdgeOptions& options) {
    const double delta = options.delta > 0.0 ? options.delta : 1.0 / static_cast<double>(g.num_nodes());
    const std::uint64_t trees =
        options.trees > 0 ? options.trees : st_edge_tree_count(g.num_edges(), options.epsilon, delta);
    const std::size_t workers = worker_count(trees, options.threads);
    std::vector<std::vector<std::uint64_t>> counts(workers, std::vector<std::uint64_t>(g.num_edges(), 0));
    parallel_for(trees, options.threads, [&](std::size_t t, std::size_t worker) {
        Rng rng = stream_rng(options.seed, t);
        const SpanningTree tree = wilson_spanning_tree(g, 0, rng);
        for (EdgeId e : tree.edges) ++counts[worker][e];
    });
    EdgeScores out = EdgeScores::zeros(g);
    for (std::size_t e = 0; e < g.num_edges(); ++e) {
        std::uint64_t total = 0;
        for (const auto& c : counts) total += c[e];
        out.scores[e] = static_cast<double>(total) / static_cast<double>(trees);
    }
    return out;
}

std::uint64_t montecarlo_walk_count(int tau, std::size_t d_i, std::size_t d_j, double epsilon, double delta,
                                    std::size_t m) {
    if (tau <= 0) return 0;
    const double range = tau * (1.0 / static_cast<double>(d_i) + 1.0 / static_cast<double>(d_j));
    return static_cast<std::uint64_t>(
        std::ceil(8.0 * range * range * std::log(4.0 * static_cast<double>(m) / delta) / (epsilon * epsilon)));
}

EdgeScores montecarlo_all_edges(const Graph& g, const TruncationTable& half_table, const MonteCarloOptions& options,
                                MonteCarloStats* stats) {
    const std::size_t n = g.num_nodes();
    const std::size_t m = g.num_edges();
    const double delta = options.delta > 0.0 ? options.delta : 1.0 / static_cast<double>(n);
    std::vector<double> half(g.num_slots(), 0.0);

    struct Scratch {
        std::vector<std::int64_t> position;  // slot index of x within N(source), or −1
        std::vector<std::uint64_t> self_visits;
        std::vector<std::uint64_t> hits;
        MonteCarloStats stats;
    };
    const std::size_t workers = worker_count(n, options.threads);
    std::vector<Scratch> scratch(workers);
    for (auto& s : scratch) s.position.assign(n, -1);

    parallel_for(n, options.threads, [&](std::size_t v, std::size_t worker) {
        Scratch& s = scratch[worker];
        const auto source = static_cast<NodeId>(v);
        const auto nb = g.neighbors(source);
        const std::size_t begin = g.offset(source);
        const std::size_t degree = nb.size();

        std::vector<int> tau(degree);
        int tau_p = 0;
        std::uint64_t walks = 0;
        for (std::size_t k = 0; k < degree; ++k) {
            tau[k] = half_table.tau[g.edge_of_slot(begin + k)];
            tau_p = std::max(tau_p, tau[k]);
            walks = std::max(walks, montecarlo_walk_count(tau[k], degree, g.degree(nb[k]), options.epsilon, delta, m));
            s.position[nb[k]] = static_cast<std::int64_t>(k);
        }
        s.self_visits.assign(static_cast<std::size_t>(tau_p) + 1, 0);
        s.hits.assign(degree, 0);

        Rng rng = stream_rng(options.seed, source);
        for (std::uint64_t w = 0; w < walks; ++w) {
            NodeId at = source;
            for (int hop = 1; hop <= tau_p; ++hop) {
                const auto out = g.neighbors(at);
                at = out[uniform_index(rng, static_cast<std::uint32_t>(out.size()))];
                if (at == source) {
                    ++s.self_visits[static_cast<std::size_t>(hop)];
                } else if (const auto k = s.position[at]; k >= 0 && hop <= tau[static_cast<std::size_t>(k)]) {
                    ++s.hits[static_cast<std::size_t>(k)];
                }
            }
        }
        s.stats.walks += walks;
        s.stats.walk_steps += walks * static_cast<std::uint64_t>(tau_p);

        // Prefix sums of self visits give Σ_{ℓ ≤ τ_ij} per neighbor.
        std::vector<std::uint64_t> prefix(s.self_visits.size(), 0);
        for (std::size_t h = 1; h < prefix.size(); ++h) prefix[h] = prefix[h - 1] + s.self_visits[h];
        const double inv_di = 1.0 / static_cast<double>(degree);
        for (std::size_t k = 0; k < degree; ++k) {
            double value = inv_di;
            if (walks > 0) {
                const double scale = 1.0 / static_cast<double>(walks);
                value += static_cast<double>(prefix[static_cast<std::size_t>(tau[k])]) * scale * inv_di;
                value -= static_cast<double>(s.hits[k]) * scale / static_cast<double>(g.degree(nb[k]));
            }
            half[begin + k] = value;
            s.position[nb[k]] = -1;
        }
    });

    EdgeScores out = EdgeScores::zeros(g);
    for (std::size_t slot = 0; slot < half.size(); ++slot) out.scores[g.edge_of_slot(slot)] += half[slot];
    if (stats) {
        *stats = {};
        for (const auto& s : scratch) {
            stats->walks += s.stats.walks;
            stats->walk_steps += s.stats.walk_steps;
        }
    }
    return out;
}

EdgeScores montecarlo_all_edges(const Graph& g, const SpectralBasis& basis, const MonteCarloOptions& options,
                                MonteCarloStats* stats) {
    const TruncationTable table = compute_truncation_table(g, basis, options.epsilon / 2.0, options.threads);
    return montecarlo_all_edges(g, table, options, stats);
}

}  // namespace spancent
