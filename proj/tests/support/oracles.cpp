#include "oracles.hpp"

#include <algorithm>

namespace spancent::oracle {

Graph from_pairs(std::size_t n, std::vector<std::pair<NodeId, NodeId>> pairs) {
    std::vector<Edge> edges;
    for (auto [a, b] : pairs) edges.push_back(canonical(a, b));
    return Graph::from_edges(n, std::move(edges));
}

Graph complete(std::size_t n) {
    std::vector<std::pair<NodeId, NodeId>> pairs;
    for (NodeId a = 0; a < n; ++a)
        for (NodeId b = a + 1; b < n; ++b) pairs.emplace_back(a, b);
    return from_pairs(n, pairs);
}

Graph path(std::size_t n) {
    std::vector<std::pair<NodeId, NodeId>> pairs;
    for (NodeId a = 0; a + 1 < n; ++a) pairs.emplace_back(a, a + 1);
    return from_pairs(n, pairs);
}

Graph cycle(std::size_t n) {
    std::vector<std::pair<NodeId, NodeId>> pairs;
    for (NodeId a = 0; a < n; ++a) pairs.emplace_back(a, static_cast<NodeId>((a + 1) % n));
    return from_pairs(n, pairs);
}

Graph two_triangles_bridge() {
    return from_pairs(6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}, {2, 3}});
}

Graph lollipop(std::size_t clique, std::size_t tail) {
    std::vector<std::pair<NodeId, NodeId>> pairs;
    for (NodeId a = 0; a < clique; ++a)
        for (NodeId b = a + 1; b < clique; ++b) pairs.emplace_back(a, b);
    for (std::size_t k = 0; k < tail; ++k) {
        pairs.emplace_back(static_cast<NodeId>(clique - 1 + k), static_cast<NodeId>(clique + k));
    }
    return from_pairs(clique + tail, pairs);
}

std::vector<Graph> er_zoo(std::size_t count, std::size_t n_min, std::size_t n_max, std::uint64_t seed) {
    std::vector<Graph> out;
    std::uint64_t s = seed;
    while (out.size() < count) {
        const std::size_t n = n_min + (s * 2654435761u) % (n_max - n_min + 1);
        // Mean degree between 3 and 8.
        const std::size_t mean_degree = 3 + (s % 6);
        const std::size_t m = std::min(n * mean_degree / 2, n * (n - 1) / 2);
        Graph g = generate_erdos_renyi(n, m, s);
        ++s;
        if (validate_ergodic(g) == ErgodicStatus::ok) out.push_back(std::move(g));
    }
    return out;
}

std::vector<NamedGraph> standard_zoo(std::size_t random_count, std::size_t n_max, std::uint64_t seed) {
    std::vector<NamedGraph> zoo;
    zoo.push_back({"K3", complete(3)});
    zoo.push_back({"K4", complete(4)});
    zoo.push_back({"two-triangles", two_triangles_bridge()});
    zoo.push_back({"C7", cycle(7)});
    zoo.push_back({"lollipop", lollipop(5, 6)});
    auto random = er_zoo(random_count, 8, n_max, seed);
    for (std::size_t k = 0; k < random.size(); ++k) {
        zoo.push_back({"er" + std::to_string(k), std::move(random[k])});
    }
    return zoo;
}

Eigen::MatrixXd transition_matrix(const Graph& g) {
    const auto n = static_cast<Eigen::Index>(g.num_nodes());
    Eigen::MatrixXd p = Eigen::MatrixXd::Zero(n, n);
    for (const Edge& e : g.edges()) {
        p(e.u, e.v) = 1.0 / g.degree(e.u);
        p(e.v, e.u) = 1.0 / g.degree(e.v);
    }
    return p;
}

std::vector<Eigen::MatrixXd> transition_powers(const Graph& g, int max_hop) {
    const Eigen::MatrixXd p = transition_matrix(g);
    std::vector<Eigen::MatrixXd> out;
    out.push_back(Eigen::MatrixXd::Identity(p.rows(), p.cols()));
    for (int h = 1; h <= max_hop; ++h) out.push_back(out.back() * p);
    return out;
}

std::vector<double> resistance_svd(const Graph& g) {
    const auto n = static_cast<Eigen::Index>(g.num_nodes());
    Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(n, n);
    for (const Edge& e : g.edges()) {
        lap(e.u, e.v) -= 1.0;
        lap(e.v, e.u) -= 1.0;
        lap(e.u, e.u) += 1.0;
        lap(e.v, e.v) += 1.0;
    }
    // Jacobi is the most accurate; divide-and-conquer keeps larger graphs affordable.
    const auto pseudoinverse = [n](const auto& svd) {
        const auto& sigma = svd.singularValues();
        Eigen::VectorXd inv = Eigen::VectorXd::Zero(n);
        for (Eigen::Index k = 0; k < n; ++k) {
            if (sigma(k) > 1e-9 * sigma(0)) inv(k) = 1.0 / sigma(k);
        }
        return Eigen::MatrixXd(svd.matrixV() * inv.asDiagonal() * svd.matrixU().transpose());
    };
    const Eigen::MatrixXd pinv =
        n <= 200 ? pseudoinverse(Eigen::JacobiSVD<Eigen::MatrixXd>(lap, Eigen::ComputeFullU | Eigen::ComputeFullV))
                 : pseudoinverse(Eigen::BDCSVD<Eigen::MatrixXd>(lap, Eigen::ComputeFullU | Eigen::ComputeFullV));
    std::vector<double> out;
    for (const Edge& e : g.edges()) out.push_back(pinv(e.u, e.u) + pinv(e.v, e.v) - 2.0 * pinv(e.u, e.v));
    return out;
}

double s_tau(const std::vector<Eigen::MatrixXd>& powers, const Graph& g, NodeId i, NodeId j, int tau) {
    const double di = g.degree(i);
    const double dj = g.degree(j);
    double total = 0.0;
    for (int h = 0; h <= tau; ++h) {
        const auto& p = powers.at(static_cast<std::size_t>(h));
        total += p(i, i) / di + p(j, j) / dj - p(i, j) / dj - p(j, i) / di;
    }
    return total;
}

double g_tau(const std::vector<Eigen::MatrixXd>& powers, const Graph& g, NodeId i, NodeId j, int tau) {
    double total = 0.0;
    for (int h = 0; h <= tau; ++h) {
        const auto& p = powers.at(static_cast<std::size_t>(h));
        total += (p(i, i) - p(j, i)) / g.degree(i);
    }
    return total;
}

double g_range(const std::vector<Eigen::MatrixXd>& powers, const Graph& g, NodeId i, NodeId j, int tilde, int tau) {
    const auto& base = powers.at(static_cast<std::size_t>(tilde));
    double total = 0.0;
    for (NodeId x = 0; x < g.num_nodes(); ++x) {
        double inner = 0.0;
        for (int h = 1; h <= tau - tilde; ++h) {
            const auto& p = powers.at(static_cast<std::size_t>(h));
            inner += p(i, x) - p(j, x);
        }
        total += base(x, i) / g.degree(i) * inner;
    }
    return total;
}

double brute_rho(const Graph& g, const std::vector<double>& p) {
    double best = 0.0;
    for (const Edge& e : g.edges()) best = std::max(best, p[e.u] + p[e.v]);
    return best;
}

std::vector<double> column(const std::vector<Eigen::MatrixXd>& powers, NodeId target, int hop) {
    const auto& p = powers.at(static_cast<std::size_t>(hop));
    std::vector<double> out(static_cast<std::size_t>(p.rows()));
    for (Eigen::Index x = 0; x < p.rows(); ++x) out[static_cast<std::size_t>(x)] = p(x, target);
    return out;
}

}  // namespace spancent::oracle
