#include "spancent/graph.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <queue>
#include <stdexcept>
#include <string_view>

#include "spancent/errors.hpp"
#include "spancent/rng.hpp"

namespace spancent {

Graph Graph::from_edges(std::size_t n, std::vector<Edge> edges, std::vector<Label> labels) {
    Graph g;
    std::sort(edges.begin(), edges.end());
    if (std::adjacent_find(edges.begin(), edges.end()) != edges.end()) {
        throw std::invalid_argument("Graph::from_edges: duplicate edge");
    }
    for (const Edge& e : edges) {
        if (e.u >= e.v || e.v >= n) {
            throw std::invalid_argument("Graph::from_edges: edge not canonical or out of range");
        }
    }
    if (labels.empty()) {
        labels.resize(n);
        for (std::size_t i = 0; i < n; ++i) labels[i] = i;
    } else if (labels.size() != n) {
        throw std::invalid_argument("Graph::from_edges: label count mismatch");
    }

    g.degrees_.assign(n, 0);
    for (const Edge& e : edges) {
        ++g.degrees_[e.u];
        ++g.degrees_[e.v];
    }
    g.offsets_.assign(n + 1, 0);
    for (std::size_t i = 0; i < n; ++i) g.offsets_[i + 1] = g.offsets_[i] + g.degrees_[i];

    g.adjacency_.resize(2 * edges.size());
    g.slot_edge_.resize(2 * edges.size());
    std::vector<std::size_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
    // Edges sorted by (u, v): filling in this order leaves every list sorted,
    // because for node x the entries with x as v come from smaller u first and
    // entries with x as u come after (all larger than x).
    for (EdgeId id = 0; id < edges.size(); ++id) {
        const Edge& e = edges[id];
        g.adjacency_[cursor[e.v]] = e.u;
        g.slot_edge_[cursor[e.v]++] = id;
    }
    for (EdgeId id = 0; id < edges.size(); ++id) {
        const Edge& e = edges[id];
        g.adjacency_[cursor[e.u]] = e.v;
        g.slot_edge_[cursor[e.u]++] = id;
    }
    g.edges_ = std::move(edges);
    g.labels_ = std::move(labels);
    return g;
}

bool Graph::has_edge(NodeId a, NodeId b) const noexcept {
    if (degrees_[a] > degrees_[b]) std::swap(a, b);
    auto nb = neighbors(a);
    return std::binary_search(nb.begin(), nb.end(), b);
}

EdgeId Graph::edge_id(NodeId a, NodeId b) const noexcept {
    auto nb = neighbors(a);
    auto it = std::lower_bound(nb.begin(), nb.end(), b);
    return slot_edge_[offsets_[a] + static_cast<std::size_t>(it - nb.begin())];
}

namespace {

std::string_view trim(std::string_view s) {
    const auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; };
    while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
    while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
    return s;
}

std::string_view next_token(std::string_view& s) {
    std::size_t i = 0;
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t') ++j;
    auto token = s.substr(i, j - i);
    s.remove_prefix(j);
    return token;
}

Label parse_label(std::string_view token, std::size_t line) {
    Label value = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || ptr != token.data() + token.size()) {
        throw ParseError(line, "expected a non-negative integer label, got '" + std::string(token) + "'");
    }
    return value;
}

}  // namespace

Graph load_edge_list(std::istream& in, LoadReport* report) {
    LoadReport local;
    std::vector<std::pair<Label, Label>> raw;
    std::string buffer;
    std::size_t line_no = 0;
    while (std::getline(in, buffer)) {
        ++line_no;
        std::string_view line = trim(buffer);
        if (line.empty() || line.front() == '#') continue;
        std::string_view rest = line;
        auto a = next_token(rest);
        auto b = next_token(rest);
        if (b.empty() || !trim(rest).empty()) {
            throw ParseError(line_no, "expected exactly two labels");
        }
        const Label la = parse_label(a, line_no);
        const Label lb = parse_label(b, line_no);
        ++local.data_lines;
        if (la == lb) {
            ++local.self_loops_dropped;
            continue;
        }
        raw.emplace_back(std::min(la, lb), std::max(la, lb));
    }
    if (raw.empty()) throw DataError("edge list contains no edges");

    std::sort(raw.begin(), raw.end());
    const auto before = raw.size();
    raw.erase(std::unique(raw.begin(), raw.end()), raw.end());
    local.duplicates_dropped = before - raw.size();

    std::vector<Label> labels;
    labels.reserve(2 * raw.size());
    for (const auto& [a, b] : raw) {
        labels.push_back(a);
        labels.push_back(b);
    }
    std::sort(labels.begin(), labels.end());
    labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
    if (labels.size() > std::numeric_limits<NodeId>::max()) throw DataError("too many nodes");

    const auto id_of = [&](Label l) {
        return static_cast<NodeId>(std::lower_bound(labels.begin(), labels.end(), l) - labels.begin());
    };
    std::vector<Edge> edges;
    edges.reserve(raw.size());
    for (const auto& [a, b] : raw) edges.push_back(Edge{id_of(a), id_of(b)});

    if (report) *report = local;
    const std::size_t n = labels.size();
    return Graph::from_edges(n, std::move(edges), std::move(labels));
}

Graph load_edge_list_file(const std::string& path, LoadReport* report) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open graph file '" + path + "'");
    return load_edge_list(in, report);
}

void write_edge_list(std::ostream& out, const Graph& g) {
    for (const Edge& e : g.edges()) out << g.label(e.u) << ' ' << g.label(e.v) << '\n';
}

void write_edge_list_file(const std::string& path, const Graph& g) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write graph file '" + path + "'");
    write_edge_list(out, g);
}

const char* to_string(ErgodicStatus status) noexcept {
    switch (status) {
        case ErgodicStatus::ok: return "ok";
        case ErgodicStatus::empty: return "empty graph";
        case ErgodicStatus::disconnected: return "graph is disconnected";
        case ErgodicStatus::bipartite: return "graph is bipartite";
    }
    return "unknown";
}

ErgodicStatus validate_ergodic(const Graph& g) {
    const std::size_t n = g.num_nodes();
    if (n == 0 || g.num_edges() == 0) return ErgodicStatus::empty;

    // BFS 2-coloring from node 0; an edge inside one color class is an odd cycle.
    std::vector<std::int8_t> color(n, -1);
    std::queue<NodeId> queue;
    color[0] = 0;
    queue.push(0);
    std::size_t reached = 1;
    bool odd_cycle = false;
    while (!queue.empty()) {
        const NodeId v = queue.front();
        queue.pop();
        for (NodeId w : g.neighbors(v)) {
            if (color[w] < 0) {
                color[w] = static_cast<std::int8_t>(1 - color[v]);
                ++reached;
                queue.push(w);
            } else if (color[w] == color[v]) {
                odd_cycle = true;
            }
        }
    }
    if (reached != n) return ErgodicStatus::disconnected;
    return odd_cycle ? ErgodicStatus::ok : ErgodicStatus::bipartite;
}

void require_ergodic(const Graph& g) {
    const auto status = validate_ergodic(g);
    if (status != ErgodicStatus::ok) {
        throw DataError(std::string("random walks are not ergodic: ") + to_string(status));
    }
}

bool is_connected(const Graph& g) {
    const auto status = validate_ergodic(g);
    return status == ErgodicStatus::ok || status == ErgodicStatus::bipartite;
}

Graph generate_erdos_renyi(std::size_t n, std::size_t m, std::uint64_t seed) {
    if (n < 2 && m > 0) throw std::invalid_argument("generate_erdos_renyi: need n >= 2");
    const std::uint64_t max_pairs = static_cast<std::uint64_t>(n) * (n - 1) / 2;
    if (m > max_pairs) throw std::invalid_argument("generate_erdos_renyi: m exceeds n(n-1)/2");
    if (n > std::numeric_limits<NodeId>::max()) throw std::invalid_argument("generate_erdos_renyi: n too large");

    Rng rng = stream_rng(seed, 0);
    const auto bound = static_cast<std::uint32_t>(n);
    const auto draw = [&]() -> std::uint64_t {
        for (;;) {
            const std::uint32_t a = uniform_index(rng, bound);
            const std::uint32_t b = uniform_index(rng, bound);
            if (a == b) continue;
            const Edge e = canonical(a, b);
            return static_cast<std::uint64_t>(e.u) * n + e.v;
        }
    };

    // Dense requests sample the complement so rejection stays cheap.
    const bool complement = m > max_pairs / 2;
    const std::size_t target = complement ? static_cast<std::size_t>(max_pairs - m) : m;

    // Draw with replacement, deduplicate, top up. The procedure commutes with
    // any relabeling of the pair universe, so the final set is a uniform
    // `target`-subset.
    std::vector<std::uint64_t> keys;
    keys.reserve(target);
    while (keys.size() < target) {
        const std::size_t missing = target - keys.size();
        for (std::size_t i = 0; i < missing; ++i) keys.push_back(draw());
        std::sort(keys.begin(), keys.end());
        keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
    }

    std::vector<Edge> edges;
    edges.reserve(m);
    const auto decode = [n](std::uint64_t key) {
        return Edge{static_cast<NodeId>(key / n), static_cast<NodeId>(key % n)};
    };
    if (!complement) {
        for (auto key : keys) edges.push_back(decode(key));
    } else {
        std::size_t k = 0;
        for (NodeId u = 0; u < n; ++u) {
            for (NodeId v = u + 1; v < n; ++v) {
                const std::uint64_t key = static_cast<std::uint64_t>(u) * n + v;
                if (k < keys.size() && keys[k] == key) {
                    ++k;
                    continue;
                }
                edges.push_back(Edge{u, v});
            }
        }
    }
    return Graph::from_edges(n, std::move(edges));
}

Graph generate_ergodic_erdos_renyi(std::size_t n, std::size_t m, std::uint64_t seed, int max_attempts) {
    for (int attempt = 0; attempt < max_attempts; ++attempt) {
        Graph g = generate_erdos_renyi(n, m, seed + static_cast<std::uint64_t>(attempt));
        if (validate_ergodic(g) == ErgodicStatus::ok) return g;
    }
    throw DataError("no ergodic G(n, m) sample within the retry budget");
}

}  // namespace spancent
