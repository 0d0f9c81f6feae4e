#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace spancent {

using NodeId = std::uint32_t;
using EdgeId = std::uint32_t;
using Label = std::uint64_t;

/// Undirected edge in canonical form (u < v, internal ids).
struct Edge {
    NodeId u;
    NodeId v;

    friend bool operator==(const Edge&, const Edge&) = default;
    friend auto operator<=>(const Edge&, const Edge&) = default;
};

inline Edge canonical(NodeId a, NodeId b) noexcept {
    return a < b ? Edge{a, b} : Edge{b, a};
}

/// Immutable simple undirected graph in compressed adjacency form.
///
/// Internal ids are contiguous 0..n-1 and are assigned in ascending order of
/// the original labels, so the canonical internal order and the label order
/// agree. Neighbor lists are sorted ascending. Every adjacency slot (position
/// in the compressed neighbor array) maps back to the id of its undirected
/// edge, which lets per-direction quantities be merged per edge.
class Graph {
public:
    Graph() = default;

    /// Builds from canonical, deduplicated, loop-free edges over 0..n-1.
    /// `labels` maps internal id to original label; empty means identity.
    static Graph from_edges(std::size_t n, std::vector<Edge> edges, std::vector<Label> labels = {});

    std::size_t num_nodes() const noexcept { return degrees_.size(); }
    std::size_t num_edges() const noexcept { return edges_.size(); }

    std::uint32_t degree(NodeId v) const noexcept { return degrees_[v]; }
    std::span<const std::uint32_t> degrees() const noexcept { return degrees_; }

    std::span<const NodeId> neighbors(NodeId v) const noexcept {
        return {adjacency_.data() + offsets_[v], adjacency_.data() + offsets_[v + 1]};
    }

    /// First adjacency slot of `v`; slots of v are offset(v) .. offset(v)+degree(v)-1.
    std::size_t offset(NodeId v) const noexcept { return offsets_[v]; }
    std::size_t num_slots() const noexcept { return adjacency_.size(); }
    EdgeId edge_of_slot(std::size_t slot) const noexcept { return slot_edge_[slot]; }

    /// Canonical edges sorted by (u, v).
    std::span<const Edge> edges() const noexcept { return edges_; }
    const Edge& edge(EdgeId e) const noexcept { return edges_[e]; }

    Label label(NodeId v) const noexcept { return labels_[v]; }
    std::span<const Label> labels() const noexcept { return labels_; }

    /// Binary search in the sorted neighbor list of the lower-degree endpoint.
    bool has_edge(NodeId a, NodeId b) const noexcept;

    /// Id of edge {a, b}; the edge must exist.
    EdgeId edge_id(NodeId a, NodeId b) const noexcept;

    friend bool operator==(const Graph&, const Graph&) = default;

private:
    std::vector<std::size_t> offsets_;
    std::vector<NodeId> adjacency_;
    std::vector<EdgeId> slot_edge_;
    std::vector<std::uint32_t> degrees_;
    std::vector<Edge> edges_;
    std::vector<Label> labels_;
};

struct LoadReport {
    std::size_t data_lines = 0;
    std::size_t self_loops_dropped = 0;
    std::size_t duplicates_dropped = 0;
};

/// Parses a whitespace-separated edge list. Lines starting with '#' are
/// comments, blank lines are skipped, LF and CRLF endings are accepted.
/// Throws ParseError on malformed lines and DataError on an empty graph.
Graph load_edge_list(std::istream& in, LoadReport* report = nullptr);
Graph load_edge_list_file(const std::string& path, LoadReport* report = nullptr);

/// Writes "u v" lines with original labels in canonical edge order.
void write_edge_list(std::ostream& out, const Graph& g);
void write_edge_list_file(const std::string& path, const Graph& g);

enum class ErgodicStatus { ok, empty, disconnected, bipartite };

const char* to_string(ErgodicStatus status) noexcept;

/// Simple random walks on g are ergodic iff g is connected and not bipartite.
ErgodicStatus validate_ergodic(const Graph& g);

/// Throws DataError naming the failed property unless g is ergodic.
void require_ergodic(const Graph& g);
bool is_connected(const Graph& g);

/// Uniform G(n, m): m distinct node pairs drawn uniformly. Bit-reproducible
/// for a fixed seed. Throws std::invalid_argument if m > n(n-1)/2.
Graph generate_erdos_renyi(std::size_t n, std::size_t m, std::uint64_t seed);

/// Retries generate_erdos_renyi with seed, seed+1, ... until the result is
/// ergodic. Throws DataError after `max_attempts` failures.
Graph generate_ergodic_erdos_renyi(std::size_t n, std::size_t m, std::uint64_t seed,
                                   int max_attempts = 64);

}  // namespace spancent
