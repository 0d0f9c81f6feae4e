#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "spancent/graph.hpp"

namespace spancent {

/// One score per edge of a graph, indexed by EdgeId (canonical edge order).
struct EdgeScores {
    std::vector<Edge> edges;
    std::vector<double> scores;

    std::size_t size() const noexcept { return scores.size(); }

    static EdgeScores zeros(const Graph& g);
};

/// Result TSV: "u<TAB>v<TAB>score" with original labels, canonical order,
/// 12 significant digits, no header.
void write_scores_tsv(std::ostream& out, const Graph& g, const EdgeScores& scores);
void write_scores_tsv_file(const std::string& path, const Graph& g, const EdgeScores& scores);

struct LabeledScore {
    Label u;
    Label v;
    double score;
};

std::vector<LabeledScore> read_scores_tsv(std::istream& in);
std::vector<LabeledScore> read_scores_tsv_file(const std::string& path);

struct ErrorReport {
    std::size_t edges = 0;
    double mean_abs_error = 0.0;
    double max_abs_error = 0.0;
};

/// Compares two result sets over the same edge set. Throws DataError naming
/// the first divergent (u, v) key when the edge sets differ.
ErrorReport compare_scores(std::vector<LabeledScore> a, std::vector<LabeledScore> b);

/// In-memory comparison of two score vectors over the same graph.
ErrorReport compare_scores(const EdgeScores& a, const EdgeScores& b);

}  // namespace spancent
