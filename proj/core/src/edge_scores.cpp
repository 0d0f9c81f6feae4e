#include "spancent/edge_scores.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <string_view>
#include <tuple>

#include "spancent/errors.hpp"

namespace spancent {

EdgeScores EdgeScores::zeros(const Graph& g) {
    EdgeScores s;
    s.edges.assign(g.edges().begin(), g.edges().end());
    s.scores.assign(g.num_edges(), 0.0);
    return s;
}

void write_scores_tsv(std::ostream& out, const Graph& g, const EdgeScores& scores) {
    char buffer[64];
    for (std::size_t e = 0; e < scores.size(); ++e) {
        const Edge& edge = scores.edges[e];
        std::snprintf(buffer, sizeof buffer, "%.12g", scores.scores[e]);
        out << g.label(edge.u) << '\t' << g.label(edge.v) << '\t' << buffer << '\n';
    }
}

void write_scores_tsv_file(const std::string& path, const Graph& g, const EdgeScores& scores) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write result file '" + path + "'");
    write_scores_tsv(out, g, scores);
}

std::vector<LabeledScore> read_scores_tsv(std::istream& in) {
    std::vector<LabeledScore> rows;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto first = line.find('\t');
        const auto second = first == std::string::npos ? first : line.find('\t', first + 1);
        if (second == std::string::npos) throw ParseError(line_no, "expected u<TAB>v<TAB>score");
        LabeledScore row{};
        const char* begin = line.data();
        const auto parse_label = [&](std::size_t from, std::size_t to, Label& out) {
            auto [ptr, ec] = std::from_chars(begin + from, begin + to, out);
            if (ec != std::errc{} || ptr != begin + to) throw ParseError(line_no, "bad label");
        };
        parse_label(0, first, row.u);
        parse_label(first + 1, second, row.v);
        auto [ptr, ec] = std::from_chars(begin + second + 1, begin + line.size(), row.score);
        if (ec != std::errc{} || ptr != begin + line.size()) throw ParseError(line_no, "bad score");
        rows.push_back(row);
    }
    return rows;
}

std::vector<LabeledScore> read_scores_tsv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open result file '" + path + "'");
    return read_scores_tsv(in);
}

ErrorReport compare_scores(std::vector<LabeledScore> a, std::vector<LabeledScore> b) {
    const auto key_less = [](const LabeledScore& x, const LabeledScore& y) {
        return std::tie(x.u, x.v) < std::tie(y.u, y.v);
    };
    std::stable_sort(a.begin(), a.end(), key_less);
    std::stable_sort(b.begin(), b.end(), key_less);

    const std::size_t common = std::min(a.size(), b.size());
    ErrorReport report;
    double total = 0.0;
    for (std::size_t i = 0; i <= common; ++i) {
        if (i == common) {
            if (a.size() == b.size()) break;
            const auto& extra = a.size() > b.size() ? a[i] : b[i];
            throw DataError("edge sets differ at (" + std::to_string(extra.u) + ", " +
                            std::to_string(extra.v) + ")");
        }
        if (a[i].u != b[i].u || a[i].v != b[i].v) {
            const auto& first = key_less(a[i], b[i]) ? a[i] : b[i];
            throw DataError("edge sets differ at (" + std::to_string(first.u) + ", " +
                            std::to_string(first.v) + ")");
        }
        const double err = std::abs(a[i].score - b[i].score);
        total += err;
        report.max_abs_error = std::max(report.max_abs_error, err);
    }
    report.edges = common;
    report.mean_abs_error = common ? total / static_cast<double>(common) : 0.0;
    return report;
}

ErrorReport compare_scores(const EdgeScores& a, const EdgeScores& b) {
    if (a.edges != b.edges) throw DataError("score vectors cover different edge sets");
    ErrorReport report;
    double total = 0.0;
    for (std::size_t e = 0; e < a.size(); ++e) {
        const double err = std::abs(a.scores[e] - b.scores[e]);
        total += err;
        report.max_abs_error = std::max(report.max_abs_error, err);
    }
    report.edges = a.size();
    report.mean_abs_error = a.size() ? total / static_cast<double>(a.size()) : 0.0;
    return report;
}

}  // namespace spancent
