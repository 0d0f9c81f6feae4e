#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "spancent/edge_scores.hpp"
#include "spancent/graph.hpp"
#include "spancent/spectral.hpp"

namespace spancent::cli {

enum class Algo { tgt, tgtplus, montecarlo, stedge, exact_lpinv, exact_power };

const char* to_string(Algo algo) noexcept;
Algo parse_algo(const std::string& name);
bool needs_spectral(Algo algo) noexcept;

struct RunConfig {
    Algo algo = Algo::tgtplus;
    double epsilon = 0.01;
    double delta = 0.0;  // 0 selects 1/n
    int gamma = 10;
    int omega = 0;  // 0 selects min(128, n)
    std::uint64_t seed = 0;
    int threads = 1;
    double tail_tol = 1e-12;
    int tau_max = 1000;
    std::string graph;
    std::string spectral;
    std::string out;
};

/// Resolves ω against n: 0 means min(128, n); larger than n is clamped
/// with a warning on `warn`.
std::size_t resolve_omega(int requested, std::size_t n, std::ostream& warn);

/// Loads a cache when `path` is set (it must exist and match g), otherwise
/// computes a basis of size ω.
SpectralBasis obtain_basis(const Graph& g, const std::string& path, std::size_t omega);

/// Runs one algorithm on an already loaded graph. `basis` is required for
/// algorithms that need it.
EdgeScores run_algorithm(const Graph& g, const SpectralBasis* basis, const RunConfig& config);

int cmd_compute(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_eval(const std::string& a, const std::string& b, std::ostream& out);
int cmd_spectral(const std::string& graph, int omega, const std::string& path, std::ostream& out,
                 std::ostream& err);
int cmd_generate(std::size_t n, std::size_t m, std::uint64_t seed, const std::string& path, std::ostream& out);
int cmd_tau(const RunConfig& config, std::ostream& out, std::ostream& err);

struct BenchSpec {
    std::vector<std::string> graphs;  // edge-list path or er:N:M:SEED
    std::vector<Algo> algos;
    std::vector<double> epsilons;
    std::vector<int> omegas;
    std::vector<int> gammas;
    std::vector<std::uint64_t> seeds;
    int threads = 1;
    double delta = 0.0;
    /// Exact result file to score against (single graph only).
    std::string reference;
    /// Compute exact-lpinv in process for every graph up to this many nodes.
    std::size_t exact_limit = 0;
};

Graph load_graph_spec(const std::string& spec);

/// Prints a header and one TSV row per cell; failed cells carry their status.
int cmd_bench(const BenchSpec& spec, std::ostream& out, std::ostream& err);

}  // namespace spancent::cli
