#include "commands.hpp"

#include <charconv>
#include <chrono>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <stdexcept>

#include "spancent/baselines.hpp"
#include "spancent/errors.hpp"
#include "spancent/exact.hpp"
#include "spancent/tgt_plus.hpp"
#include "spancent/traversal.hpp"
#include "spancent/truncation.hpp"

namespace spancent::cli {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::vector<LabeledScore> labeled(const Graph& g, const EdgeScores& s) {
    std::vector<LabeledScore> out;
    out.reserve(s.size());
    for (std::size_t e = 0; e < s.size(); ++e) out.push_back({g.label(s.edges[e].u), g.label(s.edges[e].v), s.scores[e]});
    return out;
}

bool randomized(Algo a) {
    return a == Algo::tgtplus || a == Algo::montecarlo || a == Algo::stedge;
}

template <typename T>
T parse_number(std::string_view text, const std::string& spec) {
    T value{};
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size())
        throw std::invalid_argument("bad graph spec '" + spec + "'");
    return value;
}

}  // namespace

const char* to_string(Algo algo) noexcept {
    switch (algo) {
        case Algo::tgt: return "tgt";
        case Algo::tgtplus: return "tgtplus";
        case Algo::montecarlo: return "montecarlo";
        case Algo::stedge: return "stedge";
        case Algo::exact_lpinv: return "exact-lpinv";
        case Algo::exact_power: return "exact-power";
    }
    return "?";
}

Algo parse_algo(const std::string& name) {
    for (Algo a : {Algo::tgt, Algo::tgtplus, Algo::montecarlo, Algo::stedge, Algo::exact_lpinv, Algo::exact_power})
        if (name == to_string(a)) return a;
    throw std::invalid_argument("unknown algorithm '" + name + "'");
}

bool needs_spectral(Algo algo) noexcept {
    return algo == Algo::tgt || algo == Algo::tgtplus || algo == Algo::montecarlo;
}

std::size_t resolve_omega(int requested, std::size_t n, std::ostream& warn) {
    if (requested < 0 || requested == 1) throw std::invalid_argument("--omega must be at least 2");
    if (requested == 0) return std::min<std::size_t>(128, n);
    const auto omega = static_cast<std::size_t>(requested);
    if (omega > n) {
        warn << "warning: omega " << omega << " exceeds n = " << n << "; using " << n << "\n";
        return n;
    }
    return omega;
}

SpectralBasis obtain_basis(const Graph& g, const std::string& path, std::size_t omega) {
    if (path.empty()) return compute_spectral_basis(g, omega);
    SpectralBasis basis = read_spectral_cache_file(path);
    if (basis.n != g.num_nodes() || basis.m != g.num_edges())
        throw DataError("spectral cache '" + path + "' does not match the graph (n or m differ)");
    return basis;
}

EdgeScores run_algorithm(const Graph& g, const SpectralBasis* basis, const RunConfig& c) {
    if (needs_spectral(c.algo) && basis == nullptr) throw std::invalid_argument("algorithm needs a spectral basis");
    switch (c.algo) {
        case Algo::tgt:
            return tgt_all_edges(g, *basis, c.epsilon, c.threads);
        case Algo::tgtplus: {
            TgtPlusOptions o;
            o.epsilon = c.epsilon;
            o.delta = c.delta;
            o.gamma = c.gamma;
            o.seed = c.seed;
            o.threads = c.threads;
            return tgt_plus_all_edges(g, *basis, o);
        }
        case Algo::montecarlo: {
            MonteCarloOptions o;
            o.epsilon = c.epsilon;
            o.delta = c.delta;
            o.seed = c.seed;
            o.threads = c.threads;
            return montecarlo_all_edges(g, *basis, o);
        }
        case Algo::stedge: {
            StEdgeOptions o;
            o.epsilon = c.epsilon;
            o.delta = c.delta;
            o.seed = c.seed;
            o.threads = c.threads;
            return st_edge_all_edges(g, o);
        }
        case Algo::exact_lpinv:
            return exact_sc_pseudoinverse(g);
        case Algo::exact_power: {
            PowerOracleOptions o;
            o.tail_tol = c.tail_tol;
            o.tau_max = c.tau_max;
            return exact_sc_power(g, o);
        }
    }
    throw std::logic_error("unreachable");
}

int cmd_compute(const RunConfig& c, std::ostream& out, std::ostream& err) {
    if (!(c.epsilon > 0.0 && c.epsilon < 1.0)) throw std::invalid_argument("--epsilon must lie in (0, 1)");
    if (c.delta < 0.0 || c.delta >= 1.0) throw std::invalid_argument("--delta must lie in (0, 1)");
    if (c.gamma < 0) throw std::invalid_argument("--gamma must be non-negative");
    const Graph g = load_edge_list_file(c.graph);
    if (c.algo != Algo::exact_lpinv && c.algo != Algo::stedge) require_ergodic(g);

    std::optional<SpectralBasis> basis;
    if (needs_spectral(c.algo)) {
        const auto start = Clock::now();
        basis = obtain_basis(g, c.spectral, resolve_omega(c.omega, g.num_nodes(), err));
        if (c.spectral.empty()) err << "spectral preprocessing " << seconds_since(start) << " s\n";
    }

    const auto start = Clock::now();
    const EdgeScores scores = run_algorithm(g, basis ? &*basis : nullptr, c);
    const double elapsed = seconds_since(start);

    if (c.out.empty()) {
        write_scores_tsv(out, g, scores);
        err << "time " << to_string(c.algo) << " " << elapsed << " s\n";
    } else {
        write_scores_tsv_file(c.out, g, scores);
        out << "time " << to_string(c.algo) << " " << elapsed << " s\n";
    }
    return 0;
}

int cmd_eval(const std::string& a, const std::string& b, std::ostream& out) {
    const ErrorReport r = compare_scores(read_scores_tsv_file(a), read_scores_tsv_file(b));
    out << std::setprecision(12);
    out << "edges " << r.edges << "\n";
    out << "mean_abs_error " << r.mean_abs_error << "\n";
    out << "max_abs_error " << r.max_abs_error << "\n";
    return 0;
}

int cmd_spectral(const std::string& graph, int omega, const std::string& path, std::ostream& out,
                 std::ostream& err) {
    const Graph g = load_edge_list_file(graph);
    const std::size_t w = resolve_omega(omega, g.num_nodes(), err);
    const auto start = Clock::now();
    const SpectralBasis basis = compute_spectral_basis(g, w);
    const double elapsed = seconds_since(start);
    write_spectral_cache_file(path, basis);
    out << "omega " << w << "\n";
    out << "lambda2 " << std::setprecision(12) << basis.eigenvalues[1] << "\n";
    out << "preprocessing " << elapsed << " s\n";
    return 0;
}

int cmd_generate(std::size_t n, std::size_t m, std::uint64_t seed, const std::string& path, std::ostream& out) {
    const Graph g = generate_ergodic_erdos_renyi(n, m, seed);
    write_edge_list_file(path, g);
    out << "nodes " << g.num_nodes() << " edges " << g.num_edges() << "\n";
    return 0;
}

int cmd_tau(const RunConfig& c, std::ostream& out, std::ostream& err) {
    if (!(c.epsilon > 0.0 && c.epsilon < 1.0)) throw std::invalid_argument("--epsilon must lie in (0, 1)");
    const Graph g = load_edge_list_file(c.graph);
    require_ergodic(g);
    const SpectralBasis basis = obtain_basis(g, c.spectral, resolve_omega(c.omega, g.num_nodes(), err));
    const TruncationTable table = compute_truncation_table(g, basis, c.epsilon, c.threads);
    if (!c.out.empty()) {
        std::ofstream file(c.out);
        if (!file) throw DataError("cannot write '" + c.out + "'");
        for (std::size_t e = 0; e < table.tau.size(); ++e) {
            const Edge& edge = g.edge(static_cast<EdgeId>(e));
            file << g.label(edge.u) << '\t' << g.label(edge.v) << '\t' << table.tau[e] << '\n';
        }
    }
    out << std::setprecision(6);
    out << "omega " << basis.omega() << "\n";
    out << "mean_tau " << table.mean_tau() << "\n";
    out << "max_tau " << table.max_tau() << "\n";
    out << "peng_tau " << table.peng_tau << "\n";
    return 0;
}

Graph load_graph_spec(const std::string& spec) {
    if (spec.rfind("er:", 0) != 0) return load_edge_list_file(spec);
    std::vector<std::string_view> parts;
    std::string_view rest(spec);
    rest.remove_prefix(3);
    for (;;) {
        const auto colon = rest.find(':');
        parts.push_back(rest.substr(0, colon));
        if (colon == std::string_view::npos) break;
        rest.remove_prefix(colon + 1);
    }
    if (parts.size() != 3) throw std::invalid_argument("graph spec must be er:N:M:SEED, got '" + spec + "'");
    return generate_ergodic_erdos_renyi(parse_number<std::size_t>(parts[0], spec),
                                        parse_number<std::size_t>(parts[1], spec),
                                        parse_number<std::uint64_t>(parts[2], spec));
}

int cmd_bench(const BenchSpec& spec, std::ostream& out, std::ostream& err) {
    if (!spec.reference.empty() && spec.graphs.size() != 1)
        throw std::invalid_argument("--reference needs exactly one graph");
    out << "graph\talgo\tepsilon\tomega\tgamma\tseed\tseconds\tmean_abs_error\tstatus\n";
    const auto row = [&](const std::string& graph, Algo algo, double eps, const std::string& omega,
                         const std::string& gamma, const std::string& seed, double seconds, double mae,
                         const std::string& status) {
        out << graph << '\t' << to_string(algo) << '\t';
        if (eps > 0) out << eps; else out << '-';
        out << '\t' << omega << '\t' << gamma << '\t' << seed
            << '\t';
        if (seconds >= 0) out << std::setprecision(6) << seconds; else out << '-';
        out << '\t';
        if (mae >= 0) out << std::setprecision(6) << mae; else out << '-';
        out << '\t' << status << '\n' << std::flush;
    };

    for (const std::string& graph_spec : spec.graphs) {
        Graph g;
        try {
            g = load_graph_spec(graph_spec);
            require_ergodic(g);
        } catch (const std::exception& e) {
            for (Algo a : spec.algos) row(graph_spec, a, 0, "-", "-", "-", -1, -1, std::string("error: ") + e.what());
            continue;
        }

        std::optional<std::vector<LabeledScore>> reference;
        try {
            if (!spec.reference.empty()) {
                reference = read_scores_tsv_file(spec.reference);
            } else if (g.num_nodes() <= spec.exact_limit) {
                reference = labeled(g, exact_sc_pseudoinverse(g));
            }
        } catch (const std::exception& e) {
            err << "warning: no reference for " << graph_spec << ": " << e.what() << "\n";
        }

        std::map<std::size_t, std::optional<SpectralBasis>> bases;
        std::map<std::size_t, std::string> basis_errors;
        const auto basis_for = [&](std::size_t omega) -> const SpectralBasis* {
            auto [it, fresh] = bases.try_emplace(omega);
            if (fresh) {
                try {
                    it->second = compute_spectral_basis(g, omega);
                } catch (const std::exception& e) {
                    basis_errors[omega] = e.what();
                }
            }
            return it->second ? &*it->second : nullptr;
        };

        for (Algo algo : spec.algos) {
            const std::vector<int> omegas = needs_spectral(algo) ? spec.omegas : std::vector<int>{-1};
            const std::vector<int> gammas = algo == Algo::tgtplus ? spec.gammas : std::vector<int>{-1};
            const std::vector<std::uint64_t> seeds = randomized(algo) ? spec.seeds : std::vector<std::uint64_t>{0};
            const std::vector<double> epsilons =
                algo == Algo::exact_lpinv || algo == Algo::exact_power ? std::vector<double>{0.0} : spec.epsilons;
            for (double eps : epsilons)
                for (int omega_req : omegas)
                    for (int gamma : gammas)
                        for (std::uint64_t seed : seeds) {
                            const std::string omega_col =
                                omega_req < 0 ? "-" : std::to_string(resolve_omega(omega_req, g.num_nodes(), err));
                            const std::string gamma_col = gamma < 0 ? "-" : std::to_string(gamma);
                            const std::string seed_col = randomized(algo) ? std::to_string(seed) : "-";
                            try {
                                RunConfig c;
                                c.algo = algo;
                                c.epsilon = eps > 0 ? eps : 0.01;
                                c.delta = spec.delta;
                                c.gamma = std::max(gamma, 0);
                                c.seed = seed;
                                c.threads = spec.threads;
                                const SpectralBasis* basis = nullptr;
                                if (omega_req >= 0) {
                                    const std::size_t w = resolve_omega(omega_req, g.num_nodes(), err);
                                    basis = basis_for(w);
                                    if (basis == nullptr) throw NumericalError(basis_errors[w], 0.0);
                                }
                                const auto start = Clock::now();
                                const EdgeScores scores = run_algorithm(g, basis, c);
                                const double elapsed = seconds_since(start);
                                double mae = -1;
                                if (reference) mae = compare_scores(labeled(g, scores), *reference).mean_abs_error;
                                row(graph_spec, algo, eps, omega_col, gamma_col, seed_col, elapsed, mae, "ok");
                            } catch (const std::exception& e) {
                                row(graph_spec, algo, eps, omega_col, gamma_col, seed_col, -1, -1,
                                    std::string("error: ") + e.what());
                            }
                        }
        }
    }
    return 0;
}

}  // namespace spancent::cli
