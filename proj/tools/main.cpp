#include <iostream>

#include "CLI11.hpp"
#include "commands.hpp"
#include "spancent/errors.hpp"

using namespace spancent;

namespace {

constexpr int kUsage = 1;
constexpr int kData = 2;
constexpr int kNumerical = 3;

void add_run_flags(CLI::App* cmd, cli::RunConfig& c, std::string& algo) {
    cmd->add_option("--graph", c.graph, "edge-list file")->required();
    cmd->add_option("--algo", algo, "tgt | tgtplus | montecarlo | stedge | exact-lpinv | exact-power")
        ->capture_default_str();
    cmd->add_option("--epsilon", c.epsilon, "absolute error bound")->capture_default_str();
    cmd->add_option("--delta", c.delta, "failure probability (default 1/n)");
    cmd->add_option("--gamma", c.gamma, "top-gamma entries used for walk bounds")->capture_default_str();
    cmd->add_option("--omega", c.omega, "eigenpairs to use (default min(128, n))");
    cmd->add_option("--seed", c.seed)->capture_default_str();
    cmd->add_option("--threads", c.threads)->capture_default_str();
    cmd->add_option("--spectral", c.spectral, "spectral cache to load instead of computing");
    cmd->add_option("--out", c.out, "result file (default stdout)");
    cmd->add_option("--tail-tol", c.tail_tol, "exact-power stopping increment")->capture_default_str();
    cmd->add_option("--tau-max", c.tau_max, "exact-power hop limit")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"All-edge spanning centrality estimation"};
    app.require_subcommand(1);

    cli::RunConfig config;
    std::string algo = "tgtplus";

    auto* compute = app.add_subcommand("compute", "score every edge with one algorithm");
    add_run_flags(compute, config, algo);

    cli::RunConfig tau_config;
    auto* tau = app.add_subcommand("tau", "per-edge truncation lengths (u v tau)");
    tau->add_option("--graph", tau_config.graph)->required();
    tau->add_option("--epsilon", tau_config.epsilon)->capture_default_str();
    tau->add_option("--omega", tau_config.omega);
    tau->add_option("--spectral", tau_config.spectral);
    tau->add_option("--threads", tau_config.threads);
    tau->add_option("--out", tau_config.out);

    std::string eval_a, eval_b;
    auto* eval = app.add_subcommand("eval", "compare two result files");
    eval->add_option("result_a", eval_a)->required();
    eval->add_option("result_b", eval_b)->required();

    std::string spectral_graph, spectral_out;
    int spectral_omega = 0;
    auto* spectral = app.add_subcommand("spectral", "precompute the eigenpair cache");
    spectral->add_option("--graph", spectral_graph)->required();
    spectral->add_option("--omega", spectral_omega, "default min(128, n)");
    spectral->add_option("--out", spectral_out)->required();

    std::size_t gen_n = 0, gen_m = 0;
    std::uint64_t gen_seed = 0;
    std::string gen_out;
    auto* generate = app.add_subcommand("generate", "ergodic G(n, m) edge list");
    generate->add_option("--nodes,-n", gen_n)->required();
    generate->add_option("--edges,-m", gen_m)->required();
    generate->add_option("--seed", gen_seed)->capture_default_str();
    generate->add_option("--out", gen_out)->required();

    cli::BenchSpec bench_spec;
    std::vector<std::string> bench_algos{"tgtplus"};
    bench_spec.epsilons = {0.01};
    bench_spec.omegas = {0};
    bench_spec.gammas = {10};
    bench_spec.seeds = {0};
    auto* bench = app.add_subcommand("bench", "parameter sweep, one TSV row per cell");
    bench->add_option("--graph", bench_spec.graphs, "edge-list path or er:N:M:SEED (repeatable)")->required();
    bench->add_option("--algo", bench_algos)->capture_default_str();
    bench->add_option("--epsilon", bench_spec.epsilons)->capture_default_str();
    bench->add_option("--omega", bench_spec.omegas, "0 = min(128, n)")->capture_default_str();
    bench->add_option("--gamma", bench_spec.gammas)->capture_default_str();
    bench->add_option("--seed", bench_spec.seeds)->capture_default_str();
    bench->add_option("--delta", bench_spec.delta, "default 1/n");
    bench->add_option("--threads", bench_spec.threads)->capture_default_str();
    bench->add_option("--reference", bench_spec.reference, "exact result file for the error column");
    bench->add_option("--exact-limit", bench_spec.exact_limit,
                      "compute exact-lpinv as reference for graphs up to this many nodes");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kUsage;
    }

    try {
        if (*compute) {
            config.algo = cli::parse_algo(algo);
            return cli::cmd_compute(config, std::cout, std::cerr);
        }
        if (*tau) return cli::cmd_tau(tau_config, std::cout, std::cerr);
        if (*eval) return cli::cmd_eval(eval_a, eval_b, std::cout);
        if (*spectral) return cli::cmd_spectral(spectral_graph, spectral_omega, spectral_out, std::cout, std::cerr);
        if (*generate) return cli::cmd_generate(gen_n, gen_m, gen_seed, gen_out, std::cout);
        if (*bench) {
            for (const auto& a : bench_algos) bench_spec.algos.push_back(cli::parse_algo(a));
            return cli::cmd_bench(bench_spec, std::cout, std::cerr);
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const DataError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kData;
    } catch (const NumericalError& e) {
        std::cerr << "error: " << e.what() << " (residual " << e.residual() << ")\n";
        return kNumerical;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kData;
    }
    return kUsage;
}
