#include <benchmark/benchmark.h>

#include <map>
#include <memory>

#include "spancent/baselines.hpp"
#include "spancent/spectral.hpp"
#include "spancent/tgt_plus.hpp"
#include "spancent/traversal.hpp"
#include "spancent/truncation.hpp"

using namespace spancent;

namespace {

// ER graph with mean degree 10 and its top-128 basis, built once per n.
struct Fixture {
    Graph graph;
    SpectralBasis basis;
};

const Fixture& fixture(std::size_t n) {
    static std::map<std::size_t, std::unique_ptr<Fixture>> cache;
    auto& slot = cache[n];
    if (!slot) {
        slot = std::make_unique<Fixture>();
        slot->graph = generate_ergodic_erdos_renyi(n, 5 * n, 1);
        slot->basis = compute_spectral_basis(slot->graph, std::min<std::size_t>(128, n));
    }
    return *slot;
}

void BM_TraverseHops(benchmark::State& state) {
    const Graph& g = fixture(static_cast<std::size_t>(state.range(0))).graph;
    const int hops = static_cast<int>(state.range(1));
    TraversalState ts(g);
    NodeId source = 0;
    for (auto _ : state) {
        ts.reset(source);
        for (int h = 0; h < hops; ++h) traverse_step(g, ts);
        benchmark::DoNotOptimize(ts.values().data());
        source = (source + 97) % static_cast<NodeId>(g.num_nodes());
    }
}
BENCHMARK(BM_TraverseHops)->Args({10000, 2})->Args({10000, 4})->Args({10000, 6});

void BM_TruncationTable(benchmark::State& state) {
    const Fixture& f = fixture(static_cast<std::size_t>(state.range(0)));
    const double eps = 1.0 / static_cast<double>(state.range(1));
    for (auto _ : state) benchmark::DoNotOptimize(compute_truncation_table(f.graph, f.basis, eps).tau.data());
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(f.graph.num_edges()));
}
BENCHMARK(BM_TruncationTable)->Args({2000, 20})->Args({2000, 1000})->Unit(benchmark::kMillisecond);

void BM_TgtAllEdges(benchmark::State& state) {
    const Fixture& f = fixture(2000);
    const double eps = 1.0 / static_cast<double>(state.range(0));
    const TruncationTable table = compute_truncation_table(f.graph, f.basis, eps);
    for (auto _ : state) benchmark::DoNotOptimize(tgt_all_edges(f.graph, table).scores.data());
}
BENCHMARK(BM_TgtAllEdges)->Arg(20)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_TgtPlusGamma(benchmark::State& state) {
    const Fixture& f = fixture(2000);
    const TruncationTable half = compute_truncation_table(f.graph, f.basis, 0.005);
    TgtPlusOptions options;
    options.epsilon = 0.01;
    options.gamma = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(tgt_plus_all_edges(f.graph, half, options).scores.data());
}
BENCHMARK(BM_TgtPlusGamma)->Arg(0)->Arg(10)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_RhoHat(benchmark::State& state) {
    const Graph& g = fixture(10000).graph;
    TraversalState ts(g);
    ts.reset(0);
    traverse_step(g, ts);
    traverse_step(g, ts);
    const int gamma = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(rho_hat(g, ts.values(), ts.support(), gamma));
}
BENCHMARK(BM_RhoHat)->Arg(1)->Arg(10)->Arg(100);

void BM_WilsonTree(benchmark::State& state) {
    const Graph& g = fixture(static_cast<std::size_t>(state.range(0))).graph;
    std::uint64_t t = 0;
    for (auto _ : state) {
        Rng rng = stream_rng(3, t++);
        benchmark::DoNotOptimize(wilson_spanning_tree(g, 0, rng).edges.data());
    }
}
BENCHMARK(BM_WilsonTree)->Arg(2000)->Arg(10000)->Unit(benchmark::kMicrosecond);

void BM_SpectralBasis(benchmark::State& state) {
    const Graph g = generate_ergodic_erdos_renyi(static_cast<std::size_t>(state.range(0)),
                                                 5 * static_cast<std::size_t>(state.range(0)), 2);
    const auto omega = static_cast<std::size_t>(state.range(1));
    for (auto _ : state) benchmark::DoNotOptimize(compute_spectral_basis(g, omega).eigenvalues.data());
}
BENCHMARK(BM_SpectralBasis)->Args({3000, 32})->Args({3000, 128})->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
