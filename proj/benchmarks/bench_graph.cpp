#include <benchmark/benchmark.h>

#include "bench_support.hpp"
#include "discourse/graph.hpp"

namespace {

void BM_GraphBuild(benchmark::State& state) {
    const std::size_t edges = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) {
        auto g = bench::random_graph(edges / 6, edges, 7);
        benchmark::DoNotOptimize(g.total_weight());
    }
    state.SetItemsProcessed(state.iterations() * edges);
}
BENCHMARK(BM_GraphBuild)->Arg(100000)->Arg(1000000)->Unit(benchmark::kMillisecond);

void BM_GraphStats(benchmark::State& state) {
    const auto g = bench::random_graph(50000, 300000, 11);
    for (auto _ : state) {
        auto stats = g.stats();
        benchmark::DoNotOptimize(stats.mean_out_degree);
    }
}
BENCHMARK(BM_GraphStats);

}  // namespace
