#include <benchmark/benchmark.h>

#include "bench_support.hpp"
#include "discourse/cascade.hpp"

namespace {

void BM_SimulateIC(benchmark::State& state) {
    const auto g = bench::random_graph(200, 2000, 9);
    discourse::CascadeConfig config;
    config.p = 0.1;
    config.runs = static_cast<std::uint64_t>(state.range(0));
    config.master_seed = 77;
    config.threads = static_cast<unsigned>(state.range(1));
    std::vector<std::uint32_t> seeds = {0, 1, 2, 3, 4, 5, 6, 7, 8, 9};
    for (auto _ : state) {
        auto result = discourse::simulate_ic(g, seeds, config);
        benchmark::DoNotOptimize(result.mean_spread);
    }
    state.SetItemsProcessed(state.iterations() * config.runs);
}
BENCHMARK(BM_SimulateIC)->Args({2000, 1})->Args({2000, 2})->Unit(benchmark::kMillisecond);

void BM_ExactSpread(benchmark::State& state) {
    const auto g = bench::random_graph(8, static_cast<std::size_t>(state.range(0)), 13);
    std::vector<std::uint32_t> seeds = {0};
    for (auto _ : state) {
        auto value = discourse::exact_spread_small(g, seeds, 0.3);
        benchmark::DoNotOptimize(value);
    }
}
BENCHMARK(BM_ExactSpread)->Arg(12)->Arg(18)->Unit(benchmark::kMillisecond);

}  // namespace
