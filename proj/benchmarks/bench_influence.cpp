#include <benchmark/benchmark.h>

#include "bench_support.hpp"
#include "discourse/influence.hpp"

namespace {

void BM_VoteRank(benchmark::State& state) {
    const std::size_t nodes = static_cast<std::size_t>(state.range(0));
    const std::size_t r = static_cast<std::size_t>(state.range(1));
    const auto g = bench::random_graph(nodes, nodes * 6, 3);
    for (auto _ : state) {
        auto ranking = discourse::vote_rank(g, r);
        benchmark::DoNotOptimize(ranking.entries.data());
    }
}
BENCHMARK(BM_VoteRank)
    ->Args({10000, 10})
    ->Args({160000, 50})
    ->Unit(benchmark::kMillisecond);

void BM_Betweenness(benchmark::State& state) {
    const auto g = bench::random_graph(static_cast<std::size_t>(state.range(0)),
                                       static_cast<std::size_t>(state.range(0)) * 5, 5);
    for (auto _ : state) {
        auto values = discourse::betweenness(g);
        benchmark::DoNotOptimize(values.data());
    }
}
BENCHMARK(BM_Betweenness)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);

}  // namespace
