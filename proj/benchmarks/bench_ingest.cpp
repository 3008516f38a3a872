#include <benchmark/benchmark.h>

#include "bench_support.hpp"
#include "discourse/ingest.hpp"

namespace {

void BM_ParseRecords(benchmark::State& state) {
    const std::string jsonl = bench::random_jsonl(static_cast<std::size_t>(state.range(0)),
                                                  1000, 42);
    discourse::ParseOptions options;
    options.threads = static_cast<unsigned>(state.range(1));
    for (auto _ : state) {
        auto result = discourse::parse_records(jsonl, options);
        benchmark::DoNotOptimize(result.records.data());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ParseRecords)->Args({10000, 1})->Args({10000, 2})->Unit(benchmark::kMillisecond);

void BM_NormalizeText(benchmark::State& state) {
    const std::string text =
        "كرونا در ايران "
        "#stay_home COVID19 می‌توان";
    for (auto _ : state) {
        auto out = discourse::normalize_text(text);
        benchmark::DoNotOptimize(out.data());
    }
}
BENCHMARK(BM_NormalizeText);

void BM_Tokenize(benchmark::State& state) {
    std::string text;
    for (int i = 0; i < 50; ++i) text += "word" + std::to_string(i) + " #tag" + std::to_string(i) + " ";
    const std::string normalized = discourse::normalize_text(text);
    for (auto _ : state) {
        auto tokens = discourse::tokenize(normalized);
        benchmark::DoNotOptimize(tokens.tokens.data());
    }
}
BENCHMARK(BM_Tokenize);

}  // namespace
