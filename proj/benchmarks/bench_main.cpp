#include <benchmark/benchmark.h>

#include <random>

#include "clone_oracle.hpp"
#include "synthetic_corpus.hpp"
#include "xmaint/analysis.hpp"
#include "xmaint/duplication.hpp"
#include "xmaint/lexer.hpp"

namespace {

using namespace xmaint;

std::string joined_sources(std::string_view profile_id)
{
    std::string all;
    for (const auto& f : testing::synthetic_corpus(6000, 3)) {
        if (f.profile_id == profile_id) all += f.content;
    }
    return all;
}

void bm_tokenize(benchmark::State& state, const char* profile_id)
{
    const auto text = joined_sources(profile_id);
    const auto& profile = builtin_registry().get(profile_id);
    for (auto _ : state) {
        auto r = tokenize(text, profile);
        benchmark::DoNotOptimize(r.tokens.data());
    }
    state.SetBytesProcessed(static_cast<int64_t>(state.iterations()) * static_cast<int64_t>(text.size()));
}
BENCHMARK_CAPTURE(bm_tokenize, c_family, "c-family");
BENCHMARK_CAPTURE(bm_tokenize, python, "python");
BENCHMARK_CAPTURE(bm_tokenize, cobol_like, "cobol-like");

void bm_clone_detection(benchmark::State& state)
{
    std::mt19937 rng(1);
    std::vector<NormalizedFile> files;
    for (int i = 0; i < 20; ++i) {
        files.push_back(testing::random_stream(rng, static_cast<std::size_t>(state.range(0)), 64,
                                               "f" + std::to_string(i)));
    }
    for (auto _ : state) {
        auto blocks = find_clone_blocks(files, 20);
        benchmark::DoNotOptimize(blocks.data());
    }
    state.SetItemsProcessed(static_cast<int64_t>(state.iterations()) * 20 * state.range(0));
}
BENCHMARK(bm_clone_detection)->Arg(1000)->Arg(5000);

void bm_analyze(benchmark::State& state)
{
    const auto sources = testing::synthetic_corpus(static_cast<int>(state.range(0)), 5);
    Config config;
    for (auto _ : state) {
        auto a = analyze_sources("bench", sources, config);
        benchmark::DoNotOptimize(a.metrics.total_loc);
    }
    state.SetItemsProcessed(static_cast<int64_t>(state.iterations()) * state.range(0));
}
BENCHMARK(bm_analyze)->Arg(2000)->Arg(10000)->Unit(benchmark::kMillisecond);

} // namespace
BENCHMARK_MAIN();
