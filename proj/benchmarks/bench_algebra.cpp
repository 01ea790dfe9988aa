#include <benchmark/benchmark.h>

#include "qslie/hopf.hpp"
#include "qslie/strichartz.hpp"
#include "qslie/wordfmt.hpp"

using namespace qslie;

namespace {

Word w_of(const char* s) { return wordfmt::parse_word(s); }

void BM_QShuffle(benchmark::State& state) {
    Word u = w_of("1.2.1.2"), v = w_of("2.1.2");
    for (auto _ : state) {
        auto p = freealg::qshuffle(u, v, BracketMode::Free);
        benchmark::DoNotOptimize(p);
    }
}
BENCHMARK(BM_QShuffle);

void BM_LogStar(benchmark::State& state) {
    Word w = w_of("1.2.1.2.1");
    for (auto _ : state) {
        auto p = hopf::log_star(w, BracketMode::Continuous);
        benchmark::DoNotOptimize(p);
    }
}
BENCHMARK(BM_LogStar);

void BM_LogStarSurjections(benchmark::State& state) {
    Word w = w_of("1.2.1.2");
    for (auto _ : state) {
        auto p = strichartz::log_star_via_surjections(w, BracketMode::Continuous);
        benchmark::DoNotOptimize(p);
    }
}
BENCHMARK(BM_LogStarSurjections);

void BM_StratSeries(benchmark::State& state) {
    const int weight = static_cast<int>(state.range(0));
    for (auto _ : state) {
        auto s = strichartz::strat_lie_series(2, weight);
        benchmark::DoNotOptimize(s);
    }
}
BENCHMARK(BM_StratSeries)->Arg(3)->Arg(4);

void BM_CanonicalExpansion(benchmark::State& state) {
    auto s = strichartz::ito_lie_series(2, 3, strichartz::ItoForm::Resummed);
    for (auto _ : state) {
        auto t = strichartz::canonical_expansion(s);
        benchmark::DoNotOptimize(t);
    }
}
BENCHMARK(BM_CanonicalExpansion);

}  // namespace

BENCHMARK_MAIN();
