#include <benchmark/benchmark.h>

#include "qslie/sm/integrals.hpp"
#include "qslie/sm/stepper.hpp"
#include "qslie/wordfmt.hpp"

using namespace qslie;

namespace {

void BM_PhiloxGaussianFill(benchmark::State& state) {
    const std::uint64_t n = 1 << 14;
    sm::NormalSource src(42, 2);
    std::vector<double> buf(n * 2);
    for (auto _ : state) {
        src.fill_increments(7, n, 2, 1.0 / static_cast<double>(n), buf.data());
        benchmark::DoNotOptimize(buf.data());
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                            static_cast<std::int64_t>(n * 2));
}
BENCHMARK(BM_PhiloxGaussianFill);

void BM_IntegralWalk(benchmark::State& state) {
    std::vector<Word> words;
    for (const char* s : {"1", "2", "[1,1]", "[2,2]", "1.1", "1.2", "2.1", "2.2"})
        words.push_back(wordfmt::parse_word(s));
    sm::IntegralPlan plan(words, 2);
    const std::uint64_t n = 1 << 14;
    sm::NormalSource src(42, 2);
    std::vector<double> inc(n * 2);
    src.fill_increments(3, n, 2, 1.0 / static_cast<double>(n), inc.data());
    std::vector<double> vals(plan.node_count());
    for (auto _ : state) {
        plan.reset(vals.data());
        for (std::uint64_t k = 0; k < n; ++k)
            plan.substep(vals.data(), &inc[k * 2], 1.0 / static_cast<double>(n));
        benchmark::DoNotOptimize(vals.data());
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                            static_cast<std::int64_t>(n));
}
BENCHMARK(BM_IntegralWalk);

void BM_MatrixExpStep(benchmark::State& state) {
    Eigen::MatrixXd A1(3, 3), A2(3, 3);
    A1 << 0.0, -1.2, 0.3, 1.2, 0.1, -0.4, -0.3, 0.4, 0.2;
    A2 << 0.2, 0.5, -1.0, -0.5, -0.1, 0.6, 1.0, -0.6, 0.0;
    Eigen::MatrixXd L = 0.05 * A1 + 0.03 * A2 - 0.01 * (A1 * A1 + A2 * A2);
    for (auto _ : state) {
        Eigen::MatrixXd e = sm::matrix_exp(L);
        benchmark::DoNotOptimize(e.data());
    }
}
BENCHMARK(BM_MatrixExpStep);

void BM_CompileSeries(benchmark::State& state) {
    auto series = strichartz::strat_lie_series(2, 3);
    sm::LinearSystem sys;
    sys.N = 3;
    Eigen::MatrixXd A1(3, 3), A2(3, 3);
    A1 << 0.0, -1.2, 0.3, 1.2, 0.1, -0.4, -0.3, 0.4, 0.2;
    A2 << 0.2, 0.5, -1.0, -0.5, -0.1, 0.6, 1.0, -0.6, 0.0;
    sys.A = {A1, A2};
    for (auto _ : state) {
        auto cs = sm::compile_series(series, sys, sm::BracketFields::ItoCorrection, 3);
        benchmark::DoNotOptimize(cs.terms.data());
    }
}
BENCHMARK(BM_CompileSeries);

}  // namespace
