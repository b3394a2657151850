// Serial reference loops vs OpenMP kernels.
#include <benchmark/benchmark.h>

#include "relcpd/detector.hpp"
#include "relcpd/estimators.hpp"
#include "relcpd/kernel.hpp"
#include "relcpd/rng.hpp"
#include "relcpd/synthgen.hpp"

using namespace relcpd;

namespace {

Samples random_samples(Index n, Index dim, std::uint64_t seed) {
    Rng rng(seed);
    Samples s(n, dim);
    for (Index i = 0; i < s.size(); ++i) s.data()[i] = rng.normal();
    return s;
}

Execution exec_of(const benchmark::State& state) {
    return state.range(0) == 0 ? Execution::serial : Execution::parallel;
}

void BM_SquaredDistances(benchmark::State& state) {
    const auto a = random_samples(state.range(1), 10, 1);
    const auto b = random_samples(state.range(1), 10, 2);
    for (auto _ : state) benchmark::DoNotOptimize(squared_distances(a, b, exec_of(state)));
}
BENCHMARK(BM_SquaredDistances)->ArgsProduct({{0, 1}, {50, 200, 800}});

void BM_MeanOuterProduct(benchmark::State& state) {
    const auto a = random_samples(state.range(1), 10, 3);
    const auto d = design_matrices(a, a, a, 1.0, Execution::serial);
    for (auto _ : state) benchmark::DoNotOptimize(mean_outer_product(d.k_den, exec_of(state)));
}
BENCHMARK(BM_MeanOuterProduct)->ArgsProduct({{0, 1}, {50, 200, 800}});

void BM_MedianDistance(benchmark::State& state) {
    const auto a = random_samples(state.range(1), 10, 4);
    for (auto _ : state) benchmark::DoNotOptimize(median_distance(a, exec_of(state)));
}
BENCHMARK(BM_MedianDistance)->ArgsProduct({{0, 1}, {100, 400}});

void BM_ChangeScores(benchmark::State& state) {
    const auto series = generate({1, 1000, 100, 0});
    DetectorConfig c;
    c.estimator = static_cast<EstimatorKind>(state.range(1));
    c.stride = 5;
    c.cv_stride = 5;
    for (auto _ : state) benchmark::DoNotOptimize(change_scores(series, c, exec_of(state)));
}
BENCHMARK(BM_ChangeScores)->ArgsProduct({{0, 1}, {0, 1, 2}})->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
