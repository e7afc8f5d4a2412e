#include <benchmark/benchmark.h>

#include "bpcr/dp_engine.hpp"
#include "bpcr/hyperparams.hpp"
#include "bpcr/regression.hpp"
#include "bpcr/synthgen.hpp"

namespace {

using namespace bpcr;

DataSeries series(std::size_t n) { return synth::generate(synth::Profile::GM, 769, n).data; }

void BM_GaussianMoments(benchmark::State& state) {
  const DataSeries y = series(static_cast<std::size_t>(state.range(0)));
  const Hyperparameters hp = estimate_moments(y);
  for (auto _ : state) benchmark::DoNotOptimize(gaussian_moments(y, hp));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_GaussianMoments)->RangeMultiplier(2)->Range(128, 2048)->Complexity(benchmark::oNSquared);

void BM_BuildDp(benchmark::State& state) {
  const DataSeries y = series(static_cast<std::size_t>(state.range(0)));
  const MomentTables mt = gaussian_moments(y, estimate_moments(y));
  for (auto _ : state) benchmark::DoNotOptimize(build_dp(mt, 100));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_BuildDp)->RangeMultiplier(2)->Range(128, 2048)->Complexity(benchmark::oNSquared);

void BM_FitGaussian(benchmark::State& state) {
  const DataSeries y = series(static_cast<std::size_t>(state.range(0)));
  FitOptions o;
  o.k_max = static_cast<std::size_t>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(fit(y, o));
}
BENCHMARK(BM_FitGaussian)->Args({100, 100})->Args({769, 100})->Args({1538, 100})->Unit(benchmark::kMillisecond);

void BM_FitCauchy(benchmark::State& state) {
  const DataSeries y = synth::generate(synth::Profile::CM, 769, static_cast<std::size_t>(state.range(0))).data;
  FitOptions o;
  o.noise = o.prior = NoiseModelKind::Cauchy;
  for (auto _ : state) benchmark::DoNotOptimize(fit(y, o));
}
BENCHMARK(BM_FitCauchy)->Arg(50)->Arg(100)->Arg(200)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
