#include <benchmark/benchmark.h>

#include "logasm/additive.hpp"
#include "logasm/dist.hpp"
#include "logasm/lil.hpp"
#include "logasm/sampler.hpp"
#include "logasm/series.hpp"
#include "logasm/strassen.hpp"

using namespace logasm;

namespace {

void BM_ExpSeriesExact(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::vector<Rational> g(n + 1, 0);
  for (std::size_t j = 1; j <= n; ++j) g[j] = Rational(1, static_cast<unsigned long>(j));
  for (auto _ : state) benchmark::DoNotOptimize(exp_series(ExactSeries(g), n));
}
BENCHMARK(BM_ExpSeriesExact)->Arg(64)->Arg(128)->Arg(256);

void BM_ExpSeriesFloat(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::vector<double> g(n + 1, 0.0);
  for (std::size_t j = 1; j <= n; ++j) g[j] = 1.0 / static_cast<double>(j);
  for (auto _ : state) benchmark::DoNotOptimize(exp_series(FloatSeries(g), n));
}
BENCHMARK(BM_ExpSeriesFloat)->Arg(256)->Arg(1024)->Arg(4096);

void BM_TvTruncated(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto backend = state.range(1) ? BackendChoice::exact : BackendChoice::floating;
  const auto rates = derive_rates(AssemblySpec::ewens(Rational(1, 2)), n, backend);
  for (auto _ : state) benchmark::DoNotOptimize(tv_truncated(rates, n, n / 8, backend));
}
BENCHMARK(BM_TvTruncated)->Args({128, 1})->Args({128, 0})->Args({1024, 0});

void BM_SequentialSampler(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto rates = derive_rates(AssemblySpec::permutations(), n, BackendChoice::floating);
  const SequentialSampler sampler(rates, n);
  Rng rng(1);
  for (auto _ : state) benchmark::DoNotOptimize(sampler.sample(rng));
}
BENCHMARK(BM_SequentialSampler)->Arg(64)->Arg(1024);

void BM_ComponentSizeSampler(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto rates = derive_rates(AssemblySpec::permutations(), n, BackendChoice::floating);
  const ComponentSizeSampler sampler(rates, n);
  Rng rng(1);
  for (auto _ : state) benchmark::DoNotOptimize(sampler.sample_sparse(rng));
}
BENCHMARK(BM_ComponentSizeSampler)->Arg(1000)->Arg(100000);

void BM_RejectionSampler(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto rates = derive_rates(AssemblySpec::permutations(), n, BackendChoice::floating);
  Rng rng(1);
  for (auto _ : state) benchmark::DoNotOptimize(sample_rejection(rates, n, rng, 1'000'000));
}
BENCHMARK(BM_RejectionSampler)->Arg(8)->Arg(32);

void BM_StrassenDistance(benchmark::State& state) {
  const auto k = static_cast<std::size_t>(state.range(0));
  Rng rng(3);
  std::vector<double> t{0.0}, y{0.0};
  double walk = 0.0;
  for (std::size_t i = 1; i <= k; ++i) {
    t.push_back(static_cast<double>(i) / static_cast<double>(k));
    walk += (rng.uniform() - 0.5) / std::sqrt(static_cast<double>(k));
    y.push_back(walk);
  }
  const PolygonalPath path(std::move(t), std::move(y));
  for (auto _ : state) benchmark::DoNotOptimize(strassen_distance(path));
}
BENCHMARK(BM_StrassenDistance)->Arg(64)->Arg(1024)->Arg(16384);

void BM_LilExperiment(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto h = AdditiveFunction::constant(1.0, n);
  for (auto _ : state) {
    benchmark::DoNotOptimize(lil_experiment(AssemblySpec::ewens(1), h, n, n / 10, 8, 1));
  }
}
BENCHMARK(BM_LilExperiment)->Arg(10000)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
