#include <benchmark/benchmark.h>

#include "extinction_lab/ordered_multiset.hpp"
#include "extinction_lab/random.hpp"
#include "extinction_lab/simulator.hpp"
#include "extinction_lab/special_functions.hpp"
#include "extinction_lab/survival_law.hpp"

namespace el = extinction_lab;

static void BM_BesselScaled(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  const double x = static_cast<double>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(el::bessel_i_scaled(k, x));
}
BENCHMARK(BM_BesselScaled)->Args({1, 2})->Args({1, 50})->Args({5, 1000})->Args({100, 100})->Args({10000, 100000});

static void BM_SurvivalTail(benchmark::State& state) {
  const el::SurvivalLaw law(0.5, 1.0, static_cast<int>(state.range(0)));
  const double t = static_cast<double>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(law.survival_tail(t));
}
BENCHMARK(BM_SurvivalTail)->Args({1, 1})->Args({1, 20})->Args({5, 20})->Args({1, 500});

static void BM_CdfSeries(benchmark::State& state) {
  const el::SurvivalLaw law(0.5, 1.0, 1);
  const double t = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(law.cdf_series(t));
}
BENCHMARK(BM_CdfSeries)->Arg(1)->Arg(20);

static void BM_SurvivalSample(benchmark::State& state) {
  const auto params = el::ModelParams::create(2.0, 1.0, el::FitnessDistribution::uniform(0.0, 1.0),
                                              1, state.range(0) / 100.0);
  std::uint64_t i = 0;
  for (auto _ : state) {
    el::MarkStream stream(1, i++, 3.0);
    benchmark::DoNotOptimize(el::simulate_survival_time(params, 1e3, stream));
  }
}
BENCHMARK(BM_SurvivalSample)->Arg(25)->Arg(75);

static void BM_MultisetChurn(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  el::RandomStream rng(3, 0);
  el::OrderedMultiset set;
  for (std::size_t i = 0; i < n; ++i) set.insert(rng.uniform());
  for (auto _ : state) {
    set.insert(rng.uniform());
    benchmark::DoNotOptimize(set.count_in(0.6, 0.8));
    benchmark::DoNotOptimize(set.pop_min());
  }
}
BENCHMARK(BM_MultisetChurn)->Arg(1000)->Arg(100000);
BENCHMARK_MAIN();
