#include <vector>

#include <benchmark/benchmark.h>

#include "ugof/classical_tests.hpp"
#include "ugof/distributions.hpp"
#include "ugof/null_theory.hpp"
#include "ugof/rng.hpp"
#include "ugof/t_statistic.hpp"

namespace {

ugof::UnitSample uniform_sample(std::size_t n) {
  ugof::RngStream rng(1);
  std::vector<double> u(n);
  for (auto& v : u) v = rng.uniform();
  return ugof::UnitSample(std::move(u));
}

void BM_TStatisticPairSum(benchmark::State& state) {
  const auto s = uniform_sample(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(ugof::t_statistic(s));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_TStatisticPairSum)->RangeMultiplier(4)->Range(16, 4096)->Complexity();

void BM_TStatisticSorted(benchmark::State& state) {
  const auto s = uniform_sample(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    const auto sorted = s.sorted();
    benchmark::DoNotOptimize(ugof::t_statistic_sorted(sorted));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_TStatisticSorted)->RangeMultiplier(4)->Range(16, 16384)->Complexity();

void BM_Battery(benchmark::State& state) {
  const auto s = uniform_sample(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(ugof::classical_battery(s));
}
BENCHMARK(BM_Battery)->Arg(30)->Arg(50)->Arg(200);

void BM_Sampler(benchmark::State& state, const char* spec) {
  const auto alt = ugof::parse_alternative(spec);
  ugof::RngStream rng(3);
  std::vector<double> buf(50);
  for (auto _ : state) {
    ugof::sample_into(alt, buf, rng);
    benchmark::DoNotOptimize(buf.data());
  }
}
BENCHMARK_CAPTURE(BM_Sampler, uniform, "uniform");
BENCHMARK_CAPTURE(BM_Sampler, beta23, "beta(2,3)");
BENCHMARK_CAPTURE(BM_Sampler, tn, "tn(0.25,0.5)");
BENCHMARK_CAPTURE(BM_Sampler, gamma08, "gamma(0.8)+1");
BENCHMARK_CAPTURE(BM_Sampler, mixture, "mix(0.5,z,n(1,9))");

void BM_NystromCumulants(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(ugof::cumulants_numeric(static_cast<int>(state.range(0))));
  }
}
BENCHMARK(BM_NystromCumulants)->Arg(128)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
