#include <benchmark/benchmark.h>

#include "convexpmf/distributions.hpp"
#include "convexpmf/oracle.hpp"
#include "convexpmf/solver.hpp"

using namespace convexpmf;

namespace {

EmpiricalPmf draw(const char* dist, std::size_t n) {
  return empirical_from_samples(sample(TrueDistribution::parse(dist), n, 11));
}

void BM_FitGeometric(benchmark::State& state) {
  const auto e = draw("geom:0.1", static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(fit(e));
}
BENCHMARK(BM_FitGeometric)->Arg(10)->Arg(100)->Arg(1000)->Arg(10000);

void BM_FitTriangular(benchmark::State& state) {
  const auto e = draw("tri:20", static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(fit(e));
}
BENCHMARK(BM_FitTriangular)->Arg(10)->Arg(100)->Arg(1000);

void BM_OracleTriangular(benchmark::State& state) {
  const auto e = draw("tri:20", static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(oracle::fit(e));
}
BENCHMARK(BM_OracleTriangular)->Arg(10)->Arg(100)->Arg(1000);

void BM_MixtureToPmf(benchmark::State& state) {
  MixtureWeights w;
  for (int j = 1; j <= state.range(0); j += 3) w[j] = 1.0;
  for (auto _ : state) benchmark::DoNotOptimize(mixture_to_pmf(w));
}
BENCHMARK(BM_MixtureToPmf)->Arg(50)->Arg(500)->Arg(5000);

}  // namespace

BENCHMARK_MAIN();
