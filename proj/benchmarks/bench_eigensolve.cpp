#include <benchmark/benchmark.h>

#include "purity/spectral.hpp"

using namespace purity;

static void BM_NonzeroSpectrumStandard(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto m = build_canonical(n, n / 5);
  for (auto _ : state) benchmark::DoNotOptimize(nonzero_spectrum(m, Precision::standard).size());
}
BENCHMARK(BM_NonzeroSpectrumStandard)->Arg(40)->Arg(100)->Unit(benchmark::kMillisecond);

static void BM_NonzeroSpectrumExtended(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto m = build_canonical(n, n / 5);
  for (auto _ : state) benchmark::DoNotOptimize(nonzero_spectrum(m, Precision::extended).size());
}
BENCHMARK(BM_NonzeroSpectrumExtended)->Arg(20)->Arg(40)->Unit(benchmark::kMillisecond);

static void BM_PerturbedRoot(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(perturbed_lambda2(100, 20));
}
BENCHMARK(BM_PerturbedRoot)->Unit(benchmark::kMicrosecond);
