#include <benchmark/benchmark.h>

#include "purity/dynamics.hpp"
#include "purity/reduction.hpp"

using namespace purity;

static void BM_ClosureSingleCut(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto proto = make_canonical(n, n / 4, Boundary::open);
  const auto target = Bipartition::first_k(n, n / 2);
  for (auto _ : state) benchmark::DoNotOptimize(closure_reduce(proto, target).size());
}
BENCHMARK(BM_ClosureSingleCut)->Arg(40)->Arg(100)->Arg(200)->Unit(benchmark::kMillisecond);

static void BM_ClosureTwoCuts(benchmark::State& state) {
  const auto proto = make_canonical(40, 4, Boundary::open);
  const auto target = parse_bipartition(40, "A=1-14,28-40");
  for (auto _ : state) benchmark::DoNotOptimize(closure_reduce(proto, target).size());
}
BENCHMARK(BM_ClosureTwoCuts)->Unit(benchmark::kMillisecond);

static void BM_BuildCanonical(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(build_canonical(n, n / 8).size());
}
BENCHMARK(BM_BuildCanonical)->Arg(100)->Arg(200)->Arg(400)->Unit(benchmark::kMillisecond);

static void BM_Propagate(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto m = build_canonical(n, n / 8);
  const auto target = Bipartition::first_k(n, n / 2);
  for (auto _ : state) benchmark::DoNotOptimize(propagate(m, 2 * n, target).values.back());
}
BENCHMARK(BM_Propagate)->Arg(100)->Arg(200)->Unit(benchmark::kMicrosecond);
