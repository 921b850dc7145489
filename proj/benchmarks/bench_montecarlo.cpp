#include <benchmark/benchmark.h>

#include <random>

#include "purity/montecarlo.hpp"

using namespace purity;

static void BM_EvolveStep(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto proto = make_canonical(n, n / 2, Boundary::open);
  StateVector psi(n);
  std::mt19937_64 rng(1);
  for (auto _ : state) {
    evolve_step(psi, proto, rng);
    benchmark::DoNotOptimize(psi.norm());
  }
}
BENCHMARK(BM_EvolveStep)->Arg(6)->Arg(10)->Arg(14)->Unit(benchmark::kMicrosecond);

static void BM_TrajectoryBatch(benchmark::State& state) {
  const auto proto = make_canonical(6, 3, Boundary::periodic);
  MCOptions opts;
  opts.samples = 2000;
  opts.seed = 3;
  opts.threads = 1;
  for (auto _ : state) benchmark::DoNotOptimize(mc_trajectory(proto, Bipartition::first_k(6, 3), 10, opts).mean.back());
}
BENCHMARK(BM_TrajectoryBatch)->Unit(benchmark::kMillisecond);
