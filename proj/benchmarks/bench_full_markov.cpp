#include <benchmark/benchmark.h>

#include "purity/full_markov.hpp"
#include "purity/power_sum.hpp"

using namespace purity;

static void BM_StepFull(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto proto = make_canonical(n, n / 4, Boundary::periodic);
  auto v = FullPurityVector::all_ones(n);
  const double a = gate_weight(2);
  for (auto _ : state) {
    step_full(v, proto, a);
    benchmark::DoNotOptimize(v[1]);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(v.size()));
}
BENCHMARK(BM_StepFull)->Arg(8)->Arg(12)->Arg(16)->Arg(20)->Unit(benchmark::kMicrosecond);
