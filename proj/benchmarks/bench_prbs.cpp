#include <benchmark/benchmark.h>

#include "aging/prbs.hpp"

using namespace aging;

static void BM_LfsrStep(benchmark::State& state) {
  LfsrState s = make_lfsr(23, 12345);
  for (auto _ : state) {
    auto [bit, next] = lfsr_step(s);
    benchmark::DoNotOptimize(bit);
    s = next;
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_LfsrStep);

static void BM_LfsrWord64(benchmark::State& state) {
  PrbsSource src(23, 12345);
  for (auto _ : state) benchmark::DoNotOptimize(src.word(64));
  state.SetItemsProcessed(state.iterations() * 64);
}
BENCHMARK(BM_LfsrWord64);
