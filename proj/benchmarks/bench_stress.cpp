#include <benchmark/benchmark.h>

#include <vector>

#include "aging/prbs.hpp"
#include "aging/stress.hpp"

using namespace aging;

static void BM_CellObserve(benchmark::State& state) {
  CellStress cell;
  PrbsSource src(15, 3);
  std::uint64_t cycle = 0;
  for (auto _ : state) {
    cell.observe(cycle, src.bit());
    ++cycle;
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_CellObserve);

// One 64-bit register write with per-bit tracking, the hot path of the
// register file and the tracked cache way.
static void BM_Observe64Bits(benchmark::State& state) {
  std::vector<CellStress> cells(64);
  PrbsSource src(23, 9);
  std::uint64_t cycle = 0;
  for (auto _ : state) {
    const std::uint64_t w = src.word(64);
    for (int b = 0; b < 64; ++b)
      cells[static_cast<std::size_t>(b)].observe(cycle, (w >> b) & 1);
    ++cycle;
  }
  state.SetItemsProcessed(state.iterations() * 64);
}
BENCHMARK(BM_Observe64Bits);
