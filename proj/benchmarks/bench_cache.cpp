#include <benchmark/benchmark.h>

#include "aging/cache.hpp"
#include "aging/prbs.hpp"

using namespace aging;

namespace {

HierarchyConfig bench_config(bool swap_enabled) {
  HierarchyConfig cfg;
  cfg.tracked_way = -1;
  cfg.swap_shift_enabled = swap_enabled;
  cfg.swap_period_accesses = 10'000;
  return cfg;
}

void run_accesses(benchmark::State& state, bool swap_enabled) {
  CacheHierarchy h(bench_config(swap_enabled));
  PrbsSource src(23, 77);
  std::uint64_t cycle = 0;
  const std::uint64_t n_lines = 1u << 16;  // 4MB footprint
  for (auto _ : state) {
    const std::uint64_t addr = 0x1000000 + (src.word(32) % n_lines) * kLineBytes;
    benchmark::DoNotOptimize(h.access(addr, (cycle & 7) == 0, cycle, cycle));
    ++cycle;
  }
  state.SetItemsProcessed(state.iterations());
}

}  // namespace

static void BM_HierarchyAccess(benchmark::State& state) { run_accesses(state, false); }
BENCHMARK(BM_HierarchyAccess);

static void BM_HierarchyAccessSwapShift(benchmark::State& state) {
  run_accesses(state, true);
}
BENCHMARK(BM_HierarchyAccessSwapShift);

static void BM_PhysicalSet(benchmark::State& state) {
  std::uint32_t s = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(physical_set(s % 8192, (s / 3) % 8192, s % 8191, 8192));
    ++s;
  }
}
BENCHMARK(BM_PhysicalSet);
