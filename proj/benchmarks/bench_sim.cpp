#include <benchmark/benchmark.h>

#include "aging/sim.hpp"

using namespace aging;

// End-to-end events per second, mitigations off vs all on.
static void run_sim(benchmark::State& state, bool mitigations) {
  ExperimentConfig cfg;
  cfg.seed = 5;
  cfg.trace.profile =
      WorkloadProfile::preset(ProfileName::SmallFootprint,
                              static_cast<std::uint64_t>(state.range(0)), 5);
  cfg.hierarchy.tracked_way = -1;
  cfg.injection_enabled = mitigations;
  cfg.rotation_enabled = mitigations;
  cfg.rotation_period_cycles = 10'000;
  cfg.hierarchy.swap_shift_enabled = mitigations;
  cfg.hierarchy.swap_period_accesses = 10'000;
  for (auto _ : state) benchmark::DoNotOptimize(run_experiment(cfg));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

static void BM_RunBaseline(benchmark::State& state) { run_sim(state, false); }
BENCHMARK(BM_RunBaseline)->Arg(100000)->Unit(benchmark::kMillisecond);

static void BM_RunAllMitigations(benchmark::State& state) { run_sim(state, true); }
BENCHMARK(BM_RunAllMitigations)->Arg(100000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
