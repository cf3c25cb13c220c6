#ifndef AGING_SIM_HPP
#define AGING_SIM_HPP

#include "aging/config.hpp"
#include "aging/report.hpp"

namespace aging {

// Runs the configured experiment end to end: the event stream drives
// the execution-unit pool, the rotating register files and the cache
// hierarchy, with mitigations per config; all stress trackers are
// finalized at the end of the trace span.
//
// Cycle accounting is a simple in-order charge model:
//   total_cycles = trace span + unit stall cycles + summed access
//   latencies (instruction fetch and data, first-hitting-level cost).
StressReport run_experiment(const ExperimentConfig& cfg);

}  // namespace aging

#endif  // AGING_SIM_HPP
