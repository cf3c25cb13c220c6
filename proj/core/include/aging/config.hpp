#ifndef AGING_CONFIG_HPP
#define AGING_CONFIG_HPP

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "aging/cache.hpp"
#include "aging/exec.hpp"
#include "aging/trace.hpp"

namespace aging {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct TraceSourceConfig {
  bool synthetic = true;
  std::string path;
  WorkloadProfile profile = WorkloadProfile::preset(ProfileName::IntOnly, 1'000'000, 1);
};

// Full experiment configuration. Defaults reproduce the baseline model:
// 4-wide dispatch; 3 ALUs, FP add/sub, FP mul/div, branch, load, store
// units; 32KB/8-way L1-D, 32KB/4-way L1-I, 256KB/8-way L2, 8MB/16-way L3,
// all LRU with 4/4/8/30-cycle latencies; 64/128/512-entry 4-way TLBs.
struct ExperimentConfig {
  std::uint64_t seed = 1;
  TraceSourceConfig trace;

  std::uint32_t dispatch_width = 4;
  std::vector<UnitConfig> units = default_unit_mix();
  bool injection_enabled = false;
  std::uint64_t injection_period_cycles = 4096;

  bool rotation_enabled = false;
  std::uint64_t rotation_period_cycles = 10'000'000;
  // per RegClass: Gpr, FpVec, Control, Mask, Segment, Temp
  std::array<std::uint32_t, kRegClassCount> reg_class_sizes = {16, 32, 16, 8, 6, 16};

  HierarchyConfig hierarchy;
  std::uint64_t code_footprint_bytes = 64u << 10;

  int histogram_bins = 20;

  void validate() const;
};

ExperimentConfig config_from_json_text(const std::string& text);
ExperimentConfig load_config_file(const std::string& path);
std::string config_to_json_text(const ExperimentConfig& cfg, int indent = 2);

// FNV-1a over the canonical config text with every mitigation toggle and
// period cleared; two runs are comparable iff these match.
std::uint64_t config_baseline_id(const ExperimentConfig& cfg);

// Identity of the event stream a config will consume: file traces hash
// the file bytes, synthetic traces hash the canonical profile tuple.
std::uint64_t trace_identity(const ExperimentConfig& cfg);

std::uint64_t fnv1a(const void* data, std::size_t len, std::uint64_t h = 0xcbf29ce484222325ull);

}  // namespace aging

#endif  // AGING_CONFIG_HPP
