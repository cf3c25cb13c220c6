#ifndef AGING_EXEC_HPP
#define AGING_EXEC_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "aging/prbs.hpp"
#include "aging/stress.hpp"
#include "aging/trace.hpp"

namespace aging {

struct ExecUnit {
  std::string name;
  UnitKind kind = UnitKind::IntAlu;
  std::uint64_t latency_cycles = 1;
  std::uint64_t busy_until = 0;
  std::uint64_t op_count = 0;
  std::uint64_t injected_words = 0;
  std::vector<CellStress> operand_bus;  // 64 tracked bits

  bool busy_at(std::uint64_t cycle) const { return busy_until > cycle; }
  std::uint64_t max_bit_static_interval() const;
};

struct UnitConfig {
  UnitKind kind;
  std::uint32_t count;
  std::uint64_t latency_cycles;
};

// Table-style baseline unit mix: 3 ALUs (1 cycle), 1 FP add/sub
// (3 cycles), 1 FP mul/div (5 cycles), 1 branch, 1 load, 1 store unit.
std::vector<UnitConfig> default_unit_mix();

struct DispatchResult {
  std::uint32_t unit_index = 0;
  std::uint64_t start_cycle = 0;
  std::uint64_t stall_cycles = 0;
};

struct UnitStressRow {
  std::string name;
  UnitKind kind;
  std::uint64_t op_count;
  std::uint64_t injected_words;
  bool is_static;
  std::uint64_t max_static_interval;                // max over operand bits
  std::uint64_t min_bit_write_count;                // min over operand bits
  std::vector<std::uint64_t> bit_max_static_interval;  // per operand bit
};

// Execution-unit pool: greedy earliest-free dispatch under a dispatch
// width cap, plus periodic PRBS injection into idle units' operand
// registers. Injection never changes dispatch decisions or timing.
class ExecPool {
 public:
  ExecPool(const std::vector<UnitConfig>& mix, std::uint32_t dispatch_width,
           bool injection_enabled, std::uint64_t injection_period_cycles,
           std::uint64_t seed);

  // Dispatches one event. Runs due injection ticks first so tracker
  // observations stay in cycle order.
  DispatchResult dispatch(const TraceEvent& event, std::uint64_t payload);

  // Runs injection ticks due at or before `cycle`.
  void advance_to(std::uint64_t cycle);

  void finalize(std::uint64_t end_cycle);

  std::vector<UnitStressRow> unit_stress_table() const;

  const std::vector<ExecUnit>& units() const { return units_; }
  std::uint64_t total_stall_cycles() const { return total_stall_cycles_; }
  std::uint64_t injection_ticks() const { return injection_ticks_; }
  bool injection_enabled() const { return injection_enabled_; }

 private:
  void inject_tick(std::uint64_t cycle);

  std::vector<ExecUnit> units_;
  std::uint32_t dispatch_width_;
  bool injection_enabled_;
  std::uint64_t injection_period_;
  std::uint64_t next_tick_;
  PrbsSource inject_prbs_;

  // dispatch-width bookkeeping
  std::uint64_t head_cycle_ = 0;
  std::uint32_t slots_used_ = 0;
  std::uint64_t total_stall_cycles_ = 0;
  std::uint64_t injection_ticks_ = 0;
  bool finalized_ = false;
};

}  // namespace aging

#endif  // AGING_EXEC_HPP
