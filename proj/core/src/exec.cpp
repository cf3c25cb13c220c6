#include "aging/exec.hpp"

#include <stdexcept>

namespace aging {

std::uint64_t ExecUnit::max_bit_static_interval() const {
  std::uint64_t m = 0;
  for (const CellStress& c : operand_bus)
    if (c.max_static_interval > m) m = c.max_static_interval;
  return m;
}

std::vector<UnitConfig> default_unit_mix() {
  return {
      {UnitKind::IntAlu, 3, 1}, {UnitKind::FpAddSub, 1, 3},
      {UnitKind::FpMulDiv, 1, 5}, {UnitKind::Branch, 1, 1},
      {UnitKind::Load, 1, 1},     {UnitKind::Store, 1, 1},
  };
}

ExecPool::ExecPool(const std::vector<UnitConfig>& mix, std::uint32_t dispatch_width,
                   bool injection_enabled, std::uint64_t injection_period_cycles,
                   std::uint64_t seed)
    : dispatch_width_(dispatch_width),
      injection_enabled_(injection_enabled),
      injection_period_(injection_period_cycles),
      next_tick_(injection_period_cycles),
      inject_prbs_(23, mix64(seed ^ 0xec5) | 1) {
  if (dispatch_width < 1) throw std::invalid_argument("dispatch width must be >= 1");
  if (injection_period_ < 1)
    throw std::invalid_argument("injection period must be >= 1");
  for (const UnitConfig& uc : mix) {
    for (std::uint32_t i = 0; i < uc.count; ++i) {
      ExecUnit u;
      u.kind = uc.kind;
      u.latency_cycles = uc.latency_cycles;
      u.name = std::string(to_string(uc.kind));
      if (uc.count > 1) u.name += std::to_string(i);
      u.operand_bus.resize(64);
      units_.push_back(std::move(u));
    }
  }
  if (units_.empty()) throw std::invalid_argument("empty unit mix");
}

void ExecPool::inject_tick(std::uint64_t cycle) {
  ++injection_ticks_;
  for (ExecUnit& u : units_) {
    if (u.busy_at(cycle)) continue;  // never perturb real work
    const std::uint64_t pattern = inject_prbs_.word(64);
    for (int b = 0; b < 64; ++b)
      u.operand_bus[static_cast<std::size_t>(b)].observe(
          cycle, static_cast<unsigned>((pattern >> b) & 1));
    ++u.injected_words;
  }
}

void ExecPool::advance_to(std::uint64_t cycle) {
  if (!injection_enabled_) return;
  while (next_tick_ <= cycle) {
    inject_tick(next_tick_);
    next_tick_ += injection_period_;
  }
}

DispatchResult ExecPool::dispatch(const TraceEvent& event, std::uint64_t payload) {
  advance_to(event.cycle);

  // Dispatch-width cap: at most dispatch_width_ events leave per cycle.
  if (event.cycle > head_cycle_) {
    head_cycle_ = event.cycle;
    slots_used_ = 0;
  }
  if (slots_used_ == dispatch_width_) {
    ++head_cycle_;
    slots_used_ = 0;
  }
  ++slots_used_;

  // Earliest-free unit of the event's class, ties to the lowest index.
  int chosen = -1;
  std::uint64_t best_busy = ~0ull;
  for (std::size_t i = 0; i < units_.size(); ++i) {
    if (units_[i].kind != event.kind) continue;
    if (units_[i].busy_until < best_busy) {
      best_busy = units_[i].busy_until;
      chosen = static_cast<int>(i);
    }
  }
  if (chosen < 0)
    throw std::invalid_argument(std::string("no unit for kind ") +
                                to_string(event.kind));

  ExecUnit& unit = units_[static_cast<std::size_t>(chosen)];
  const std::uint64_t start = std::max(head_cycle_, unit.busy_until);
  const std::uint64_t stall = start - event.cycle;
  unit.busy_until = start + unit.latency_cycles;
  ++unit.op_count;
  for (int b = 0; b < 64; ++b)
    unit.operand_bus[static_cast<std::size_t>(b)].observe(
        event.cycle, static_cast<unsigned>((payload >> b) & 1));

  total_stall_cycles_ += stall;
  return DispatchResult{static_cast<std::uint32_t>(chosen), start, stall};
}

void ExecPool::finalize(std::uint64_t end_cycle) {
  if (finalized_) throw SimOrderError("double finalize of ExecPool");
  advance_to(end_cycle);
  for (ExecUnit& u : units_)
    for (CellStress& c : u.operand_bus) c.finalize(end_cycle);
  finalized_ = true;
}

std::vector<UnitStressRow> ExecPool::unit_stress_table() const {
  std::vector<UnitStressRow> rows;
  rows.reserve(units_.size());
  for (const ExecUnit& u : units_) {
    UnitStressRow row;
    row.name = u.name;
    row.kind = u.kind;
    row.op_count = u.op_count;
    row.injected_words = u.injected_words;
    row.is_static = u.op_count == 0 && u.injected_words == 0;
    row.max_static_interval = u.max_bit_static_interval();
    row.min_bit_write_count = ~0ull;
    row.bit_max_static_interval.reserve(u.operand_bus.size());
    for (const CellStress& c : u.operand_bus) {
      row.bit_max_static_interval.push_back(c.max_static_interval);
      if (c.write_count < row.min_bit_write_count)
        row.min_bit_write_count = c.write_count;
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace aging
