#ifndef AGING_STRESS_HPP
#define AGING_STRESS_HPP

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace aging {

// Thrown when a tracker is driven out of simulation order. Indicates a
// harness bug, not a recoverable input problem.
class SimOrderError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Per-bit stress accumulator. A cell starts at the reset value 0 at
// cycle 0; the value written at cycle t holds from t (inclusive) to the
// next write (exclusive), which makes time_at_one + time_at_zero equal
// the observation span exactly after finalize().
struct CellStress {
  std::uint64_t last_change_cycle = 0;
  std::uint64_t last_event_cycle = 0;
  std::uint64_t time_at_one = 0;
  std::uint64_t time_at_zero = 0;
  std::uint64_t toggle_count = 0;
  std::uint64_t write_count = 0;
  std::uint64_t max_static_interval = 0;
  std::uint8_t current_value = 0;
  std::uint8_t finalized = 0;

  void observe(std::uint64_t cycle, unsigned new_value) {
    if (finalized) throw SimOrderError("observe() after finalize()");
    if (cycle < last_event_cycle)
      throw SimOrderError("non-monotonic cycle in CellStress::observe");
    credit(cycle);
    ++write_count;
    if ((new_value & 1) != current_value) {
      ++toggle_count;
      close_run(cycle);
      current_value = static_cast<std::uint8_t>(new_value & 1);
    }
  }

  void finalize(std::uint64_t end_cycle) {
    if (finalized) throw SimOrderError("double finalize of CellStress");
    if (end_cycle < last_event_cycle)
      throw SimOrderError("finalize end_cycle precedes last event");
    credit(end_cycle);
    close_run(end_cycle);
    finalized = 1;
  }

  std::uint64_t span() const { return time_at_one + time_at_zero; }

  double signal_probability() const {
    const std::uint64_t s = span();
    return s == 0 ? 0.0 : static_cast<double>(time_at_one) / static_cast<double>(s);
  }

 private:
  void credit(std::uint64_t cycle) {
    const std::uint64_t elapsed = cycle - last_event_cycle;
    if (current_value)
      time_at_one += elapsed;
    else
      time_at_zero += elapsed;
    last_event_cycle = cycle;
  }
  void close_run(std::uint64_t cycle) {
    const std::uint64_t run = cycle - last_change_cycle;
    if (run > max_static_interval) max_static_interval = run;
    last_change_cycle = cycle;
  }
};

// An entry is statically stressed when it was written at most once over
// the observation window.
inline bool is_static(std::uint64_t entry_write_count) {
  return entry_write_count <= 1;
}

enum class StressGranularity { PerBit, PerEntry };

// Aggregation container for one tracked structure (a register file, a
// cache way, a netlist's nets, ...).
struct StructStress {
  std::string name;
  StressGranularity granularity = StressGranularity::PerBit;
  std::vector<CellStress> cells;
  std::vector<std::uint64_t> entry_write_counts;

  std::uint64_t static_entry_count() const {
    std::uint64_t n = 0;
    for (std::uint64_t w : entry_write_counts)
      if (is_static(w)) ++n;
    return n;
  }
};

// Histogram of per-cell signal probabilities over uniform bins of [0,1].
// Bin edges are inclusive-left; the last bin is closed at 1.
// All cells must be finalized.
std::vector<std::uint64_t> signal_probability_histogram(
    std::span<const CellStress> cells, int bins);

inline std::vector<std::uint64_t> signal_probability_histogram(
    const StructStress& s, int bins) {
  return signal_probability_histogram(std::span<const CellStress>(s.cells), bins);
}

}  // namespace aging

#endif  // AGING_STRESS_HPP
