#ifndef AGING_REPORT_HPP
#define AGING_REPORT_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "aging/config.hpp"

namespace aging {

struct RegClassReport {
  std::string name;
  std::uint32_t n_regs = 0;
  std::uint64_t rotations = 0;
  std::uint64_t static_slots = 0;
  std::uint64_t min_slot_write_count = 0;
  std::uint64_t max_static_interval = 0;
};

struct UnitReport {
  std::string name;
  std::string kind;
  std::uint64_t op_count = 0;
  std::uint64_t injected_words = 0;
  bool is_static = false;
  std::uint64_t max_static_interval = 0;
  std::uint64_t min_bit_write_count = 0;
  std::vector<std::uint64_t> bit_max_static_interval;
};

struct CacheLevelReport {
  std::string name;
  std::uint32_t sets = 0;
  std::uint32_t ways = 0;
  std::uint64_t accesses = 0;
  std::uint64_t hits = 0;
  std::uint64_t misses = 0;
  std::uint64_t fills = 0;
  std::uint64_t writebacks = 0;
  std::uint64_t swap_triggers = 0;
  std::uint64_t total_lines = 0;
  std::uint64_t static_lines = 0;
  std::uint64_t min_line_write_count = 0;
  std::vector<std::uint64_t> tracked_way_duty_histogram;
};

struct TlbReport {
  std::string name;
  std::uint32_t entries = 0;
  std::uint64_t accesses = 0;
  std::uint64_t misses = 0;
  std::uint64_t static_entries = 0;
};

// Self-contained run summary: the echoed config plus seed reproduce
// every number in here.
struct StressReport {
  std::string config_text;  // canonical config JSON
  std::uint64_t trace_id = 0;
  std::uint64_t baseline_id = 0;

  std::uint64_t events = 0;
  std::uint64_t trace_span_cycles = 0;
  std::uint64_t stall_cycles = 0;
  std::uint64_t access_latency_cycles = 0;
  std::uint64_t total_cycles = 0;
  std::uint64_t injection_ticks = 0;
  std::uint64_t memory_reads = 0;
  std::uint64_t memory_writes = 0;

  std::vector<UnitReport> units;
  std::vector<RegClassReport> reg_classes;
  std::vector<CacheLevelReport> cache_levels;
  std::vector<TlbReport> tlbs;

  std::uint64_t static_unit_count() const;
  std::uint64_t static_register_slots() const;
  std::uint64_t static_cache_lines() const;
  std::uint64_t total_misses() const;
};

std::string report_to_json_text(const StressReport& r, int indent = 2);
StressReport report_from_json_text(const std::string& text);
StressReport load_report_file(const std::string& path);

// Percentage delta of one metric between two comparable runs; 0 when
// both sides are 0.
struct MetricDelta {
  std::string name;
  std::uint64_t a = 0;
  std::uint64_t b = 0;
  double delta_pct = 0.0;
};

struct CompareResult {
  double total_cycles_delta_pct = 0.0;
  std::vector<MetricDelta> metrics;
};

// Requires both reports to come from the same trace and the same core
// configuration (mitigation toggles aside).
CompareResult compare_reports(const StressReport& a, const StressReport& b);
std::string compare_to_json_text(const CompareResult& r, int indent = 2);
void print_compare_summary(std::ostream& out, const CompareResult& r);

// Duty-cycle histogram CSVs for the tracked ways (one file per level,
// <prefix>_<level>_duty.csv).
void write_report_histograms(const StressReport& r, const std::string& prefix);

}  // namespace aging

#endif  // AGING_REPORT_HPP
