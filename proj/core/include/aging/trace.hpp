#ifndef AGING_TRACE_HPP
#define AGING_TRACE_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "aging/prbs.hpp"

namespace aging {

enum class UnitKind { IntAlu, FpAddSub, FpMulDiv, Branch, Load, Store };
enum class RegClass { Gpr, FpVec, Control, Mask, Segment, Temp };

constexpr int kUnitKindCount = 6;
constexpr int kRegClassCount = 6;
constexpr unsigned kLineBytes = 64;

const char* to_string(UnitKind k);
const char* to_string(RegClass c);
std::optional<UnitKind> unit_kind_from_string(const std::string& s);
std::optional<RegClass> reg_class_from_string(const std::string& s);

struct RegId {
  RegClass cls = RegClass::Gpr;
  std::uint32_t index = 0;
  bool operator==(const RegId&) const = default;
};

// One dynamic event consumed by the core model. Loads and stores carry
// mem_addr; stores carry data.
struct TraceEvent {
  std::uint64_t seq = 0;
  std::uint64_t cycle = 0;
  UnitKind kind = UnitKind::IntAlu;
  std::optional<RegId> dst_reg;
  std::vector<RegId> src_regs;
  std::optional<std::uint64_t> mem_addr;
  std::optional<std::uint64_t> data;

  bool operator==(const TraceEvent&) const = default;
};

class TraceError : public std::runtime_error {
 public:
  TraceError(std::size_t line, const std::string& what)
      : std::runtime_error("trace line " + std::to_string(line) + ": " + what),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// ---------------------------------------------------------------------------
// Trace file format (External Interfaces):
//   #agingtrace v1
//   seq=<dec> cycle=<dec> kind=<UnitKind> [dst=<Class>:<idx>]
//       [srcs=<Class>:<idx>,...] [addr=<hex>] [data=<hex>]
// One record per line, UTF-8, optional fields omitted.
// ---------------------------------------------------------------------------

constexpr const char* kTraceHeader = "#agingtrace v1";

// Streaming validating reader. Rejects on the first malformed record
// with its line number; enforces strictly increasing seq, non-decreasing
// cycle, and the Load/Store field requirements. A zero-byte stream reads
// as an empty sequence; any nonempty stream must start with the header.
class TraceReader {
 public:
  explicit TraceReader(std::istream& in);
  std::optional<TraceEvent> next();

 private:
  std::istream& in_;
  std::size_t line_no_ = 0;
  bool header_seen_ = false;
  bool any_event_ = false;
  std::uint64_t last_seq_ = 0;
  std::uint64_t last_cycle_ = 0;
};

std::vector<TraceEvent> read_trace(std::istream& in);

void write_trace_header(std::ostream& out);
void write_trace_event(std::ostream& out, const TraceEvent& e);
void write_trace(std::ostream& out, const std::vector<TraceEvent>& events);

// ---------------------------------------------------------------------------
// Synthetic workloads
// ---------------------------------------------------------------------------

enum class ProfileName { IntOnly, FpMixed, SmallFootprint, LargeFootprint };
enum class ControlWrites { None, Once, Periodic };
enum class StoreDataMode { Prbs, Constant };

const char* to_string(ProfileName p);
std::optional<ProfileName> profile_name_from_string(const std::string& s);

// Control registers under the Periodic policy are written once every
// this many events.
constexpr std::uint64_t kControlWritePeriod = 65536;

struct WorkloadProfile {
  ProfileName name = ProfileName::IntOnly;
  std::uint64_t length = 0;
  std::uint64_t seed = 1;
  std::uint64_t footprint_bytes = 1u << 20;
  double fp_fraction = 0.0;
  ControlWrites control_reg_writes = ControlWrites::Once;
  unsigned events_per_cycle = 2;  // mean dispatch rate, <= 4
  StoreDataMode store_data = StoreDataMode::Prbs;
  std::uint64_t constant_store_value = 0;

  static WorkloadProfile preset(ProfileName name, std::uint64_t length,
                                std::uint64_t seed);
  void validate() const;
};

// Deterministic generator: same profile + seed gives a byte-identical
// event stream.
class SyntheticGenerator {
 public:
  explicit SyntheticGenerator(WorkloadProfile profile);
  std::optional<TraceEvent> next();
  const WorkloadProfile& profile() const { return profile_; }

 private:
  std::uint64_t rng();

  WorkloadProfile profile_;
  std::uint64_t rng_state_;
  PrbsSource data_prbs_;  // store payloads
  std::uint64_t next_seq_ = 0;
  bool control_written_ = false;
};

std::vector<TraceEvent> gen_synthetic(const WorkloadProfile& profile);

}  // namespace aging

#endif  // AGING_TRACE_HPP
