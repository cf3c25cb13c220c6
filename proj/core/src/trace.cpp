#include "aging/trace.hpp"

#include <array>
#include <charconv>
#include <istream>
#include <ostream>

namespace aging {

namespace {

constexpr std::array<const char*, kUnitKindCount> kKindNames = {
    "IntAlu", "FpAddSub", "FpMulDiv", "Branch", "Load", "Store"};
constexpr std::array<const char*, kRegClassCount> kClassNames = {
    "Gpr", "FpVec", "Control", "Mask", "Segment", "Temp"};
constexpr std::array<const char*, 4> kProfileNames = {
    "int-only", "fp-mixed", "small-footprint", "large-footprint"};

// Synthetic data region base; addresses are 8-byte aligned within
// [base, base + footprint).
constexpr std::uint64_t kDataBase = 0x10000000ull;

// Sanity cap for register indices in trace files.
constexpr std::uint32_t kMaxRegIndex = 4095;

std::uint64_t parse_u64(const std::string& tok, int base, std::size_t line,
                        const char* field) {
  std::uint64_t v = 0;
  const char* first = tok.data();
  const char* last = tok.data() + tok.size();
  if (base == 16 && tok.size() > 2 && tok[0] == '0' &&
      (tok[1] == 'x' || tok[1] == 'X'))
    first += 2;
  auto [p, ec] = std::from_chars(first, last, v, base);
  if (ec != std::errc() || p != last)
    throw TraceError(line, std::string("malformed ") + field + ": '" + tok + "'");
  return v;
}

RegId parse_reg(const std::string& tok, std::size_t line) {
  const auto colon = tok.find(':');
  if (colon == std::string::npos)
    throw TraceError(line, "malformed register '" + tok + "'");
  const auto cls = reg_class_from_string(tok.substr(0, colon));
  if (!cls) throw TraceError(line, "unknown register class in '" + tok + "'");
  const std::uint64_t idx =
      parse_u64(tok.substr(colon + 1), 10, line, "register index");
  if (idx > kMaxRegIndex)
    throw TraceError(line, "register index out of range in '" + tok + "'");
  return RegId{*cls, static_cast<std::uint32_t>(idx)};
}

}  // namespace

const char* to_string(UnitKind k) { return kKindNames[static_cast<int>(k)]; }
const char* to_string(RegClass c) { return kClassNames[static_cast<int>(c)]; }
const char* to_string(ProfileName p) { return kProfileNames[static_cast<int>(p)]; }

std::optional<UnitKind> unit_kind_from_string(const std::string& s) {
  for (int i = 0; i < kUnitKindCount; ++i)
    if (s == kKindNames[static_cast<std::size_t>(i)]) return static_cast<UnitKind>(i);
  return std::nullopt;
}

std::optional<RegClass> reg_class_from_string(const std::string& s) {
  for (int i = 0; i < kRegClassCount; ++i)
    if (s == kClassNames[static_cast<std::size_t>(i)]) return static_cast<RegClass>(i);
  return std::nullopt;
}

std::optional<ProfileName> profile_name_from_string(const std::string& s) {
  for (int i = 0; i < 4; ++i)
    if (s == kProfileNames[static_cast<std::size_t>(i)]) return static_cast<ProfileName>(i);
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Reader / writer
// ---------------------------------------------------------------------------

TraceReader::TraceReader(std::istream& in) : in_(in) {}

std::optional<TraceEvent> TraceReader::next() {
  std::string line;
  while (std::getline(in_, line)) {
    ++line_no_;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!header_seen_) {
      if (line != kTraceHeader)
        throw TraceError(line_no_, std::string("missing header '") +
                                       kTraceHeader + "'");
      header_seen_ = true;
      continue;
    }
    if (line.empty()) continue;
    if (line[0] == '#') continue;

    TraceEvent e;
    bool have_seq = false, have_cycle = false, have_kind = false;
    std::size_t pos = 0;
    while (pos < line.size()) {
      while (pos < line.size() && line[pos] == ' ') ++pos;
      if (pos >= line.size()) break;
      const std::size_t end = line.find(' ', pos);
      const std::string tok =
          line.substr(pos, end == std::string::npos ? end : end - pos);
      pos = end == std::string::npos ? line.size() : end + 1;

      const auto eq = tok.find('=');
      if (eq == std::string::npos)
        throw TraceError(line_no_, "expected key=value, got '" + tok + "'");
      const std::string key = tok.substr(0, eq);
      const std::string val = tok.substr(eq + 1);

      if (key == "seq") {
        e.seq = parse_u64(val, 10, line_no_, "seq");
        have_seq = true;
      } else if (key == "cycle") {
        e.cycle = parse_u64(val, 10, line_no_, "cycle");
        have_cycle = true;
      } else if (key == "kind") {
        const auto k = unit_kind_from_string(val);
        if (!k) throw TraceError(line_no_, "unknown kind '" + val + "'");
        e.kind = *k;
        have_kind = true;
      } else if (key == "dst") {
        e.dst_reg = parse_reg(val, line_no_);
      } else if (key == "srcs") {
        std::size_t p = 0;
        while (p < val.size()) {
          std::size_t comma = val.find(',', p);
          if (comma == std::string::npos) comma = val.size();
          e.src_regs.push_back(parse_reg(val.substr(p, comma - p), line_no_));
          p = comma + 1;
        }
      } else if (key == "addr") {
        e.mem_addr = parse_u64(val, 16, line_no_, "addr");
      } else if (key == "data") {
        e.data = parse_u64(val, 16, line_no_, "data");
      } else {
        throw TraceError(line_no_, "unknown field '" + key + "'");
      }
    }

    if (!have_seq || !have_cycle || !have_kind)
      throw TraceError(line_no_, "record missing seq/cycle/kind");
    if ((e.kind == UnitKind::Load || e.kind == UnitKind::Store) && !e.mem_addr)
      throw TraceError(line_no_, "Load/Store record without addr");
    if (e.kind == UnitKind::Store && !e.data)
      throw TraceError(line_no_, "Store record without data");
    if (any_event_) {
      if (e.seq <= last_seq_)
        throw TraceError(line_no_, "seq not strictly increasing");
      if (e.cycle < last_cycle_)
        throw TraceError(line_no_, "cycle decreased");
    }
    any_event_ = true;
    last_seq_ = e.seq;
    last_cycle_ = e.cycle;
    return e;
  }
  return std::nullopt;
}

std::vector<TraceEvent> read_trace(std::istream& in) {
  TraceReader reader(in);
  std::vector<TraceEvent> out;
  while (auto e = reader.next()) out.push_back(std::move(*e));
  return out;
}

void write_trace_header(std::ostream& out) { out << kTraceHeader << '\n'; }

void write_trace_event(std::ostream& out, const TraceEvent& e) {
  out << "seq=" << e.seq << " cycle=" << e.cycle << " kind=" << to_string(e.kind);
  if (e.dst_reg)
    out << " dst=" << to_string(e.dst_reg->cls) << ':' << e.dst_reg->index;
  if (!e.src_regs.empty()) {
    out << " srcs=";
    for (std::size_t i = 0; i < e.src_regs.size(); ++i) {
      if (i) out << ',';
      out << to_string(e.src_regs[i].cls) << ':' << e.src_regs[i].index;
    }
  }
  char buf[19];
  if (e.mem_addr) {
    auto [p, ec] = std::to_chars(buf, buf + sizeof buf, *e.mem_addr, 16);
    out << " addr=0x" << std::string_view(buf, p);
  }
  if (e.data) {
    auto [p, ec] = std::to_chars(buf, buf + sizeof buf, *e.data, 16);
    out << " data=0x" << std::string_view(buf, p);
  }
  out << '\n';
}

void write_trace(std::ostream& out, const std::vector<TraceEvent>& events) {
  write_trace_header(out);
  for (const TraceEvent& e : events) write_trace_event(out, e);
}

// ---------------------------------------------------------------------------
// Synthetic workloads
// ---------------------------------------------------------------------------

WorkloadProfile WorkloadProfile::preset(ProfileName name, std::uint64_t length,
                                        std::uint64_t seed) {
  WorkloadProfile p;
  p.name = name;
  p.length = length;
  p.seed = seed;
  switch (name) {
    case ProfileName::IntOnly:
      p.footprint_bytes = 1u << 20;
      p.fp_fraction = 0.0;
      break;
    case ProfileName::FpMixed:
      p.footprint_bytes = 1u << 20;
      p.fp_fraction = 0.3;
      break;
    case ProfileName::SmallFootprint:
      p.footprint_bytes = 16u << 10;
      p.fp_fraction = 0.1;
      break;
    case ProfileName::LargeFootprint:
      p.footprint_bytes = 32u << 20;
      p.fp_fraction = 0.1;
      break;
  }
  return p;
}

void WorkloadProfile::validate() const {
  if (footprint_bytes < kLineBytes)
    throw std::invalid_argument("footprint smaller than one cache line");
  if (fp_fraction < 0.0 || fp_fraction > 1.0)
    throw std::invalid_argument("fp_fraction must be in [0, 1]");
  if (name == ProfileName::IntOnly && fp_fraction != 0.0)
    throw std::invalid_argument("IntOnly profile requires fp_fraction = 0");
  if (events_per_cycle < 1 || events_per_cycle > 4)
    throw std::invalid_argument("events_per_cycle must be in [1, 4]");
}

SyntheticGenerator::SyntheticGenerator(WorkloadProfile profile)
    : profile_(profile),
      rng_state_(profile.seed),
      data_prbs_(23, mix64(profile.seed ^ 0x5712ull)) {
  profile_.validate();
}

std::uint64_t SyntheticGenerator::rng() {
  rng_state_ += 0x9e3779b97f4a7c15ull;
  std::uint64_t x = rng_state_;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

std::optional<TraceEvent> SyntheticGenerator::next() {
  if (next_seq_ >= profile_.length) return std::nullopt;

  TraceEvent e;
  e.seq = next_seq_;
  e.cycle = next_seq_ / profile_.events_per_cycle;
  ++next_seq_;

  // Control-register writes take priority over the regular mix.
  const bool control_due =
      (profile_.control_reg_writes == ControlWrites::Once && !control_written_) ||
      (profile_.control_reg_writes == ControlWrites::Periodic &&
       e.seq % kControlWritePeriod == 0);
  if (control_due) {
    control_written_ = true;
    e.kind = UnitKind::IntAlu;
    e.dst_reg = RegId{RegClass::Control, static_cast<std::uint32_t>(rng() % 16)};
    e.src_regs.push_back(RegId{RegClass::Gpr, static_cast<std::uint32_t>(rng() % 16)});
    return e;
  }

  const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  if (u < profile_.fp_fraction) {
    e.kind = (rng() & 1) ? UnitKind::FpAddSub : UnitKind::FpMulDiv;
    e.dst_reg = RegId{RegClass::FpVec, static_cast<std::uint32_t>(rng() % 32)};
    e.src_regs.push_back(RegId{RegClass::FpVec, static_cast<std::uint32_t>(rng() % 32)});
    e.src_regs.push_back(RegId{RegClass::FpVec, static_cast<std::uint32_t>(rng() % 32)});
    return e;
  }

  // Integer mix: IntAlu 55%, Load 18%, Branch 15%, Store 12%.
  const std::uint64_t pick = rng() % 100;
  const std::uint64_t n_lines = profile_.footprint_bytes / kLineBytes;
  if (pick < 55) {
    e.kind = UnitKind::IntAlu;
    // Occasional Temp-class destination, otherwise GPR.
    if (rng() % 20 == 0)
      e.dst_reg = RegId{RegClass::Temp, static_cast<std::uint32_t>(rng() % 16)};
    else
      e.dst_reg = RegId{RegClass::Gpr, static_cast<std::uint32_t>(rng() % 16)};
    e.src_regs.push_back(RegId{RegClass::Gpr, static_cast<std::uint32_t>(rng() % 16)});
    e.src_regs.push_back(RegId{RegClass::Gpr, static_cast<std::uint32_t>(rng() % 16)});
  } else if (pick < 73) {
    e.kind = UnitKind::Load;
    e.dst_reg = RegId{RegClass::Gpr, static_cast<std::uint32_t>(rng() % 16)};
    e.src_regs.push_back(RegId{RegClass::Gpr, static_cast<std::uint32_t>(rng() % 16)});
    e.mem_addr = kDataBase + (rng() % n_lines) * kLineBytes + (rng() % 8) * 8;
  } else if (pick < 88) {
    e.kind = UnitKind::Branch;
    e.src_regs.push_back(RegId{RegClass::Gpr, static_cast<std::uint32_t>(rng() % 16)});
  } else {
    e.kind = UnitKind::Store;
    e.src_regs.push_back(RegId{RegClass::Gpr, static_cast<std::uint32_t>(rng() % 16)});
    e.mem_addr = kDataBase + (rng() % n_lines) * kLineBytes + (rng() % 8) * 8;
    e.data = profile_.store_data == StoreDataMode::Prbs
                 ? data_prbs_.word(64)
                 : profile_.constant_store_value;
  }
  return e;
}

std::vector<TraceEvent> gen_synthetic(const WorkloadProfile& profile) {
  SyntheticGenerator gen(profile);
  std::vector<TraceEvent> out;
  out.reserve(profile.length);
  while (auto e = gen.next()) out.push_back(std::move(*e));
  return out;
}

}  // namespace aging
