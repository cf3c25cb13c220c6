#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>
#include <sstream>

#include "aging/trace.hpp"

using namespace aging;

TEST_CASE("zero-byte stream reads as an empty sequence") {
  std::istringstream in("");
  CHECK(read_trace(in).empty());
}

TEST_CASE("nonempty stream must start with the version header") {
  std::istringstream in("seq=0 cycle=0 kind=IntAlu\n");
  CHECK_THROWS_AS(read_trace(in), TraceError);
}

TEST_CASE("header-only stream is an empty trace") {
  std::istringstream in("#agingtrace v1\n");
  CHECK(read_trace(in).empty());
}

TEST_CASE("load without addr is rejected with its line number") {
  std::istringstream in("#agingtrace v1\nseq=0 cycle=0 kind=Load dst=Gpr:1\n");
  try {
    read_trace(in);
    FAIL("expected TraceError");
  } catch (const TraceError& e) {
    CHECK(e.line() == 2);
  }
}

TEST_CASE("store requires a data payload") {
  std::istringstream in("#agingtrace v1\nseq=0 cycle=0 kind=Store addr=0x40\n");
  CHECK_THROWS_AS(read_trace(in), TraceError);
}

TEST_CASE("malformed records are rejected") {
  const char* bad[] = {
      "#agingtrace v1\nseq=x cycle=0 kind=IntAlu\n",
      "#agingtrace v1\nseq=0 cycle=0 kind=Bogus\n",
      "#agingtrace v1\nseq=0 cycle=0\n",
      "#agingtrace v1\nseq=0 cycle=0 kind=IntAlu dst=Gpr\n",
      "#agingtrace v1\nseq=0 cycle=0 kind=IntAlu nonsense\n",
      "#agingtrace v1\nseq=0 cycle=0 kind=IntAlu what=1\n",
  };
  for (const char* text : bad) {
    std::istringstream in(text);
    CHECK_THROWS_AS(read_trace(in), TraceError);
  }
}

TEST_CASE("seq must strictly increase, cycle must not decrease") {
  {
    std::istringstream in(
        "#agingtrace v1\n"
        "seq=0 cycle=5 kind=IntAlu\n"
        "seq=0 cycle=6 kind=IntAlu\n");
    CHECK_THROWS_AS(read_trace(in), TraceError);
  }
  {
    std::istringstream in(
        "#agingtrace v1\n"
        "seq=0 cycle=5 kind=IntAlu\n"
        "seq=1 cycle=4 kind=IntAlu\n");
    CHECK_THROWS_AS(read_trace(in), TraceError);
  }
}

TEST_CASE("round trip: write then read returns the identical sequence") {
  WorkloadProfile p = WorkloadProfile::preset(ProfileName::FpMixed, 5000, 11);
  const auto events = gen_synthetic(p);
  std::ostringstream out;
  write_trace(out, events);
  std::istringstream in(out.str());
  const auto back = read_trace(in);
  REQUIRE(back.size() == events.size());
  CHECK(back == events);
}

TEST_CASE("generator determinism: same profile and seed, identical bytes") {
  WorkloadProfile p = WorkloadProfile::preset(ProfileName::SmallFootprint, 3000, 5);
  std::ostringstream a, b;
  write_trace(a, gen_synthetic(p));
  write_trace(b, gen_synthetic(p));
  CHECK(a.str() == b.str());
}

TEST_CASE("IntOnly emits no FP events") {
  WorkloadProfile p = WorkloadProfile::preset(ProfileName::IntOnly, 20000, 3);
  for (const TraceEvent& e : gen_synthetic(p)) {
    CHECK(e.kind != UnitKind::FpAddSub);
    CHECK(e.kind != UnitKind::FpMulDiv);
  }
}

TEST_CASE("SmallFootprint stays within 256 distinct lines at 16KB") {
  WorkloadProfile p = WorkloadProfile::preset(ProfileName::SmallFootprint, 50000, 9);
  REQUIRE(p.footprint_bytes == 16384);
  std::set<std::uint64_t> lines;
  for (const TraceEvent& e : gen_synthetic(p))
    if (e.mem_addr) lines.insert(*e.mem_addr / kLineBytes);
  CHECK(lines.size() <= 256);
  CHECK(lines.size() > 100);  // the generator should actually use the footprint
}

TEST_CASE("footprint below one cache line is rejected") {
  WorkloadProfile p = WorkloadProfile::preset(ProfileName::IntOnly, 10, 1);
  p.footprint_bytes = 32;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  CHECK_THROWS_AS(gen_synthetic(p), std::invalid_argument);
}

TEST_CASE("fp_fraction contract holds empirically") {
  WorkloadProfile p = WorkloadProfile::preset(ProfileName::FpMixed, 50000, 21);
  REQUIRE(p.fp_fraction == doctest::Approx(0.3));
  std::uint64_t fp = 0;
  const auto events = gen_synthetic(p);
  for (const TraceEvent& e : events)
    if (e.kind == UnitKind::FpAddSub || e.kind == UnitKind::FpMulDiv) ++fp;
  const double freq = static_cast<double>(fp) / static_cast<double>(events.size());
  CHECK(freq == doctest::Approx(0.3).epsilon(0.05));
}

TEST_CASE("IntOnly profile rejects a nonzero fp_fraction") {
  WorkloadProfile p = WorkloadProfile::preset(ProfileName::IntOnly, 10, 1);
  p.fp_fraction = 0.1;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
}

TEST_CASE("control-register write policies") {
  auto count_control = [](ControlWrites policy, std::uint64_t len) {
    WorkloadProfile p = WorkloadProfile::preset(ProfileName::IntOnly, len, 17);
    p.control_reg_writes = policy;
    std::uint64_t n = 0;
    for (const TraceEvent& e : gen_synthetic(p))
      if (e.dst_reg && e.dst_reg->cls == RegClass::Control) ++n;
    return n;
  };
  CHECK(count_control(ControlWrites::None, 10000) == 0);
  CHECK(count_control(ControlWrites::Once, 10000) == 1);
  // Periodic: one per kControlWritePeriod events, starting at seq 0.
  CHECK(count_control(ControlWrites::Periodic, 2 * kControlWritePeriod) == 2);
}

TEST_CASE("constant store data mode emits the configured payload") {
  WorkloadProfile p = WorkloadProfile::preset(ProfileName::IntOnly, 20000, 2);
  p.store_data = StoreDataMode::Constant;
  p.constant_store_value = 0xdeadbeefull;
  bool saw_store = false;
  for (const TraceEvent& e : gen_synthetic(p)) {
    if (e.kind == UnitKind::Store) {
      saw_store = true;
      CHECK(*e.data == 0xdeadbeefull);
    }
  }
  CHECK(saw_store);
}

TEST_CASE("cycles are non-decreasing and respect the dispatch rate") {
  WorkloadProfile p = WorkloadProfile::preset(ProfileName::IntOnly, 10000, 4);
  p.events_per_cycle = 4;
  std::uint64_t prev_cycle = 0;
  std::uint64_t in_cycle = 0;
  for (const TraceEvent& e : gen_synthetic(p)) {
    CHECK(e.cycle >= prev_cycle);
    in_cycle = e.cycle == prev_cycle ? in_cycle + 1 : 1;
    CHECK(in_cycle <= 4);
    prev_cycle = e.cycle;
  }
}
