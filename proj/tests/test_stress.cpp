#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <vector>

#include "aging/prbs.hpp"
#include "aging/stress.hpp"

using namespace aging;

TEST_CASE("constant value: two writes of 0, finalize at 200") {
  CellStress c;
  c.observe(0, 0);
  c.observe(100, 0);
  c.finalize(200);
  CHECK(c.write_count == 2);
  CHECK(c.toggle_count == 0);
  CHECK(c.time_at_zero == 200);
  CHECK(c.time_at_one == 0);
  CHECK(c.signal_probability() == 0.0);
}

TEST_CASE("half duty: 0 at 0, 1 at 100, finalize at 200") {
  CellStress c;
  c.observe(0, 0);
  c.observe(100, 1);
  c.finalize(200);
  CHECK(c.time_at_zero == 100);
  CHECK(c.time_at_one == 100);
  CHECK(c.toggle_count == 1);
  CHECK(c.signal_probability() == doctest::Approx(0.5));
}

TEST_CASE("alternating every cycle keeps max static interval at 1") {
  CellStress c;
  const int n = 64;
  for (int t = 0; t < 2 * n; ++t) c.observe(static_cast<std::uint64_t>(t), t & 1);
  c.finalize(2 * n);
  CHECK(c.max_static_interval == 1);
  CHECK(c.toggle_count == 2 * n - 1);
}

TEST_CASE("never-written cell: span credited to zero, full static run") {
  CellStress c;
  c.finalize(1000);
  CHECK(c.write_count == 0);
  CHECK(c.max_static_interval == 1000);
  CHECK(c.time_at_zero == 1000);
  CHECK(c.signal_probability() == 0.0);
}

TEST_CASE("single write of 1 at cycle 0, probability 1") {
  CellStress c;
  c.observe(0, 1);
  c.finalize(500);
  CHECK(c.signal_probability() == 1.0);
  CHECK(c.max_static_interval == 500);
}

TEST_CASE("finalize at the last event cycle credits nothing") {
  CellStress c;
  c.observe(0, 1);
  c.observe(100, 0);
  c.finalize(100);
  CHECK(c.time_at_one == 100);
  CHECK(c.time_at_zero == 0);
}

TEST_CASE("double finalize and non-monotonic observe are harness bugs") {
  CellStress c;
  c.observe(10, 1);
  SUBCASE("double finalize") {
    c.finalize(20);
    CHECK_THROWS_AS(c.finalize(30), SimOrderError);
  }
  SUBCASE("non-monotonic observe") {
    CHECK_THROWS_AS(c.observe(5, 0), SimOrderError);
  }
  SUBCASE("observe after finalize") {
    c.finalize(20);
    CHECK_THROWS_AS(c.observe(25, 0), SimOrderError);
  }
}

TEST_CASE("is_static criterion: written at most once") {
  CHECK(is_static(0));
  CHECK(is_static(1));
  CHECK_FALSE(is_static(2));
  CHECK_FALSE(is_static(100));
}

TEST_CASE("conservation: time buckets sum to the span exactly") {
  // Hand-rolled generator over mixed strides and values.
  PrbsSource src(15, 7);
  for (int trial = 0; trial < 20; ++trial) {
    CellStress c;
    std::uint64_t t = 0;
    const int events = 200 + trial * 13;
    for (int i = 0; i < events; ++i) {
      t += src.word(5) % 97;
      c.observe(t, static_cast<unsigned>(src.bit()));
    }
    const std::uint64_t end = t + src.word(6);
    c.finalize(end);
    CHECK(c.time_at_one + c.time_at_zero == end);
    CHECK(c.toggle_count <= c.write_count);
    CHECK(c.max_static_interval <= end);
  }
}

TEST_CASE("merging: one pass equals two concatenated passes") {
  PrbsSource src(15, 99);
  std::vector<std::pair<std::uint64_t, unsigned>> events;
  std::uint64_t t = 0;
  for (int i = 0; i < 300; ++i) {
    t += src.word(4) % 13;
    events.push_back({t, src.bit()});
  }
  CellStress whole;
  for (auto [cycle, v] : events) whole.observe(cycle, v);

  CellStress split;
  const std::size_t cut = events.size() / 3;
  for (std::size_t i = 0; i < cut; ++i) split.observe(events[i].first, events[i].second);
  for (std::size_t i = cut; i < events.size(); ++i)
    split.observe(events[i].first, events[i].second);

  whole.finalize(t + 5);
  split.finalize(t + 5);
  CHECK(whole.time_at_one == split.time_at_one);
  CHECK(whole.time_at_zero == split.time_at_zero);
  CHECK(whole.toggle_count == split.toggle_count);
  CHECK(whole.write_count == split.write_count);
  CHECK(whole.max_static_interval == split.max_static_interval);
}

TEST_CASE("histogram: constant-0 cells all land in the first bin") {
  std::vector<CellStress> cells(16);
  for (auto& c : cells) {
    c.observe(0, 0);
    c.finalize(100);
  }
  const auto hist = signal_probability_histogram(std::span<const CellStress>(cells), 10);
  CHECK(hist[0] == 16);
  std::uint64_t mass = 0;
  for (auto b : hist) mass += b;
  CHECK(mass == 16);
}

TEST_CASE("histogram edge rule: p=0.5 with 10 bins lands in [0.5,0.6)") {
  CellStress c;
  c.observe(0, 0);
  c.observe(50, 1);
  c.finalize(100);
  std::vector<CellStress> cells{c};
  const auto hist = signal_probability_histogram(std::span<const CellStress>(cells), 10);
  CHECK(hist[5] == 1);
}

TEST_CASE("histogram: p=1.0 lands in the closed last bin") {
  CellStress c;
  c.observe(0, 1);
  c.finalize(100);
  std::vector<CellStress> cells{c};
  const auto hist = signal_probability_histogram(std::span<const CellStress>(cells), 10);
  CHECK(hist[9] == 1);
}

TEST_CASE("histogram rejects unfinalized cells and too few bins") {
  std::vector<CellStress> cells(2);
  CHECK_THROWS_AS(
      signal_probability_histogram(std::span<const CellStress>(cells), 10),
      std::logic_error);
  cells.clear();
  CHECK_THROWS_AS(
      signal_probability_histogram(std::span<const CellStress>(cells), 1),
      std::invalid_argument);
}

TEST_CASE("PRBS-driven 8-bit register sits near 50% duty") {
  std::vector<CellStress> cells(8);
  PrbsSource src(15, 3);
  const std::uint64_t cycles = 20000;
  for (std::uint64_t t = 0; t < cycles; ++t) {
    const std::uint64_t w = src.word(8);
    for (int b = 0; b < 8; ++b)
      cells[static_cast<std::size_t>(b)].observe(t, static_cast<unsigned>((w >> b) & 1));
  }
  for (auto& c : cells) c.finalize(cycles);
  for (const auto& c : cells) {
    CHECK(c.signal_probability() >= 0.45);
    CHECK(c.signal_probability() <= 0.55);
  }
}

TEST_CASE("StructStress static-entry counting") {
  StructStress s;
  s.name = "fixture";
  s.granularity = StressGranularity::PerEntry;
  s.entry_write_counts = {0, 1, 2, 3, 1, 0};
  CHECK(s.static_entry_count() == 4);
}
