#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sstream>
#include <string>
#include <vector>

#include "aging/netsim.hpp"

using namespace aging;

namespace {

std::string fixture(const char* name) {
  return std::string(AGING_FIXTURE_DIR) + "/" + name;
}

std::uint8_t out_value(const Netlist& n, const std::vector<std::uint8_t>& in,
                       const char* net) {
  const auto values = evaluate(n, in);
  return values[static_cast<std::size_t>(n.net_id(net))];
}

}  // namespace

TEST_CASE("single AND node parses into 2 inputs, 1 node, 1 output") {
  const Netlist n = parse_blif_string(
      ".model t\n.inputs a b\n.outputs y\n.names a b y\n11 1\n.end\n");
  CHECK(n.primary_inputs.size() == 2);
  CHECK(n.primary_outputs.size() == 1);
  CHECK(n.nodes.size() == 1);
}

TEST_CASE("self-reading node is a cycle error") {
  CHECK_THROWS_AS(parse_blif_string(".inputs a\n.outputs y\n"
                                    ".names a y z\n11 1\n"
                                    ".names z y\n1 1\n.end\n"),
                  BlifError);
  // direct self-loop
  CHECK_THROWS_AS(parse_blif_string(".inputs a\n.outputs y\n"
                                    ".names y y\n1 1\n.end\n"),
                  BlifError);
}

TEST_CASE("rca4 fixture: 9 inputs, 8 nodes, 5 outputs") {
  const Netlist n = parse_blif_file(fixture("rca4.blif"));
  CHECK(n.primary_inputs.size() == 9);
  CHECK(n.nodes.size() == 8);
  CHECK(n.primary_outputs.size() == 5);
  CHECK(n.net_count() == 17);
}

TEST_CASE("parse errors carry location and reason") {
  SUBCASE("duplicate driver") {
    CHECK_THROWS_AS(
        parse_blif_string(".inputs a\n.outputs y\n.names a y\n1 1\n.names a y\n0 1\n.end\n"),
        BlifError);
  }
  SUBCASE("undriven net") {
    CHECK_THROWS_AS(
        parse_blif_string(".inputs a\n.outputs y\n.names a ghost y\n11 1\n.end\n"),
        BlifError);
  }
  SUBCASE("malformed cover row width") {
    CHECK_THROWS_AS(
        parse_blif_string(".inputs a b\n.outputs y\n.names a b y\n111 1\n.end\n"),
        BlifError);
  }
  SUBCASE("bad cover character") {
    CHECK_THROWS_AS(
        parse_blif_string(".inputs a b\n.outputs y\n.names a b y\n1x 1\n.end\n"),
        BlifError);
  }
  SUBCASE("mixed on/off rows") {
    CHECK_THROWS_AS(
        parse_blif_string(".inputs a b\n.outputs y\n.names a b y\n11 1\n00 0\n.end\n"),
        BlifError);
  }
  SUBCASE("driving a primary input") {
    CHECK_THROWS_AS(
        parse_blif_string(".inputs a b\n.outputs a\n.names b a\n1 1\n.end\n"),
        BlifError);
  }
  SUBCASE("undriven primary output") {
    CHECK_THROWS_AS(parse_blif_string(".inputs a\n.outputs y\n.end\n"), BlifError);
  }
}

TEST_CASE("evaluate: AND and XOR truth tables") {
  const Netlist and2 = parse_blif_file(fixture("and2.blif"));
  CHECK(out_value(and2, {1, 1}, "y") == 1);
  CHECK(out_value(and2, {1, 0}, "y") == 0);
  CHECK(out_value(and2, {0, 1}, "y") == 0);
  CHECK(out_value(and2, {0, 0}, "y") == 0);

  const Netlist xor2 = parse_blif_file(fixture("xor2.blif"));
  const std::uint8_t expect[4] = {0, 1, 1, 0};
  for (unsigned v = 0; v < 4; ++v)
    CHECK(out_value(xor2, {static_cast<std::uint8_t>(v & 1),
                           static_cast<std::uint8_t>(v >> 1)},
                    "y") == expect[v]);
}

TEST_CASE("evaluate rejects wrong input counts") {
  const Netlist and2 = parse_blif_file(fixture("and2.blif"));
  CHECK_THROWS_AS(evaluate(and2, std::vector<std::uint8_t>{1}), std::invalid_argument);
}

TEST_CASE("ripple-carry fixture adds correctly: 0b0111 + 0b0001") {
  const Netlist rca = parse_blif_file(fixture("rca4.blif"));
  // inputs: a0..a3 b0..b3 cin
  const std::vector<std::uint8_t> in = {1, 1, 1, 0, 1, 0, 0, 0, 0};
  CHECK(out_value(rca, in, "s0") == 0);
  CHECK(out_value(rca, in, "s1") == 0);
  CHECK(out_value(rca, in, "s2") == 0);
  CHECK(out_value(rca, in, "s3") == 1);
  CHECK(out_value(rca, in, "cout") == 0);
}

TEST_CASE("rca4 equals the integer-addition oracle on all 512 vectors") {
  const Netlist rca = parse_blif_file(fixture("rca4.blif"));
  for (unsigned v = 0; v < 512; ++v) {
    std::vector<std::uint8_t> in(9);
    for (unsigned i = 0; i < 9; ++i) in[i] = (v >> i) & 1;
    const unsigned a = v & 0xf, b = (v >> 4) & 0xf, cin = (v >> 8) & 1;
    const unsigned sum = a + b + cin;
    const auto values = evaluate(rca, in);
    for (unsigned bit = 0; bit < 4; ++bit) {
      const auto id = static_cast<std::size_t>(
          rca.net_id(("s" + std::to_string(bit)).c_str()));
      CHECK(values[id] == ((sum >> bit) & 1));
    }
    CHECK(values[static_cast<std::size_t>(rca.net_id("cout"))] == ((sum >> 4) & 1));
  }
}

TEST_CASE("mult2 equals the integer-multiply oracle on all 16 vectors") {
  const Netlist m = parse_blif_file(fixture("mult2.blif"));
  for (unsigned v = 0; v < 16; ++v) {
    std::vector<std::uint8_t> in(4);
    for (unsigned i = 0; i < 4; ++i) in[i] = (v >> i) & 1;
    const unsigned a = v & 3, b = (v >> 2) & 3;
    const unsigned prod = a * b;
    const auto values = evaluate(m, in);
    for (unsigned bit = 0; bit < 4; ++bit) {
      const auto id = static_cast<std::size_t>(
          m.net_id(("p" + std::to_string(bit)).c_str()));
      CHECK(values[id] == ((prod >> bit) & 1));
    }
  }
}

TEST_CASE("probability: inverter under a constant-0 input") {
  const Netlist inv = parse_blif_file(fixture("inv.blif"));
  const auto r = probability_run(inv, StimulusSource::Constant, 1000, 1);
  CHECK(r.nets.cells[static_cast<std::size_t>(inv.net_id("a"))].signal_probability() == 0.0);
  CHECK(r.nets.cells[static_cast<std::size_t>(inv.net_id("y"))].signal_probability() == 1.0);
}

TEST_CASE("probability: exhaustive AND is 0.25, XOR is 0.5") {
  const Netlist and2 = parse_blif_file(fixture("and2.blif"));
  const auto ra = probability_run(and2, StimulusSource::Exhaustive, 0, 1);
  CHECK(ra.n_vectors == 4);
  CHECK(ra.nets.cells[static_cast<std::size_t>(and2.net_id("y"))].signal_probability() ==
        doctest::Approx(0.25));

  const Netlist xor2 = parse_blif_file(fixture("xor2.blif"));
  const auto rx = probability_run(xor2, StimulusSource::Exhaustive, 0, 1);
  CHECK(rx.nets.cells[static_cast<std::size_t>(xor2.net_id("y"))].signal_probability() ==
        doctest::Approx(0.5));
}

TEST_CASE("exhaustive probabilities equal truth-table fractions exactly") {
  // Independent oracle: evaluate() is vetted against integer arithmetic
  // above; count ones per net across every input combination.
  const Netlist m = parse_blif_file(fixture("mult2.blif"));
  std::vector<std::uint64_t> ones(m.net_count(), 0);
  for (unsigned v = 0; v < 16; ++v) {
    std::vector<std::uint8_t> in(4);
    for (unsigned i = 0; i < 4; ++i) in[i] = (v >> i) & 1;
    const auto values = evaluate(m, in);
    for (std::size_t id = 0; id < values.size(); ++id) ones[id] += values[id];
  }
  const auto r = probability_run(m, StimulusSource::Exhaustive, 0, 9);
  for (std::size_t id = 0; id < m.net_count(); ++id)
    CHECK(r.nets.cells[id].signal_probability() ==
          static_cast<double>(ones[id]) / 16.0);
}

TEST_CASE("exhaustive source rejects more than 20 inputs") {
  std::ostringstream big;
  big << ".model big\n.inputs";
  for (int i = 0; i < 21; ++i) big << " x" << i;
  big << "\n.outputs y\n.names";
  for (int i = 0; i < 21; ++i) big << " x" << i;
  big << " y\n";
  for (int i = 0; i < 21; ++i) big << '1';
  big << " 1\n.end\n";
  const Netlist n = parse_blif_string(big.str());
  CHECK_THROWS_AS(probability_run(n, StimulusSource::Exhaustive, 0, 1),
                  std::invalid_argument);
}

TEST_CASE("LFSR stimulus drives input nets to 50% within 2%") {
  const Netlist rca = parse_blif_file(fixture("rca4.blif"));
  const auto r = probability_run(rca, StimulusSource::Lfsr, 100000, 4);
  for (int pi : rca.primary_inputs) {
    const double p = r.nets.cells[static_cast<std::size_t>(pi)].signal_probability();
    CHECK(p >= 0.48);
    CHECK(p <= 0.52);
  }
}

TEST_CASE("constant source leaves every net at probability 0 or 1") {
  const Netlist rca = parse_blif_file(fixture("rca8_padded.blif"));
  const auto r = probability_run(rca, StimulusSource::Constant, 5000, 1, 20, 0x155);
  for (const CellStress& c : r.nets.cells) {
    const double p = c.signal_probability();
    CHECK((p == 0.0 || p == 1.0));
    CHECK(c.toggle_count <= 1);  // at most the initial transition
  }
}

TEST_CASE("forced injection relieves the zero-padding group") {
  Netlist rca = parse_blif_file(fixture("rca8_padded.blif"));
  const auto base = probability_run(rca, StimulusSource::Lfsr, 50000, 4);

  auto out_of_band = [](const ProbabilityRunResult& r) {
    std::uint64_t n = 0;
    for (const CellStress& c : r.nets.cells) {
      const double p = c.signal_probability();
      if (p < 0.3 || p > 0.7) ++n;
    }
    return n;
  };
  const std::uint64_t before = out_of_band(base);
  CHECK(before == 3);  // r9, r10, r11

  rca.set_forced_nets({"r9", "r10", "r11"});
  const auto forced = probability_run(rca, StimulusSource::Lfsr, 50000, 4);
  CHECK(out_of_band(forced) < before);
  for (const char* pad : {"r9", "r10", "r11"}) {
    const double p =
        forced.nets.cells[static_cast<std::size_t>(rca.net_id(pad))].signal_probability();
    CHECK(p >= 0.45);
    CHECK(p <= 0.55);
  }
}

TEST_CASE("unknown forced net is rejected") {
  Netlist and2 = parse_blif_file(fixture("and2.blif"));
  CHECK_THROWS_AS(and2.set_forced_nets({"nope"}), std::invalid_argument);
}

TEST_CASE("histogram and CSV emission") {
  const Netlist and2 = parse_blif_file(fixture("and2.blif"));
  const auto r = probability_run(and2, StimulusSource::Exhaustive, 0, 1, 4);
  std::uint64_t mass = 0;
  for (auto b : r.histogram) mass += b;
  CHECK(mass == and2.net_count());

  std::ostringstream nets, hist;
  write_net_csv(nets, r);
  write_histogram_csv(hist, r);
  CHECK(nets.str().find("net,prob,toggles,max_static_interval\n") == 0);
  CHECK(hist.str().find("bin_lo,bin_hi,count\n") == 0);
  CHECK(nets.str().find("y,0.25") != std::string::npos);
}

TEST_CASE("line continuation and comments parse") {
  const Netlist n = parse_blif_string(
      "# header comment\n.model c\n.inputs a \\\nb\n.outputs y\n"
      ".names a b y  # trailing comment\n11 1\n.end\n");
  CHECK(n.primary_inputs.size() == 2);
  CHECK(out_value(n, {1, 1}, "y") == 1);
}
