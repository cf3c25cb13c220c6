#ifndef AGING_NETSIM_HPP
#define AGING_NETSIM_HPP

#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "aging/prbs.hpp"
#include "aging/stress.hpp"

namespace aging {

class BlifError : public std::runtime_error {
 public:
  BlifError(std::size_t line, const std::string& what)
      : std::runtime_error("blif line " + std::to_string(line) + ": " + what),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Single-output boolean node given as a truth cover. Rows are masks of
// '0'/'1'/'-' over the fanins; the node output is `output_value` when
// any row matches, else its complement. All rows of a node share one
// output value (standard BLIF ON/OFF-set covers).
struct NetNode {
  int output_net = -1;
  std::vector<int> fanins;
  std::vector<std::string> rows;
  bool output_value = true;
  std::size_t line_no = 0;
};

// Combinational netlist parsed from the BLIF subset
// (.model/.inputs/.outputs/.names/.end, '#' comments, '\' continuation).
struct Netlist {
  std::string model_name;
  std::vector<std::string> net_names;  // index = net id
  std::vector<int> primary_inputs;
  std::vector<int> primary_outputs;
  std::vector<NetNode> nodes;
  std::vector<int> topo_order;      // node indices, fanin-first
  std::vector<int> driver_of;       // net id -> node index, -1 for inputs
  std::vector<bool> forced_injection;  // per net

  std::size_t net_count() const { return net_names.size(); }
  int net_id(const std::string& name) const;  // -1 when absent
  void set_forced_nets(const std::vector<std::string>& names);
};

Netlist parse_blif(std::istream& in);
Netlist parse_blif_string(const std::string& text);
Netlist parse_blif_file(const std::string& path);

// Evaluates every net for one input vector (values in primary-input
// declaration order). Pure functional evaluation, no forcing.
std::vector<std::uint8_t> evaluate(const Netlist& n,
                                   std::span<const std::uint8_t> input_values);

enum class StimulusSource { Lfsr, Exhaustive, Constant };
const char* to_string(StimulusSource s);

struct ProbabilityRunResult {
  StructStress nets;  // one finalized cell per net
  std::vector<std::string> net_names;  // aligned with nets.cells
  std::vector<std::uint64_t> histogram;
  std::uint64_t n_vectors = 0;
  int bins = 0;
};

// Drives the netlist for n_vectors cycles from the chosen source and
// accumulates per-net stress. Nets marked forced_injection are
// overridden with fresh PRBS bits before their fanout is evaluated.
//   lfsr:       successive LFSR words feed the inputs
//   exhaustive: all 2^k input vectors (k <= 20); n_vectors ignored
//   constant:   one fixed vector repeated (the unmitigated idle unit)
ProbabilityRunResult probability_run(const Netlist& n, StimulusSource source,
                                     std::uint64_t n_vectors, std::uint64_t seed,
                                     int bins = 20,
                                     std::uint64_t constant_vector = 0);

void write_net_csv(std::ostream& out, const ProbabilityRunResult& r);
void write_histogram_csv(std::ostream& out, const ProbabilityRunResult& r);

}  // namespace aging

#endif  // AGING_NETSIM_HPP
