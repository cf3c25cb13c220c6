#include "aging/netsim.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

namespace aging {

namespace {

std::vector<std::string> tokenize(const std::string& line) {
  std::vector<std::string> toks;
  std::istringstream ss(line);
  std::string t;
  while (ss >> t) toks.push_back(t);
  return toks;
}

}  // namespace

int Netlist::net_id(const std::string& name) const {
  for (std::size_t i = 0; i < net_names.size(); ++i)
    if (net_names[i] == name) return static_cast<int>(i);
  return -1;
}

void Netlist::set_forced_nets(const std::vector<std::string>& names) {
  for (const std::string& name : names) {
    const int id = net_id(name);
    if (id < 0)
      throw std::invalid_argument("forced injection net '" + name +
                                  "' not in netlist");
    forced_injection[static_cast<std::size_t>(id)] = true;
  }
}

Netlist parse_blif(std::istream& in) {
  Netlist nl;
  std::map<std::string, int> ids;
  auto intern = [&](const std::string& name) {
    auto [it, fresh] = ids.emplace(name, static_cast<int>(nl.net_names.size()));
    if (fresh) nl.net_names.push_back(name);
    return it->second;
  };

  std::vector<std::string> output_names;
  bool in_names = false;
  bool saw_end = false;
  std::size_t line_no = 0;

  std::string raw;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::size_t first_line = line_no;
    // '\' continuation
    while (!raw.empty() && raw.back() == '\\') {
      raw.pop_back();
      std::string more;
      if (!std::getline(in, more)) break;
      ++line_no;
      raw += ' ' + more;
    }
    if (const auto hash = raw.find('#'); hash != std::string::npos)
      raw.resize(hash);
    const auto toks = tokenize(raw);
    if (toks.empty()) continue;
    if (saw_end)
      throw BlifError(first_line, "content after .end");

    if (toks[0][0] == '.') {
      in_names = false;
      if (toks[0] == ".model") {
        if (toks.size() > 1) nl.model_name = toks[1];
      } else if (toks[0] == ".inputs") {
        for (std::size_t i = 1; i < toks.size(); ++i) {
          const int id = intern(toks[i]);
          if (std::find(nl.primary_inputs.begin(), nl.primary_inputs.end(), id) !=
              nl.primary_inputs.end())
            throw BlifError(first_line, "duplicate input '" + toks[i] + "'");
          nl.primary_inputs.push_back(id);
        }
      } else if (toks[0] == ".outputs") {
        for (std::size_t i = 1; i < toks.size(); ++i) output_names.push_back(toks[i]);
      } else if (toks[0] == ".names") {
        if (toks.size() < 2)
          throw BlifError(first_line, ".names without an output net");
        NetNode node;
        node.line_no = first_line;
        for (std::size_t i = 1; i + 1 < toks.size(); ++i)
          node.fanins.push_back(intern(toks[i]));
        node.output_net = intern(toks.back());
        nl.nodes.push_back(std::move(node));
        in_names = true;
      } else if (toks[0] == ".end") {
        saw_end = true;
      } else {
        throw BlifError(first_line, "unsupported directive '" + toks[0] + "'");
      }
      continue;
    }

    if (!in_names)
      throw BlifError(first_line, "cover row outside a .names block");

    // Cover row: "<mask> <value>" for n >= 1 fanins, "<value>" for none.
    NetNode& node = nl.nodes.back();
    std::string mask;
    std::string value;
    if (node.fanins.empty()) {
      if (toks.size() != 1)
        throw BlifError(first_line, "constant node row must be a single value");
      value = toks[0];
    } else {
      if (toks.size() != 2)
        throw BlifError(first_line, "cover row must be '<mask> <value>'");
      mask = toks[0];
      value = toks[1];
    }
    if (mask.size() != node.fanins.size())
      throw BlifError(first_line, "cover row width does not match fanin count");
    for (char ch : mask)
      if (ch != '0' && ch != '1' && ch != '-')
        throw BlifError(first_line, std::string("bad cover character '") + ch + "'");
    if (value != "0" && value != "1")
      throw BlifError(first_line, "cover output must be 0 or 1");
    const bool v = value == "1";
    if (!node.rows.empty() && v != node.output_value)
      throw BlifError(first_line, "mixed ON/OFF-set rows in one node");
    node.output_value = v;
    node.rows.push_back(mask);
  }

  // Drivers: every non-input net has exactly one.
  nl.driver_of.assign(nl.net_count(), -1);
  std::vector<bool> is_input(nl.net_count(), false);
  for (int id : nl.primary_inputs) is_input[static_cast<std::size_t>(id)] = true;
  for (std::size_t i = 0; i < nl.nodes.size(); ++i) {
    const NetNode& node = nl.nodes[i];
    const auto out = static_cast<std::size_t>(node.output_net);
    if (is_input[out])
      throw BlifError(node.line_no,
                      "node drives primary input '" + nl.net_names[out] + "'");
    if (nl.driver_of[out] >= 0)
      throw BlifError(node.line_no,
                      "duplicate driver for net '" + nl.net_names[out] + "'");
    nl.driver_of[out] = static_cast<int>(i);
  }
  for (std::size_t i = 0; i < nl.nodes.size(); ++i)
    for (int f : nl.nodes[i].fanins)
      if (!is_input[static_cast<std::size_t>(f)] &&
          nl.driver_of[static_cast<std::size_t>(f)] < 0)
        throw BlifError(nl.nodes[i].line_no,
                        "undriven net '" + nl.net_names[static_cast<std::size_t>(f)] + "'");
  for (const std::string& name : output_names) {
    const int id = nl.net_id(name);
    if (id < 0 || (!is_input[static_cast<std::size_t>(id)] &&
                   nl.driver_of[static_cast<std::size_t>(id)] < 0))
      throw BlifError(line_no, "undriven output net '" + name + "'");
    nl.primary_outputs.push_back(id);
  }

  // Kahn topological sort; leftovers mean a combinational cycle.
  std::vector<int> fanin_pending(nl.nodes.size(), 0);
  std::vector<std::vector<int>> dependents(nl.net_count());
  for (std::size_t i = 0; i < nl.nodes.size(); ++i) {
    for (int f : nl.nodes[i].fanins) {
      if (is_input[static_cast<std::size_t>(f)]) continue;
      ++fanin_pending[i];
      dependents[static_cast<std::size_t>(f)].push_back(static_cast<int>(i));
    }
  }
  std::vector<int> ready;
  for (std::size_t i = 0; i < nl.nodes.size(); ++i)
    if (fanin_pending[i] == 0) ready.push_back(static_cast<int>(i));
  while (!ready.empty()) {
    const int i = ready.back();
    ready.pop_back();
    nl.topo_order.push_back(i);
    for (int dep : dependents[static_cast<std::size_t>(nl.nodes[static_cast<std::size_t>(i)].output_net)])
      if (--fanin_pending[static_cast<std::size_t>(dep)] == 0) ready.push_back(dep);
  }
  if (nl.topo_order.size() != nl.nodes.size()) {
    for (std::size_t i = 0; i < nl.nodes.size(); ++i)
      if (fanin_pending[i] > 0)
        throw BlifError(nl.nodes[i].line_no,
                        "combinational cycle through net '" +
                            nl.net_names[static_cast<std::size_t>(nl.nodes[i].output_net)] + "'");
  }

  nl.forced_injection.assign(nl.net_count(), false);
  return nl;
}

Netlist parse_blif_string(const std::string& text) {
  std::istringstream ss(text);
  return parse_blif(ss);
}

Netlist parse_blif_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open blif file: " + path);
  return parse_blif(in);
}

namespace {

bool row_matches(const std::string& mask, const NetNode& node,
                 const std::vector<std::uint8_t>& values) {
  for (std::size_t i = 0; i < mask.size(); ++i) {
    if (mask[i] == '-') continue;
    const std::uint8_t want = mask[i] == '1';
    if (values[static_cast<std::size_t>(node.fanins[i])] != want) return false;
  }
  return true;
}

std::uint8_t eval_node(const NetNode& node, const std::vector<std::uint8_t>& values) {
  bool any = false;
  for (const std::string& mask : node.rows) {
    if (row_matches(mask, node, values)) {
      any = true;
      break;
    }
  }
  return node.output_value ? any : !any;
}

}  // namespace

std::vector<std::uint8_t> evaluate(const Netlist& n,
                                   std::span<const std::uint8_t> input_values) {
  if (input_values.size() != n.primary_inputs.size())
    throw std::invalid_argument("evaluate: wrong number of input assignments");
  std::vector<std::uint8_t> values(n.net_count(), 0);
  for (std::size_t i = 0; i < n.primary_inputs.size(); ++i)
    values[static_cast<std::size_t>(n.primary_inputs[i])] = input_values[i] & 1;
  for (int ni : n.topo_order) {
    const NetNode& node = n.nodes[static_cast<std::size_t>(ni)];
    values[static_cast<std::size_t>(node.output_net)] = eval_node(node, values);
  }
  return values;
}

const char* to_string(StimulusSource s) {
  switch (s) {
    case StimulusSource::Lfsr: return "lfsr";
    case StimulusSource::Exhaustive: return "exhaustive";
    case StimulusSource::Constant: return "constant";
  }
  return "?";
}

ProbabilityRunResult probability_run(const Netlist& n, StimulusSource source,
                                     std::uint64_t n_vectors, std::uint64_t seed,
                                     int bins, std::uint64_t constant_vector) {
  const std::size_t k = n.primary_inputs.size();
  if (source == StimulusSource::Exhaustive) {
    if (k > 20)
      throw std::invalid_argument("exhaustive source limited to 20 inputs");
    n_vectors = 1ull << k;
  }
  if (n_vectors == 0) throw std::invalid_argument("n_vectors must be >= 1");

  PrbsSource input_prbs(23, mix64(seed ^ 0x1a5) | 1);
  PrbsSource force_prbs(23, mix64(seed ^ 0xf07) | 1);

  ProbabilityRunResult result;
  result.nets.name = n.model_name.empty() ? "netlist" : n.model_name;
  result.nets.granularity = StressGranularity::PerBit;
  result.nets.cells.resize(n.net_count());
  result.net_names = n.net_names;
  result.n_vectors = n_vectors;
  result.bins = bins;

  std::vector<std::uint8_t> inputs(k, 0);
  std::vector<std::uint8_t> values(n.net_count(), 0);

  for (std::uint64_t v = 0; v < n_vectors; ++v) {
    switch (source) {
      case StimulusSource::Lfsr:
        for (std::size_t i = 0; i < k; i += 64) {
          const int chunk = static_cast<int>(std::min<std::size_t>(64, k - i));
          const std::uint64_t w = input_prbs.word(chunk);
          for (int b = 0; b < chunk; ++b)
            inputs[i + static_cast<std::size_t>(b)] =
                static_cast<std::uint8_t>((w >> b) & 1);
        }
        break;
      case StimulusSource::Exhaustive:
        for (std::size_t i = 0; i < k; ++i)
          inputs[i] = static_cast<std::uint8_t>((v >> i) & 1);
        break;
      case StimulusSource::Constant:
        for (std::size_t i = 0; i < k; ++i)
          inputs[i] = static_cast<std::uint8_t>((constant_vector >> i) & 1);
        break;
    }

    // Inline evaluation with forced-injection overrides applied before
    // fanout is computed.
    for (std::size_t i = 0; i < k; ++i) {
      const auto id = static_cast<std::size_t>(n.primary_inputs[i]);
      values[id] = n.forced_injection[id]
                       ? static_cast<std::uint8_t>(force_prbs.bit())
                       : inputs[i];
    }
    for (int ni : n.topo_order) {
      const NetNode& node = n.nodes[static_cast<std::size_t>(ni)];
      const auto out = static_cast<std::size_t>(node.output_net);
      values[out] = n.forced_injection[out]
                        ? static_cast<std::uint8_t>(force_prbs.bit())
                        : eval_node(node, values);
    }
    for (std::size_t id = 0; id < values.size(); ++id)
      result.nets.cells[id].observe(v, values[id]);
  }

  for (CellStress& c : result.nets.cells) c.finalize(n_vectors);
  result.histogram = signal_probability_histogram(result.nets, bins);
  return result;
}

void write_net_csv(std::ostream& out, const ProbabilityRunResult& r) {
  out << "net,prob,toggles,max_static_interval\n";
  for (std::size_t i = 0; i < r.nets.cells.size(); ++i) {
    const CellStress& c = r.nets.cells[i];
    out << r.net_names[i] << ',' << c.signal_probability() << ','
        << c.toggle_count << ',' << c.max_static_interval << '\n';
  }
}

void write_histogram_csv(std::ostream& out, const ProbabilityRunResult& r) {
  out << "bin_lo,bin_hi,count\n";
  for (int b = 0; b < r.bins; ++b) {
    out << static_cast<double>(b) / r.bins << ','
        << static_cast<double>(b + 1) / r.bins << ','
        << r.histogram[static_cast<std::size_t>(b)] << '\n';
  }
}

}  // namespace aging
