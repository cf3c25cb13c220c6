// aging-bench: trace-driven BTI static-stress simulator and mitigation
// testbed. Subcommands:
//   gen      write a synthetic workload trace
//   run      simulate a trace through the core + memory model
//   compare  A/B deltas between two runs of the same trace
//   netsim   signal-probability measurement on a BLIF netlist
//
// Exit codes: 0 ok, 1 config/usage error, 2 trace error, 3 internal error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "aging/config.hpp"
#include "aging/netsim.hpp"
#include "aging/report.hpp"
#include "aging/sim.hpp"
#include "aging/trace.hpp"

namespace {

// Lengths like "1e6" are accepted alongside plain integers.
std::uint64_t parse_count(const std::string& s) {
  try {
    std::size_t pos = 0;
    const double d = std::stod(s, &pos);
    if (pos != s.size() || d < 0 || d > 1.8e19)
      throw aging::ConfigError("bad count: " + s);
    return static_cast<std::uint64_t>(d);
  } catch (const std::invalid_argument&) {
    throw aging::ConfigError("bad count: " + s);
  }
}

int cmd_gen(const std::string& profile_name, const std::string& len,
            std::uint64_t seed, const std::string& out_path,
            const std::string& footprint, double fp_fraction,
            const std::string& control, unsigned events_per_cycle,
            const std::string& store_data, std::uint64_t constant_value) {
  const auto name = aging::profile_name_from_string(profile_name);
  if (!name) throw aging::ConfigError("unknown profile: " + profile_name);

  aging::WorkloadProfile p =
      aging::WorkloadProfile::preset(*name, parse_count(len), seed);
  if (!footprint.empty()) p.footprint_bytes = parse_count(footprint);
  if (fp_fraction >= 0) p.fp_fraction = fp_fraction;
  if (control == "none")
    p.control_reg_writes = aging::ControlWrites::None;
  else if (control == "once")
    p.control_reg_writes = aging::ControlWrites::Once;
  else if (control == "periodic")
    p.control_reg_writes = aging::ControlWrites::Periodic;
  else if (!control.empty())
    throw aging::ConfigError("control must be none|once|periodic");
  if (events_per_cycle) p.events_per_cycle = events_per_cycle;
  if (store_data == "prbs")
    p.store_data = aging::StoreDataMode::Prbs;
  else if (store_data == "constant")
    p.store_data = aging::StoreDataMode::Constant;
  else if (!store_data.empty())
    throw aging::ConfigError("store-data must be prbs|constant");
  p.constant_store_value = constant_value;
  try {
    p.validate();
  } catch (const std::invalid_argument& e) {
    throw aging::ConfigError(e.what());
  }

  std::ofstream out(out_path);
  if (!out) throw aging::ConfigError("cannot open output file: " + out_path);
  aging::write_trace_header(out);
  aging::SyntheticGenerator gen(p);
  while (auto e = gen.next()) aging::write_trace_event(out, *e);
  return 0;
}

int cmd_run(const std::string& config_path, const std::string& seed_override,
            const std::string& out_path, const std::string& hist_prefix) {
  aging::ExperimentConfig cfg = aging::load_config_file(config_path);
  if (!seed_override.empty()) {
    cfg.seed = parse_count(seed_override);
    cfg.hierarchy.seed = cfg.seed;
    if (cfg.trace.synthetic) cfg.trace.profile.seed = cfg.seed;
  }

  const aging::StressReport report = aging::run_experiment(cfg);
  const std::string text = aging::report_to_json_text(report);
  if (out_path.empty()) {
    std::cout << text << '\n';
  } else {
    std::ofstream out(out_path);
    if (!out) throw aging::ConfigError("cannot open output file: " + out_path);
    out << text << '\n';
  }
  if (!hist_prefix.empty()) aging::write_report_histograms(report, hist_prefix);
  return 0;
}

int cmd_compare(const std::string& a_path, const std::string& b_path,
                const std::string& out_path) {
  const aging::StressReport a = aging::load_report_file(a_path);
  const aging::StressReport b = aging::load_report_file(b_path);
  const aging::CompareResult r = aging::compare_reports(a, b);
  aging::print_compare_summary(std::cout, r);
  if (!out_path.empty()) {
    std::ofstream out(out_path);
    if (!out) throw aging::ConfigError("cannot open output file: " + out_path);
    out << aging::compare_to_json_text(r) << '\n';
  }
  return 0;
}

int cmd_netsim(const std::string& blif_path, const std::string& source_name,
               const std::string& vectors, std::uint64_t seed,
               const std::vector<std::string>& forced, int bins,
               std::uint64_t constant_vector, const std::string& out_prefix) {
  aging::StimulusSource source;
  if (source_name == "lfsr")
    source = aging::StimulusSource::Lfsr;
  else if (source_name == "exhaustive")
    source = aging::StimulusSource::Exhaustive;
  else if (source_name == "constant")
    source = aging::StimulusSource::Constant;
  else
    throw aging::ConfigError("source must be lfsr|exhaustive|constant");

  aging::Netlist netlist = aging::parse_blif_file(blif_path);
  try {
    netlist.set_forced_nets(forced);
  } catch (const std::invalid_argument& e) {
    throw aging::ConfigError(e.what());
  }

  const aging::ProbabilityRunResult result = aging::probability_run(
      netlist, source, parse_count(vectors), seed, bins, constant_vector);

  std::ofstream nets_out(out_prefix + "_nets.csv");
  if (!nets_out)
    throw aging::ConfigError("cannot write " + out_prefix + "_nets.csv");
  aging::write_net_csv(nets_out, result);
  std::ofstream hist_out(out_prefix + "_hist.csv");
  if (!hist_out)
    throw aging::ConfigError("cannot write " + out_prefix + "_hist.csv");
  aging::write_histogram_csv(hist_out, result);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"asymmetric-aging stress simulator"};
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "write a synthetic workload trace");
  std::string gen_profile = "int-only", gen_len = "1e6", gen_out;
  std::string gen_footprint, gen_control, gen_store_data;
  std::uint64_t gen_seed = 1, gen_constant = 0;
  double gen_fp_fraction = -1;
  unsigned gen_epc = 0;
  gen->add_option("--profile", gen_profile,
                  "int-only|fp-mixed|small-footprint|large-footprint");
  gen->add_option("--len", gen_len, "event count (1e6 style accepted)");
  gen->add_option("--seed", gen_seed, "generator seed");
  gen->add_option("--out", gen_out, "output trace file")->required();
  gen->add_option("--footprint", gen_footprint, "data footprint in bytes");
  gen->add_option("--fp-fraction", gen_fp_fraction, "FP event fraction override");
  gen->add_option("--control", gen_control, "control-reg writes: none|once|periodic");
  gen->add_option("--events-per-cycle", gen_epc, "mean dispatch rate (1..4)");
  gen->add_option("--store-data", gen_store_data, "prbs|constant");
  gen->add_option("--constant-value", gen_constant, "payload for --store-data constant");

  // run
  auto* run = app.add_subcommand("run", "run one experiment");
  std::string run_config, run_seed, run_out, run_hist;
  run->add_option("--config", run_config, "experiment config JSON")->required();
  run->add_option("--seed", run_seed, "seed override");
  run->add_option("--out", run_out, "report JSON path (stdout when omitted)");
  run->add_option("--hist-csv", run_hist, "prefix for duty-histogram CSVs");

  // compare
  auto* cmp = app.add_subcommand("compare", "A/B overhead comparison");
  std::string cmp_a, cmp_b, cmp_out;
  cmp->add_option("--a", cmp_a, "baseline report JSON")->required();
  cmp->add_option("--b", cmp_b, "comparison report JSON")->required();
  cmp->add_option("--out", cmp_out, "comparison JSON path");

  // netsim
  auto* net = app.add_subcommand("netsim", "netlist signal-probability run");
  std::string net_blif, net_source = "lfsr", net_vectors = "1e6", net_prefix;
  std::uint64_t net_seed = 1, net_constant = 0;
  std::vector<std::string> net_forced;
  int net_bins = 20;
  net->add_option("--blif", net_blif, "BLIF netlist file")->required();
  net->add_option("--source", net_source, "lfsr|exhaustive|constant");
  net->add_option("--vectors", net_vectors, "vector count for lfsr/constant");
  net->add_option("--seed", net_seed, "stimulus seed");
  net->add_option("--force", net_forced,
                  "nets overridden with PRBS bits (repeatable)")
      ->delimiter(',');
  net->add_option("--bins", net_bins, "histogram bins");
  net->add_option("--constant-vector", net_constant, "input vector for constant source");
  net->add_option("--out-prefix", net_prefix, "CSV output prefix")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed())
      return cmd_gen(gen_profile, gen_len, gen_seed, gen_out, gen_footprint,
                     gen_fp_fraction, gen_control, gen_epc, gen_store_data,
                     gen_constant);
    if (run->parsed()) return cmd_run(run_config, run_seed, run_out, run_hist);
    if (cmp->parsed()) return cmd_compare(cmp_a, cmp_b, cmp_out);
    if (net->parsed())
      return cmd_netsim(net_blif, net_source, net_vectors, net_seed, net_forced,
                        net_bins, net_constant, net_prefix);
  } catch (const aging::TraceError& e) {
    std::cerr << "trace error: " << e.what() << '\n';
    return 2;
  } catch (const aging::BlifError& e) {
    std::cerr << "netlist error: " << e.what() << '\n';
    return 1;
  } catch (const aging::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 3;
  }
  return 0;
}
