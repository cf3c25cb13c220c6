#include "aging/report.hpp"

#include <fstream>
#include <ostream>
#include <sstream>

#include "json.hpp"

namespace aging {

using nlohmann::json;

namespace {

std::string hex_id(std::uint64_t v) {
  char buf[19];
  std::snprintf(buf, sizeof buf, "0x%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::uint64_t id_from_hex(const std::string& s) {
  return std::stoull(s, nullptr, 16);
}

double pct_delta(std::uint64_t a, std::uint64_t b) {
  if (a == b) return 0.0;
  if (a == 0) return 100.0;
  return (static_cast<double>(b) - static_cast<double>(a)) /
         static_cast<double>(a) * 100.0;
}

}  // namespace

std::uint64_t StressReport::static_unit_count() const {
  std::uint64_t n = 0;
  for (const UnitReport& u : units)
    if (u.is_static) ++n;
  return n;
}

std::uint64_t StressReport::static_register_slots() const {
  std::uint64_t n = 0;
  for (const RegClassReport& r : reg_classes) n += r.static_slots;
  return n;
}

std::uint64_t StressReport::static_cache_lines() const {
  std::uint64_t n = 0;
  for (const CacheLevelReport& c : cache_levels) n += c.static_lines;
  return n;
}

std::uint64_t StressReport::total_misses() const {
  std::uint64_t n = 0;
  for (const CacheLevelReport& c : cache_levels) n += c.misses;
  return n;
}

std::string report_to_json_text(const StressReport& r, int indent) {
  json units = json::array();
  for (const UnitReport& u : r.units)
    units.push_back(json{{"name", u.name},
                         {"kind", u.kind},
                         {"op_count", u.op_count},
                         {"injected_words", u.injected_words},
                         {"static", u.is_static},
                         {"max_static_interval", u.max_static_interval},
                         {"min_bit_write_count", u.min_bit_write_count},
                         {"bit_max_static_interval", u.bit_max_static_interval}});

  json regs = json::array();
  for (const RegClassReport& c : r.reg_classes)
    regs.push_back(json{{"class", c.name},
                        {"n_regs", c.n_regs},
                        {"rotations", c.rotations},
                        {"static_slots", c.static_slots},
                        {"min_slot_write_count", c.min_slot_write_count},
                        {"max_static_interval", c.max_static_interval}});

  json caches = json::array();
  for (const CacheLevelReport& c : r.cache_levels)
    caches.push_back(json{{"level", c.name},
                          {"sets", c.sets},
                          {"ways", c.ways},
                          {"accesses", c.accesses},
                          {"hits", c.hits},
                          {"misses", c.misses},
                          {"fills", c.fills},
                          {"writebacks", c.writebacks},
                          {"swap_triggers", c.swap_triggers},
                          {"total_lines", c.total_lines},
                          {"static_lines", c.static_lines},
                          {"min_line_write_count", c.min_line_write_count},
                          {"tracked_way_duty_histogram", c.tracked_way_duty_histogram}});

  json tlbs = json::array();
  for (const TlbReport& t : r.tlbs)
    tlbs.push_back(json{{"tlb", t.name},
                        {"entries", t.entries},
                        {"accesses", t.accesses},
                        {"misses", t.misses},
                        {"static_entries", t.static_entries}});

  const json j{
      {"schema", "aging-report v1"},
      {"config", json::parse(r.config_text)},
      {"model_notes",
       json::array(
           {"cache index remapping is charged zero access latency (computed "
            "in a pipeline stage ahead of the cache access)",
            "execution-unit stress is tracked on the 64-bit operand bus "
            "only; unit-internal nets are the netsim subcommand's job",
            "TLBs are observed for static stress but have no mitigation"})},
      {"trace_id", hex_id(r.trace_id)},
      {"baseline_id", hex_id(r.baseline_id)},
      {"totals",
       {{"events", r.events},
        {"trace_span_cycles", r.trace_span_cycles},
        {"stall_cycles", r.stall_cycles},
        {"access_latency_cycles", r.access_latency_cycles},
        {"total_cycles", r.total_cycles},
        {"injection_ticks", r.injection_ticks},
        {"memory_reads", r.memory_reads},
        {"memory_writes", r.memory_writes}}},
      {"units", units},
      {"reg_classes", regs},
      {"cache_levels", caches},
      {"tlbs", tlbs},
  };
  return j.dump(indent);
}

StressReport report_from_json_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("report is not valid JSON: ") + e.what());
  }
  if (!j.contains("schema") || j["schema"] != "aging-report v1")
    throw ConfigError("not an aging-report v1 document");

  StressReport r;
  r.config_text = j.at("config").dump(2);
  r.trace_id = id_from_hex(j.at("trace_id").get<std::string>());
  r.baseline_id = id_from_hex(j.at("baseline_id").get<std::string>());

  const json& t = j.at("totals");
  r.events = t.at("events").get<std::uint64_t>();
  r.trace_span_cycles = t.at("trace_span_cycles").get<std::uint64_t>();
  r.stall_cycles = t.at("stall_cycles").get<std::uint64_t>();
  r.access_latency_cycles = t.at("access_latency_cycles").get<std::uint64_t>();
  r.total_cycles = t.at("total_cycles").get<std::uint64_t>();
  r.injection_ticks = t.at("injection_ticks").get<std::uint64_t>();
  r.memory_reads = t.at("memory_reads").get<std::uint64_t>();
  r.memory_writes = t.at("memory_writes").get<std::uint64_t>();

  for (const json& u : j.at("units")) {
    UnitReport ur;
    ur.name = u.at("name").get<std::string>();
    ur.kind = u.at("kind").get<std::string>();
    ur.op_count = u.at("op_count").get<std::uint64_t>();
    ur.injected_words = u.at("injected_words").get<std::uint64_t>();
    ur.is_static = u.at("static").get<bool>();
    ur.max_static_interval = u.at("max_static_interval").get<std::uint64_t>();
    ur.min_bit_write_count = u.at("min_bit_write_count").get<std::uint64_t>();
    ur.bit_max_static_interval =
        u.at("bit_max_static_interval").get<std::vector<std::uint64_t>>();
    r.units.push_back(std::move(ur));
  }
  for (const json& c : j.at("reg_classes")) {
    RegClassReport rr;
    rr.name = c.at("class").get<std::string>();
    rr.n_regs = c.at("n_regs").get<std::uint32_t>();
    rr.rotations = c.at("rotations").get<std::uint64_t>();
    rr.static_slots = c.at("static_slots").get<std::uint64_t>();
    rr.min_slot_write_count = c.at("min_slot_write_count").get<std::uint64_t>();
    rr.max_static_interval = c.at("max_static_interval").get<std::uint64_t>();
    r.reg_classes.push_back(std::move(rr));
  }
  for (const json& c : j.at("cache_levels")) {
    CacheLevelReport cr;
    cr.name = c.at("level").get<std::string>();
    cr.sets = c.at("sets").get<std::uint32_t>();
    cr.ways = c.at("ways").get<std::uint32_t>();
    cr.accesses = c.at("accesses").get<std::uint64_t>();
    cr.hits = c.at("hits").get<std::uint64_t>();
    cr.misses = c.at("misses").get<std::uint64_t>();
    cr.fills = c.at("fills").get<std::uint64_t>();
    cr.writebacks = c.at("writebacks").get<std::uint64_t>();
    cr.swap_triggers = c.at("swap_triggers").get<std::uint64_t>();
    cr.total_lines = c.at("total_lines").get<std::uint64_t>();
    cr.static_lines = c.at("static_lines").get<std::uint64_t>();
    cr.min_line_write_count = c.at("min_line_write_count").get<std::uint64_t>();
    cr.tracked_way_duty_histogram =
        c.at("tracked_way_duty_histogram").get<std::vector<std::uint64_t>>();
    r.cache_levels.push_back(std::move(cr));
  }
  for (const json& tl : j.at("tlbs")) {
    TlbReport tr;
    tr.name = tl.at("tlb").get<std::string>();
    tr.entries = tl.at("entries").get<std::uint32_t>();
    tr.accesses = tl.at("accesses").get<std::uint64_t>();
    tr.misses = tl.at("misses").get<std::uint64_t>();
    tr.static_entries = tl.at("static_entries").get<std::uint64_t>();
    r.tlbs.push_back(std::move(tr));
  }
  return r;
}

StressReport load_report_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open report file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return report_from_json_text(ss.str());
}

CompareResult compare_reports(const StressReport& a, const StressReport& b) {
  if (a.trace_id != b.trace_id)
    throw ConfigError("reports were produced from different traces");
  if (a.baseline_id != b.baseline_id)
    throw ConfigError("reports differ beyond mitigation toggles");

  CompareResult r;
  r.total_cycles_delta_pct = pct_delta(a.total_cycles, b.total_cycles);
  r.metrics.push_back({"total_cycles", a.total_cycles, b.total_cycles,
                       r.total_cycles_delta_pct});
  r.metrics.push_back({"stall_cycles", a.stall_cycles, b.stall_cycles,
                       pct_delta(a.stall_cycles, b.stall_cycles)});
  r.metrics.push_back({"total_misses", a.total_misses(), b.total_misses(),
                       pct_delta(a.total_misses(), b.total_misses())});
  for (std::size_t i = 0; i < a.cache_levels.size() && i < b.cache_levels.size(); ++i)
    r.metrics.push_back({a.cache_levels[i].name + "_misses",
                         a.cache_levels[i].misses, b.cache_levels[i].misses,
                         pct_delta(a.cache_levels[i].misses, b.cache_levels[i].misses)});
  r.metrics.push_back({"static_units", a.static_unit_count(), b.static_unit_count(),
                       pct_delta(a.static_unit_count(), b.static_unit_count())});
  r.metrics.push_back({"static_register_slots", a.static_register_slots(),
                       b.static_register_slots(),
                       pct_delta(a.static_register_slots(), b.static_register_slots())});
  r.metrics.push_back({"static_cache_lines", a.static_cache_lines(),
                       b.static_cache_lines(),
                       pct_delta(a.static_cache_lines(), b.static_cache_lines())});
  return r;
}

std::string compare_to_json_text(const CompareResult& r, int indent) {
  json metrics = json::array();
  for (const MetricDelta& m : r.metrics)
    metrics.push_back(json{
        {"metric", m.name}, {"a", m.a}, {"b", m.b}, {"delta_pct", m.delta_pct}});
  const json j{{"schema", "aging-compare v1"},
               {"total_cycles_delta_pct", r.total_cycles_delta_pct},
               {"metrics", metrics}};
  return j.dump(indent);
}

void print_compare_summary(std::ostream& out, const CompareResult& r) {
  for (const MetricDelta& m : r.metrics) {
    out << m.name << ": " << m.a << " -> " << m.b << " (";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%+.6f%%", m.delta_pct);
    out << buf << ")\n";
  }
}

void write_report_histograms(const StressReport& r, const std::string& prefix) {
  for (const CacheLevelReport& c : r.cache_levels) {
    if (c.tracked_way_duty_histogram.empty()) continue;
    std::ofstream out(prefix + "_" + c.name + "_duty.csv");
    if (!out) throw ConfigError("cannot write histogram CSV for " + c.name);
    out << "bin_lo,bin_hi,count\n";
    const auto bins = c.tracked_way_duty_histogram.size();
    for (std::size_t b = 0; b < bins; ++b)
      out << static_cast<double>(b) / static_cast<double>(bins) << ','
          << static_cast<double>(b + 1) / static_cast<double>(bins) << ','
          << c.tracked_way_duty_histogram[b] << '\n';
  }
}

}  // namespace aging
