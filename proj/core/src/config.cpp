#include "aging/config.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace aging {

using nlohmann::json;

namespace {

const char* reg_class_key(int i) { return to_string(static_cast<RegClass>(i)); }

[[noreturn]] void fail(const std::string& msg) { throw ConfigError(msg); }

void check_keys(const json& j, std::initializer_list<const char*> allowed,
                const char* section) {
  for (const auto& [key, value] : j.items()) {
    bool ok = false;
    for (const char* a : allowed)
      if (key == a) ok = true;
    if (!ok) fail(std::string("unknown key '") + key + "' in " + section);
  }
}

template <typename T>
void get_to(const json& j, const char* key, T& out) {
  if (const auto it = j.find(key); it != j.end()) it->get_to(out);
}

CacheGeometry geometry_from(const json& j, const CacheGeometry& defaults,
                            const char* section) {
  CacheGeometry g = defaults;
  check_keys(j, {"size_bytes", "ways", "latency_cycles"}, section);
  get_to(j, "size_bytes", g.size_bytes);
  get_to(j, "ways", g.ways);
  get_to(j, "latency_cycles", g.access_latency_cycles);
  return g;
}

json geometry_to(const CacheGeometry& g) {
  return json{{"size_bytes", g.size_bytes},
              {"ways", g.ways},
              {"latency_cycles", g.access_latency_cycles}};
}

}  // namespace

void ExperimentConfig::validate() const {
  if (dispatch_width < 1) fail("dispatch_width must be >= 1");
  if (injection_period_cycles < 1) fail("injection_period_cycles must be >= 1");
  if (rotation_period_cycles < 1) fail("rotation_period_cycles must be >= 1");
  if (hierarchy.swap_period_accesses < 1) fail("swap_period_accesses must be >= 1");
  if (histogram_bins < 2) fail("histogram_bins must be >= 2");
  if (code_footprint_bytes < kLineBytes) fail("code_footprint_bytes below one line");
  for (std::uint32_t n : reg_class_sizes)
    if (n < 1) fail("every register class needs >= 1 register");
  try {
    hierarchy.l1d.validate();
    hierarchy.l1i.validate();
    hierarchy.l2.validate();
    hierarchy.l3.validate();
    if (trace.synthetic) trace.profile.validate();
  } catch (const std::invalid_argument& e) {
    fail(e.what());
  }
  if (!trace.synthetic && trace.path.empty()) fail("trace.source=file needs a path");
  bool kind_covered[kUnitKindCount] = {};
  for (const UnitConfig& u : units) {
    if (u.count < 1 || u.latency_cycles < 1)
      fail("unit count and latency must be >= 1");
    kind_covered[static_cast<int>(u.kind)] = true;
  }
  for (int k = 0; k < kUnitKindCount; ++k)
    if (!kind_covered[k])
      fail(std::string("unit mix missing kind ") + to_string(static_cast<UnitKind>(k)));
}

ExperimentConfig config_from_json_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    fail(std::string("config is not valid JSON: ") + e.what());
  }

  ExperimentConfig cfg;
  check_keys(j, {"seed", "trace", "core", "regfile", "cache", "tlb", "report"},
             "config");
  get_to(j, "seed", cfg.seed);
  cfg.hierarchy.seed = cfg.seed;
  cfg.trace.profile.seed = cfg.seed;

  if (j.contains("trace")) {
    const json& t = j["trace"];
    check_keys(t,
               {"source", "path", "profile", "length", "footprint_bytes",
                "fp_fraction", "control_reg_writes", "events_per_cycle",
                "store_data", "constant_store_value"},
               "trace");
    std::string source = "synthetic";
    get_to(t, "source", source);
    if (source == "file") {
      cfg.trace.synthetic = false;
      get_to(t, "path", cfg.trace.path);
    } else if (source == "synthetic") {
      cfg.trace.synthetic = true;
      std::string profile = "int-only";
      get_to(t, "profile", profile);
      const auto name = profile_name_from_string(profile);
      if (!name) fail("unknown profile '" + profile + "'");
      std::uint64_t length = 1'000'000;
      get_to(t, "length", length);
      cfg.trace.profile = WorkloadProfile::preset(*name, length, cfg.seed);
      get_to(t, "footprint_bytes", cfg.trace.profile.footprint_bytes);
      get_to(t, "fp_fraction", cfg.trace.profile.fp_fraction);
      get_to(t, "events_per_cycle", cfg.trace.profile.events_per_cycle);
      get_to(t, "constant_store_value", cfg.trace.profile.constant_store_value);
      if (t.contains("control_reg_writes")) {
        const std::string c = t["control_reg_writes"].get<std::string>();
        if (c == "none")
          cfg.trace.profile.control_reg_writes = ControlWrites::None;
        else if (c == "once")
          cfg.trace.profile.control_reg_writes = ControlWrites::Once;
        else if (c == "periodic")
          cfg.trace.profile.control_reg_writes = ControlWrites::Periodic;
        else
          fail("control_reg_writes must be none|once|periodic");
      }
      if (t.contains("store_data")) {
        const std::string s = t["store_data"].get<std::string>();
        if (s == "prbs")
          cfg.trace.profile.store_data = StoreDataMode::Prbs;
        else if (s == "constant")
          cfg.trace.profile.store_data = StoreDataMode::Constant;
        else
          fail("store_data must be prbs|constant");
      }
    } else {
      fail("trace.source must be synthetic|file");
    }
  }

  if (j.contains("core")) {
    const json& c = j["core"];
    check_keys(c, {"dispatch_width", "units", "injection_enabled",
                   "injection_period_cycles"},
               "core");
    get_to(c, "dispatch_width", cfg.dispatch_width);
    get_to(c, "injection_enabled", cfg.injection_enabled);
    get_to(c, "injection_period_cycles", cfg.injection_period_cycles);
    if (c.contains("units")) {
      cfg.units.clear();
      for (const json& u : c["units"]) {
        check_keys(u, {"kind", "count", "latency_cycles"}, "core.units[]");
        const auto kind = unit_kind_from_string(u.at("kind").get<std::string>());
        if (!kind) fail("unknown unit kind in core.units");
        cfg.units.push_back(UnitConfig{*kind, u.at("count").get<std::uint32_t>(),
                                       u.at("latency_cycles").get<std::uint64_t>()});
      }
    }
  }

  if (j.contains("regfile")) {
    const json& r = j["regfile"];
    check_keys(r, {"rotation_enabled", "rotation_period_cycles", "class_sizes"},
               "regfile");
    get_to(r, "rotation_enabled", cfg.rotation_enabled);
    get_to(r, "rotation_period_cycles", cfg.rotation_period_cycles);
    if (r.contains("class_sizes")) {
      const json& s = r["class_sizes"];
      check_keys(s, {"Gpr", "FpVec", "Control", "Mask", "Segment", "Temp"},
                 "regfile.class_sizes");
      for (int i = 0; i < kRegClassCount; ++i)
        get_to(s, reg_class_key(i), cfg.reg_class_sizes[static_cast<std::size_t>(i)]);
    }
  }

  if (j.contains("cache")) {
    const json& c = j["cache"];
    check_keys(c,
               {"l1d", "l1i", "l2", "l3", "memory_latency_cycles",
                "swap_shift_enabled", "swap_period_accesses", "tracked_way",
                "code_footprint_bytes"},
               "cache");
    if (c.contains("l1d")) cfg.hierarchy.l1d = geometry_from(c["l1d"], cfg.hierarchy.l1d, "cache.l1d");
    if (c.contains("l1i")) cfg.hierarchy.l1i = geometry_from(c["l1i"], cfg.hierarchy.l1i, "cache.l1i");
    if (c.contains("l2")) cfg.hierarchy.l2 = geometry_from(c["l2"], cfg.hierarchy.l2, "cache.l2");
    if (c.contains("l3")) cfg.hierarchy.l3 = geometry_from(c["l3"], cfg.hierarchy.l3, "cache.l3");
    get_to(c, "memory_latency_cycles", cfg.hierarchy.memory_latency_cycles);
    get_to(c, "swap_shift_enabled", cfg.hierarchy.swap_shift_enabled);
    get_to(c, "swap_period_accesses", cfg.hierarchy.swap_period_accesses);
    get_to(c, "tracked_way", cfg.hierarchy.tracked_way);
    get_to(c, "code_footprint_bytes", cfg.code_footprint_bytes);
  }

  if (j.contains("tlb")) {
    const json& t = j["tlb"];
    check_keys(t, {"dtlb_entries", "itlb_entries", "stlb_entries", "ways"}, "tlb");
    get_to(t, "dtlb_entries", cfg.hierarchy.dtlb_entries);
    get_to(t, "itlb_entries", cfg.hierarchy.itlb_entries);
    get_to(t, "stlb_entries", cfg.hierarchy.stlb_entries);
    if (t.contains("ways")) {
      const auto w = t["ways"].get<std::uint32_t>();
      cfg.hierarchy.dtlb_ways = cfg.hierarchy.itlb_ways = cfg.hierarchy.stlb_ways = w;
    }
  }

  if (j.contains("report")) {
    const json& r = j["report"];
    check_keys(r, {"histogram_bins"}, "report");
    get_to(r, "histogram_bins", cfg.histogram_bins);
  }

  cfg.validate();
  return cfg;
}

ExperimentConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open config file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return config_from_json_text(ss.str());
}

std::string config_to_json_text(const ExperimentConfig& cfg, int indent) {
  json units = json::array();
  for (const UnitConfig& u : cfg.units)
    units.push_back(json{{"kind", to_string(u.kind)},
                         {"count", u.count},
                         {"latency_cycles", u.latency_cycles}});
  json class_sizes;
  for (int i = 0; i < kRegClassCount; ++i)
    class_sizes[reg_class_key(i)] = cfg.reg_class_sizes[static_cast<std::size_t>(i)];

  json trace;
  if (cfg.trace.synthetic) {
    const WorkloadProfile& p = cfg.trace.profile;
    trace = json{
        {"source", "synthetic"},
        {"profile", to_string(p.name)},
        {"length", p.length},
        {"footprint_bytes", p.footprint_bytes},
        {"fp_fraction", p.fp_fraction},
        {"control_reg_writes", p.control_reg_writes == ControlWrites::None
                                   ? "none"
                                   : p.control_reg_writes == ControlWrites::Once
                                         ? "once"
                                         : "periodic"},
        {"events_per_cycle", p.events_per_cycle},
        {"store_data", p.store_data == StoreDataMode::Prbs ? "prbs" : "constant"},
        {"constant_store_value", p.constant_store_value},
    };
  } else {
    trace = json{{"source", "file"}, {"path", cfg.trace.path}};
  }

  const json j{
      {"seed", cfg.seed},
      {"trace", trace},
      {"core",
       {{"dispatch_width", cfg.dispatch_width},
        {"units", units},
        {"injection_enabled", cfg.injection_enabled},
        {"injection_period_cycles", cfg.injection_period_cycles}}},
      {"regfile",
       {{"rotation_enabled", cfg.rotation_enabled},
        {"rotation_period_cycles", cfg.rotation_period_cycles},
        {"class_sizes", class_sizes}}},
      {"cache",
       {{"l1d", geometry_to(cfg.hierarchy.l1d)},
        {"l1i", geometry_to(cfg.hierarchy.l1i)},
        {"l2", geometry_to(cfg.hierarchy.l2)},
        {"l3", geometry_to(cfg.hierarchy.l3)},
        {"memory_latency_cycles", cfg.hierarchy.memory_latency_cycles},
        {"swap_shift_enabled", cfg.hierarchy.swap_shift_enabled},
        {"swap_period_accesses", cfg.hierarchy.swap_period_accesses},
        {"tracked_way", cfg.hierarchy.tracked_way},
        {"code_footprint_bytes", cfg.code_footprint_bytes}}},
      {"tlb",
       {{"dtlb_entries", cfg.hierarchy.dtlb_entries},
        {"itlb_entries", cfg.hierarchy.itlb_entries},
        {"stlb_entries", cfg.hierarchy.stlb_entries},
        {"ways", cfg.hierarchy.dtlb_ways}}},
      {"report", {{"histogram_bins", cfg.histogram_bins}}},
  };
  return j.dump(indent);
}

std::uint64_t fnv1a(const void* data, std::size_t len, std::uint64_t h) {
  const auto* p = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < len; ++i) {
    h ^= p[i];
    h *= 0x100000001b3ull;
  }
  return h;
}

std::uint64_t config_baseline_id(const ExperimentConfig& cfg) {
  ExperimentConfig stripped = cfg;
  stripped.injection_enabled = false;
  stripped.injection_period_cycles = 1;
  stripped.rotation_enabled = false;
  stripped.rotation_period_cycles = 1;
  stripped.hierarchy.swap_shift_enabled = false;
  stripped.hierarchy.swap_period_accesses = 1;
  const std::string text = config_to_json_text(stripped, -1);
  return fnv1a(text.data(), text.size());
}

std::uint64_t trace_identity(const ExperimentConfig& cfg) {
  if (cfg.trace.synthetic) {
    const WorkloadProfile& p = cfg.trace.profile;
    std::ostringstream ss;
    ss << "synthetic:" << to_string(p.name) << ':' << p.length << ':' << p.seed
       << ':' << p.footprint_bytes << ':' << p.fp_fraction << ':'
       << static_cast<int>(p.control_reg_writes) << ':' << p.events_per_cycle
       << ':' << static_cast<int>(p.store_data) << ':' << p.constant_store_value;
    const std::string s = ss.str();
    return fnv1a(s.data(), s.size());
  }
  std::ifstream in(cfg.trace.path, std::ios::binary);
  if (!in) fail("cannot open trace file: " + cfg.trace.path);
  std::uint64_t h = 0xcbf29ce484222325ull;
  char buf[65536];
  while (in.read(buf, sizeof buf) || in.gcount() > 0)
    h = fnv1a(buf, static_cast<std::size_t>(in.gcount()), h);
  return h;
}

}  // namespace aging
