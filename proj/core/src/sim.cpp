#include "aging/sim.hpp"

#include <fstream>
#include <memory>

#include "aging/exec.hpp"
#include "aging/regfile.hpp"

namespace aging {

namespace {

constexpr std::uint64_t kCodeBase = 0x400000ull;
constexpr std::uint64_t kFetchBytes = 16;  // instruction-queue step per event

// Streams events either from a trace file or from the synthetic
// generator without materializing the sequence.
class EventSource {
 public:
  explicit EventSource(const ExperimentConfig& cfg) {
    if (cfg.trace.synthetic) {
      gen_ = std::make_unique<SyntheticGenerator>(cfg.trace.profile);
    } else {
      file_ = std::make_unique<std::ifstream>(cfg.trace.path);
      if (!*file_) throw ConfigError("cannot open trace file: " + cfg.trace.path);
      reader_ = std::make_unique<TraceReader>(*file_);
    }
  }
  std::optional<TraceEvent> next() {
    return gen_ ? gen_->next() : reader_->next();
  }

 private:
  std::unique_ptr<SyntheticGenerator> gen_;
  std::unique_ptr<std::ifstream> file_;
  std::unique_ptr<TraceReader> reader_;
};

}  // namespace

StressReport run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();

  std::vector<RegFileSet::ClassConfig> reg_cfg;
  reg_cfg.reserve(kRegClassCount);
  for (std::uint32_t n : cfg.reg_class_sizes)
    reg_cfg.push_back({n, cfg.rotation_period_cycles, cfg.rotation_enabled});
  RegFileSet regs(reg_cfg);

  ExecPool exec(cfg.units, cfg.dispatch_width, cfg.injection_enabled,
                cfg.injection_period_cycles, cfg.seed);

  HierarchyConfig hier_cfg = cfg.hierarchy;
  hier_cfg.seed = cfg.seed;
  CacheHierarchy caches(hier_cfg);

  EventSource source(cfg);

  const std::uint64_t code_lines = cfg.code_footprint_bytes / kFetchBytes;
  std::uint64_t pc_offset = 0;
  std::uint64_t events = 0;
  std::uint64_t last_cycle = 0;
  std::uint64_t access_latency = 0;
  const std::uint64_t payload_salt = mix64(cfg.seed ^ 0x9a71);

  while (auto ev = source.next()) {
    const TraceEvent& e = *ev;
    ++events;
    last_cycle = e.cycle;

    regs.advance_to(e.cycle);

    // Instruction fetch, one queue step per event; branches redirect
    // the stream inside the code footprint.
    access_latency += caches.ifetch(kCodeBase + pc_offset * kFetchBytes, e.cycle).latency;
    if (e.kind == UnitKind::Branch)
      pc_offset = mix64(payload_salt ^ e.seq) % code_lines;
    else
      pc_offset = (pc_offset + 1) % code_lines;

    // Data access.
    std::uint64_t loaded = 0;
    if (e.kind == UnitKind::Load) {
      const AccessResult r = caches.access(*e.mem_addr, false, 0, e.cycle);
      access_latency += r.latency;
      loaded = r.value;
    } else if (e.kind == UnitKind::Store) {
      access_latency += caches.access(*e.mem_addr, true, *e.data, e.cycle).latency;
    }

    const std::uint64_t payload =
        e.data ? *e.data
               : (e.kind == UnitKind::Load ? loaded : mix64(payload_salt ^ e.seq));
    exec.dispatch(e, payload);

    for (const RegId& src : e.src_regs) (void)regs.read(src);
    if (e.dst_reg) {
      const std::uint64_t value = e.kind == UnitKind::Load ? loaded : payload;
      regs.write(*e.dst_reg, value, e.cycle);
    }
  }

  const std::uint64_t end_cycle = events == 0 ? 0 : last_cycle + 1;
  regs.advance_to(end_cycle);
  regs.finalize(end_cycle);
  exec.finalize(end_cycle);
  caches.finalize(end_cycle);

  // ----- report assembly -----
  StressReport rep;
  rep.config_text = config_to_json_text(cfg);
  rep.trace_id = trace_identity(cfg);
  rep.baseline_id = config_baseline_id(cfg);
  rep.events = events;
  rep.trace_span_cycles = end_cycle;
  rep.stall_cycles = exec.total_stall_cycles();
  rep.access_latency_cycles = access_latency;
  rep.total_cycles = end_cycle + exec.total_stall_cycles() + access_latency;
  rep.injection_ticks = exec.injection_ticks();
  rep.memory_reads = caches.memory_reads();
  rep.memory_writes = caches.memory_writes();

  for (const UnitStressRow& row : exec.unit_stress_table()) {
    UnitReport u;
    u.name = row.name;
    u.kind = to_string(row.kind);
    u.op_count = row.op_count;
    u.injected_words = row.injected_words;
    u.is_static = row.is_static;
    u.max_static_interval = row.max_static_interval;
    u.min_bit_write_count = row.min_bit_write_count;
    u.bit_max_static_interval = row.bit_max_static_interval;
    rep.units.push_back(std::move(u));
  }

  for (int i = 0; i < kRegClassCount; ++i) {
    const RotatingRegFile& f = regs.of(static_cast<RegClass>(i));
    RegClassReport r;
    r.name = to_string(static_cast<RegClass>(i));
    r.n_regs = f.n_regs();
    r.rotations = f.rotations_done();
    r.static_slots = f.static_slot_count();
    r.min_slot_write_count = f.min_slot_write_count();
    r.max_static_interval = f.max_static_interval();
    rep.reg_classes.push_back(std::move(r));
  }

  const CacheLevel* levels[4] = {&caches.l1d(), &caches.l1i(), &caches.l2(),
                                 &caches.l3()};
  for (const CacheLevel* lvl : levels) {
    CacheLevelReport c;
    c.name = lvl->name();
    c.sets = lvl->n_sets();
    c.ways = lvl->geometry().ways;
    c.accesses = lvl->accesses();
    c.hits = lvl->hits();
    c.misses = lvl->misses();
    c.fills = lvl->fills_done();
    c.writebacks = lvl->writebacks();
    c.swap_triggers = lvl->swap_triggers();
    c.total_lines = lvl->total_lines();
    c.static_lines = lvl->static_line_count();
    c.min_line_write_count = lvl->min_line_write_count();
    if (lvl->tracks_bits())
      c.tracked_way_duty_histogram =
          signal_probability_histogram(std::span(lvl->bit_cells()), cfg.histogram_bins);
    rep.cache_levels.push_back(std::move(c));
  }

  const TlbLevel* tlbs[3] = {&caches.dtlb(), &caches.itlb(), &caches.stlb()};
  for (const TlbLevel* t : tlbs) {
    TlbReport tr;
    tr.name = t->name();
    tr.entries = t->entry_count();
    tr.accesses = t->accesses();
    tr.misses = t->misses();
    tr.static_entries = t->static_entry_count();
    rep.tlbs.push_back(std::move(tr));
  }

  return rep;
}

}  // namespace aging
