#include "aging/cache.hpp"

#include <stdexcept>

namespace aging {

void CacheGeometry::validate() const {
  if (line_bytes != kLineBytes)
    throw std::invalid_argument("line size is fixed at 64 bytes");
  if (ways < 1) throw std::invalid_argument("cache needs >= 1 way");
  if (size_bytes == 0 || size_bytes % (static_cast<std::uint64_t>(ways) * line_bytes) != 0)
    throw std::invalid_argument("cache size must be a multiple of ways * line size");
}

std::uint32_t physical_set(std::uint32_t logical, std::uint32_t k,
                           std::uint32_t c, std::uint32_t n_sets) {
  if (n_sets < 2) throw std::invalid_argument("set remapping needs >= 2 sets");
  if (logical >= n_sets) throw std::invalid_argument("logical set out of range");
  if (k >= n_sets) throw std::invalid_argument("set-shift counter out of range");
  if (c >= n_sets - 1) throw std::invalid_argument("swapped-set counter out of range");
  if (logical < c) return (logical + k + 1) % n_sets;
  if (logical == c) return k % n_sets;
  return (logical + k) % n_sets;
}

// ---------------------------------------------------------------------------
// CacheLevel
// ---------------------------------------------------------------------------

CacheLevel::CacheLevel(std::string name, CacheGeometry geom, SwapShiftState swap,
                       int tracked_way, std::uint64_t prbs_seed)
    : name_(std::move(name)),
      geom_(geom),
      swap_(swap),
      n_sets_(0),
      tracked_way_(tracked_way),
      fill_prbs_(23, mix64(prbs_seed) | 1) {
  geom_.validate();
  n_sets_ = geom_.n_sets();
  if (swap_.enabled && swap_.trigger_period_accesses < 1)
    throw std::invalid_argument("swap trigger period must be >= 1");
  if (tracked_way_ >= static_cast<int>(geom_.ways))
    throw std::invalid_argument("tracked way out of range");
  lines_.resize(static_cast<std::size_t>(n_sets_) * geom_.ways);
  line_writes_.assign(lines_.size(), 0);
  if (tracked_way_ >= 0)
    bit_cells_.resize(static_cast<std::size_t>(n_sets_) * kLineBytes * 8);
  next_swap_trigger_ = swap_.trigger_period_accesses;
}

bool CacheLevel::contains(std::uint64_t line_addr) const {
  return find_way(physical_set_of(line_addr), line_addr) >= 0;
}

int CacheLevel::find_way(std::uint32_t pset, std::uint64_t line_addr) const {
  const CacheLine* base = &lines_[static_cast<std::size_t>(pset) * geom_.ways];
  for (std::uint32_t w = 0; w < geom_.ways; ++w)
    if (base[w].valid && base[w].line_addr == line_addr) return static_cast<int>(w);
  return -1;
}

int CacheLevel::lookup(std::uint64_t line_addr) {
  ++accesses_;
  const std::uint32_t pset = physical_set_of(line_addr);
  const int way = find_way(pset, line_addr);
  if (way >= 0) {
    ++hits_;
    line_at(pset, static_cast<std::uint32_t>(way)).lru = ++lru_clock_;
  } else {
    ++misses_;
  }
  return way;
}

void CacheLevel::record_line_write(std::uint32_t pset, std::uint32_t way,
                                   const std::array<std::uint64_t, kWordsPerLine>& words,
                                   std::uint64_t cycle) {
  ++line_writes_[static_cast<std::size_t>(pset) * geom_.ways + way];
  if (tracked_way_ >= 0 && way == static_cast<std::uint32_t>(tracked_way_)) {
    CellStress* cells = &bit_cells_[static_cast<std::size_t>(pset) * kLineBytes * 8];
    for (unsigned w = 0; w < kWordsPerLine; ++w)
      for (unsigned b = 0; b < 64; ++b)
        cells[w * 64 + b].observe(cycle, static_cast<unsigned>((words[w] >> b) & 1));
  }
}

void CacheLevel::record_word_write(std::uint32_t pset, std::uint32_t way,
                                   unsigned word_index, std::uint64_t value,
                                   std::uint64_t cycle) {
  ++line_writes_[static_cast<std::size_t>(pset) * geom_.ways + way];
  if (tracked_way_ >= 0 && way == static_cast<std::uint32_t>(tracked_way_)) {
    CellStress* cells = &bit_cells_[static_cast<std::size_t>(pset) * kLineBytes * 8 +
                                    static_cast<std::size_t>(word_index) * 64];
    for (unsigned b = 0; b < 64; ++b)
      cells[b].observe(cycle, static_cast<unsigned>((value >> b) & 1));
  }
}

std::optional<EvictedLine> CacheLevel::fill(
    std::uint64_t line_addr, const std::array<std::uint64_t, kWordsPerLine>& words,
    std::uint64_t cycle) {
  const std::uint32_t pset = physical_set_of(line_addr);
  CacheLine* base = &lines_[static_cast<std::size_t>(pset) * geom_.ways];

  std::uint32_t victim = 0;
  bool found_invalid = false;
  std::uint64_t best_lru = ~0ull;
  for (std::uint32_t w = 0; w < geom_.ways; ++w) {
    if (!base[w].valid) {
      victim = w;
      found_invalid = true;
      break;
    }
    if (base[w].lru < best_lru) {
      best_lru = base[w].lru;
      victim = w;
    }
  }

  std::optional<EvictedLine> evicted;
  CacheLine& line = base[victim];
  if (!found_invalid && line.valid && line.dirty)
    evicted = EvictedLine{line.line_addr, line.words};

  line.line_addr = line_addr;
  line.words = words;
  line.valid = true;
  line.dirty = false;
  line.lru = ++lru_clock_;
  ++fills_;
  record_line_write(pset, victim, words, cycle);
  return evicted;
}

void CacheLevel::write_word(std::uint64_t line_addr, unsigned word_index,
                            std::uint64_t value, std::uint64_t cycle) {
  const std::uint32_t pset = physical_set_of(line_addr);
  const int way = find_way(pset, line_addr);
  if (way < 0) throw std::logic_error("write_word on a non-resident line");
  CacheLine& line = line_at(pset, static_cast<std::uint32_t>(way));
  line.words[word_index] = value;
  line.dirty = true;
  record_word_write(pset, static_cast<std::uint32_t>(way), word_index, value, cycle);
}

bool CacheLevel::update_if_present(std::uint64_t line_addr,
                                   const std::array<std::uint64_t, kWordsPerLine>& words,
                                   std::uint64_t cycle) {
  const std::uint32_t pset = physical_set_of(line_addr);
  const int way = find_way(pset, line_addr);
  if (way < 0) return false;
  CacheLine& line = line_at(pset, static_cast<std::uint32_t>(way));
  line.words = words;
  line.dirty = true;
  record_line_write(pset, static_cast<std::uint32_t>(way), words, cycle);
  return true;
}

const std::array<std::uint64_t, kWordsPerLine>& CacheLevel::line_words(
    std::uint64_t line_addr) const {
  const std::uint32_t pset = physical_set_of(line_addr);
  const int way = find_way(pset, line_addr);
  if (way < 0) throw std::logic_error("line_words on a non-resident line");
  return lines_[static_cast<std::size_t>(pset) * geom_.ways +
                static_cast<std::uint32_t>(way)].words;
}

std::vector<EvictedLine> CacheLevel::run_swap_trigger(std::uint64_t cycle) {
  const std::uint32_t c = swap_.swapped_set_counter;
  const std::uint32_t p1 =
      physical_set(c, swap_.set_shift, c, n_sets_);
  const std::uint32_t p2 =
      physical_set(c + 1, swap_.set_shift, c, n_sets_);

  std::vector<EvictedLine> dirty;
  for (std::uint32_t pset : {p1, p2}) {
    CacheLine* base = &lines_[static_cast<std::size_t>(pset) * geom_.ways];
    for (std::uint32_t w = 0; w < geom_.ways; ++w) {
      CacheLine& line = base[w];
      if (line.valid && line.dirty) {
        dirty.push_back(EvictedLine{line.line_addr, line.words});
        ++writebacks_;
      }
      if (line.valid) ++invalidated_lines_;
      line.valid = false;
      line.dirty = false;
      // PRBS pattern into the invalidated data array.
      std::array<std::uint64_t, kWordsPerLine> pattern;
      for (auto& word : pattern) word = fill_prbs_.word(64);
      line.words = pattern;
      record_line_write(pset, w, pattern, cycle);
    }
  }

  swap_.swapped_set_counter = c + 1;
  if (swap_.swapped_set_counter == n_sets_ - 1) {
    swap_.swapped_set_counter = 0;
    swap_.set_shift = (swap_.set_shift + 1) % n_sets_;
  }
  ++swap_triggers_;
  next_swap_trigger_ += swap_.trigger_period_accesses;
  return dirty;
}

void CacheLevel::finalize(std::uint64_t end_cycle) {
  for (CellStress& c : bit_cells_) c.finalize(end_cycle);
}

std::uint64_t CacheLevel::static_line_count() const {
  std::uint64_t n = 0;
  for (std::uint64_t w : line_writes_)
    if (is_static(w)) ++n;
  return n;
}

std::uint64_t CacheLevel::min_line_write_count() const {
  std::uint64_t m = ~0ull;
  for (std::uint64_t w : line_writes_)
    if (w < m) m = w;
  return m;
}

// ---------------------------------------------------------------------------
// TlbLevel
// ---------------------------------------------------------------------------

TlbLevel::TlbLevel(std::string name, std::uint32_t entries, std::uint32_t ways)
    : name_(std::move(name)), sets_(entries / ways), ways_(ways) {
  if (ways < 1 || entries == 0 || entries % ways != 0)
    throw std::invalid_argument("TLB entries must be a multiple of ways");
  entries_.resize(entries);
  entry_writes_.assign(entries, 0);
}

bool TlbLevel::access(std::uint64_t page) {
  ++accesses_;
  const std::uint32_t set = static_cast<std::uint32_t>(page % sets_);
  Entry* base = &entries_[static_cast<std::size_t>(set) * ways_];
  for (std::uint32_t w = 0; w < ways_; ++w) {
    if (base[w].valid && base[w].page == page) {
      base[w].lru = ++lru_clock_;
      return true;
    }
  }
  ++misses_;
  std::uint32_t victim = 0;
  std::uint64_t best_lru = ~0ull;
  for (std::uint32_t w = 0; w < ways_; ++w) {
    if (!base[w].valid) {
      victim = w;
      break;
    }
    if (base[w].lru < best_lru) {
      best_lru = base[w].lru;
      victim = w;
    }
  }
  base[victim] = Entry{page, ++lru_clock_, true};
  ++entry_writes_[static_cast<std::size_t>(set) * ways_ + victim];
  return false;
}

std::uint64_t TlbLevel::static_entry_count() const {
  std::uint64_t n = 0;
  for (std::uint64_t w : entry_writes_)
    if (is_static(w)) ++n;
  return n;
}

// ---------------------------------------------------------------------------
// CacheHierarchy
// ---------------------------------------------------------------------------

const char* to_string(MemLevelId id) {
  switch (id) {
    case MemLevelId::L1D: return "l1d";
    case MemLevelId::L1I: return "l1i";
    case MemLevelId::L2: return "l2";
    case MemLevelId::L3: return "l3";
    case MemLevelId::Memory: return "memory";
  }
  return "?";
}

namespace {
SwapShiftState swap_for(const HierarchyConfig& cfg) {
  SwapShiftState s;
  s.enabled = cfg.swap_shift_enabled;
  s.trigger_period_accesses = cfg.swap_period_accesses;
  return s;
}
}  // namespace

CacheHierarchy::CacheHierarchy(const HierarchyConfig& cfg)
    : cfg_(cfg),
      l1d_("l1d", cfg.l1d, swap_for(cfg), cfg.tracked_way, cfg.seed ^ 0x11d),
      l1i_("l1i", cfg.l1i, swap_for(cfg), cfg.tracked_way, cfg.seed ^ 0x111),
      l2_("l2", cfg.l2, swap_for(cfg), cfg.tracked_way, cfg.seed ^ 0x222),
      l3_("l3", cfg.l3, swap_for(cfg), cfg.tracked_way, cfg.seed ^ 0x333),
      dtlb_("dtlb", cfg.dtlb_entries, cfg.dtlb_ways),
      itlb_("itlb", cfg.itlb_entries, cfg.itlb_ways),
      stlb_("stlb", cfg.stlb_entries, cfg.stlb_ways) {}

std::array<std::uint64_t, kWordsPerLine> CacheHierarchy::read_memory_line(
    std::uint64_t line_addr) {
  ++memory_reads_;
  const auto it = memory_.find(line_addr);
  if (it == memory_.end()) return {};
  return it->second;
}

void CacheHierarchy::write_memory_line(
    std::uint64_t line_addr, const std::array<std::uint64_t, kWordsPerLine>& words) {
  ++memory_writes_;
  memory_[line_addr] = words;
}

std::uint64_t CacheHierarchy::peek_memory_word(std::uint64_t addr) const {
  const auto it = memory_.find(addr / kLineBytes);
  if (it == memory_.end()) return 0;
  return it->second[(addr / 8) % kWordsPerLine];
}

void CacheHierarchy::writeback_below(int from, const EvictedLine& line,
                                     std::uint64_t cycle) {
  // Chain below L1 is L2 then L3; below L2 only L3.
  CacheLevel* lower[2] = {nullptr, nullptr};
  if (from <= 0) {
    lower[0] = &l2_;
    lower[1] = &l3_;
  } else if (from == 1) {
    lower[0] = &l3_;
  }
  for (CacheLevel* lvl : lower)
    if (lvl && lvl->update_if_present(line.line_addr, line.words, cycle)) return;
  write_memory_line(line.line_addr, line.words);
}

AccessResult CacheHierarchy::run_access(std::uint64_t addr, bool is_store,
                                        std::uint64_t data, std::uint64_t cycle,
                                        bool instruction) {
  const std::uint64_t line_addr = addr / kLineBytes;
  const unsigned word_index = static_cast<unsigned>((addr / 8) % kWordsPerLine);

  // TLB observation (no latency model).
  if (instruction) {
    if (!itlb_.access(addr >> 12)) stlb_.access(addr >> 12);
  } else {
    if (!dtlb_.access(addr >> 12)) stlb_.access(addr >> 12);
  }

  CacheLevel* chain[3] = {instruction ? &l1i_ : &l1d_, &l2_, &l3_};
  const MemLevelId chain_id[3] = {instruction ? MemLevelId::L1I : MemLevelId::L1D,
                                  MemLevelId::L2, MemLevelId::L3};

  int hit_at = -1;
  for (int i = 0; i < 3; ++i) {
    if (chain[i]->lookup(line_addr) >= 0) {
      hit_at = i;
      break;
    }
  }

  AccessResult result;
  std::array<std::uint64_t, kWordsPerLine> words;
  if (hit_at >= 0) {
    words = chain[hit_at]->line_words(line_addr);
    result.served_by = chain_id[hit_at];
    result.latency = chain[hit_at]->geometry().access_latency_cycles;
  } else {
    words = read_memory_line(line_addr);
    result.served_by = MemLevelId::Memory;
    result.latency = cfg_.memory_latency_cycles;
  }
  result.value = words[word_index];

  // Fill every level that missed on the probe path, bottom-up.
  const int fill_limit = hit_at >= 0 ? hit_at : 3;
  for (int i = fill_limit - 1; i >= 0; --i) {
    if (auto victim = chain[i]->fill(line_addr, words, cycle))
      writeback_below(i, *victim, cycle);
  }

  if (is_store) chain[0]->write_word(line_addr, word_index, data, cycle);

  run_due_swaps(cycle);
  return result;
}

void CacheHierarchy::run_due_swaps(std::uint64_t cycle) {
  CacheLevel* levels[4] = {&l1d_, &l1i_, &l2_, &l3_};
  const int below[4] = {0, 0, 1, 2};
  for (int i = 0; i < 4; ++i) {
    if (!levels[i]->swap_trigger_due()) continue;
    for (const EvictedLine& line : levels[i]->run_swap_trigger(cycle))
      writeback_below(below[i], line, cycle);
  }
}

AccessResult CacheHierarchy::access(std::uint64_t addr, bool is_store,
                                    std::uint64_t data, std::uint64_t cycle) {
  return run_access(addr, is_store, data, cycle, false);
}

AccessResult CacheHierarchy::ifetch(std::uint64_t addr, std::uint64_t cycle) {
  return run_access(addr, false, 0, cycle, true);
}

void CacheHierarchy::finalize(std::uint64_t end_cycle) {
  l1d_.finalize(end_cycle);
  l1i_.finalize(end_cycle);
  l2_.finalize(end_cycle);
  l3_.finalize(end_cycle);
}

}  // namespace aging
