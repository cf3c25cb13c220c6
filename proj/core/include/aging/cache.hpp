#ifndef AGING_CACHE_HPP
#define AGING_CACHE_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "aging/prbs.hpp"
#include "aging/stress.hpp"
#include "aging/trace.hpp"

namespace aging {

constexpr unsigned kWordsPerLine = 8;  // 64-byte lines, 8-byte words

struct CacheGeometry {
  std::uint64_t size_bytes = 0;
  std::uint32_t ways = 0;
  std::uint32_t line_bytes = kLineBytes;
  std::uint64_t access_latency_cycles = 0;

  std::uint32_t n_sets() const {
    return static_cast<std::uint32_t>(size_bytes / (ways * line_bytes));
  }
  void validate() const;
};

// Swap-shift set remapping counters. k counts completed full rotations
// of the index mapping, c counts completed swaps in the current round;
// a round of S-1 swaps advances the rotation by one.
struct SwapShiftState {
  std::uint32_t set_shift = 0;            // k in [0, S)
  std::uint32_t swapped_set_counter = 0;  // c in [0, S-1)
  std::uint64_t trigger_period_accesses = 10'000'000;
  bool enabled = false;
};

// Closed form of the permutation: a base rotation by k followed by the
// adjacent transpositions (0,1),(1,2),...,(c-1,c) applied in order.
std::uint32_t physical_set(std::uint32_t logical, std::uint32_t k,
                           std::uint32_t c, std::uint32_t n_sets);

struct CacheLine {
  std::uint64_t line_addr = 0;  // full line address (addr / 64); doubles as tag
  std::uint64_t lru = 0;
  bool valid = false;
  bool dirty = false;
  std::array<std::uint64_t, kWordsPerLine> words{};
};

struct EvictedLine {
  std::uint64_t line_addr;
  std::array<std::uint64_t, kWordsPerLine> words;
};

// One set-associative level with LRU replacement, per-line write counts,
// per-bit stress on one tracked way, and the swap-shift state.
class CacheLevel {
 public:
  CacheLevel(std::string name, CacheGeometry geom, SwapShiftState swap,
             int tracked_way, std::uint64_t prbs_seed);

  const std::string& name() const { return name_; }
  const CacheGeometry& geometry() const { return geom_; }
  const SwapShiftState& swap_state() const { return swap_; }
  std::uint32_t n_sets() const { return n_sets_; }

  std::uint32_t logical_set(std::uint64_t line_addr) const {
    return static_cast<std::uint32_t>(line_addr % n_sets_);
  }
  std::uint32_t physical_set_of(std::uint64_t line_addr) const {
    return physical_set(logical_set(line_addr), swap_.set_shift,
                        swap_.swapped_set_counter, n_sets_);
  }

  // Probe without side effects.
  bool contains(std::uint64_t line_addr) const;

  // Demand lookup: counts the access, touches LRU on hit. Returns the
  // way index or -1.
  int lookup(std::uint64_t line_addr);

  // Allocates line_addr in its physical set (LRU victim, invalid ways
  // first). Returns the victim when it was valid and dirty.
  std::optional<EvictedLine> fill(std::uint64_t line_addr,
                                  const std::array<std::uint64_t, kWordsPerLine>& words,
                                  std::uint64_t cycle);

  // Store into a resident line; way from a prior lookup/fill.
  void write_word(std::uint64_t line_addr, unsigned word_index,
                  std::uint64_t value, std::uint64_t cycle);

  // Writeback from an upper level: update data in place iff resident.
  bool update_if_present(std::uint64_t line_addr,
                         const std::array<std::uint64_t, kWordsPerLine>& words,
                         std::uint64_t cycle);

  const std::array<std::uint64_t, kWordsPerLine>& line_words(
      std::uint64_t line_addr) const;

  bool swap_trigger_due() const {
    return swap_.enabled && n_sets_ >= 2 && accesses_ >= next_swap_trigger_;
  }

  // One swap-shift trigger: writes back and invalidates the two physical
  // sets owned by logical sets c and c+1, PRBS-fills their data arrays,
  // then advances (c, k). Returns the dirty lines for forwarding.
  std::vector<EvictedLine> run_swap_trigger(std::uint64_t cycle);

  void finalize(std::uint64_t end_cycle);

  // stats
  std::uint64_t accesses() const { return accesses_; }
  std::uint64_t hits() const { return hits_; }
  std::uint64_t misses() const { return misses_; }
  std::uint64_t fills_done() const { return fills_; }
  std::uint64_t writebacks() const { return writebacks_; }
  std::uint64_t swap_triggers() const { return swap_triggers_; }
  std::uint64_t invalidated_lines() const { return invalidated_lines_; }

  std::uint64_t total_lines() const { return line_writes_.size(); }
  std::uint64_t static_line_count() const;
  std::uint64_t min_line_write_count() const;
  std::uint64_t line_write_count(std::uint64_t line_index) const {
    return line_writes_[line_index];
  }
  bool tracks_bits() const { return !bit_cells_.empty(); }
  const std::vector<CellStress>& bit_cells() const { return bit_cells_; }

 private:
  CacheLine& line_at(std::uint32_t pset, std::uint32_t way) {
    return lines_[static_cast<std::size_t>(pset) * geom_.ways + way];
  }
  int find_way(std::uint32_t pset, std::uint64_t line_addr) const;
  void record_line_write(std::uint32_t pset, std::uint32_t way,
                         const std::array<std::uint64_t, kWordsPerLine>& words,
                         std::uint64_t cycle);
  void record_word_write(std::uint32_t pset, std::uint32_t way,
                         unsigned word_index, std::uint64_t value,
                         std::uint64_t cycle);

  std::string name_;
  CacheGeometry geom_;
  SwapShiftState swap_;
  std::uint32_t n_sets_;
  int tracked_way_;

  std::vector<CacheLine> lines_;
  std::vector<std::uint64_t> line_writes_;
  std::vector<CellStress> bit_cells_;  // n_sets * 512 when tracking enabled
  PrbsSource fill_prbs_;

  std::uint64_t lru_clock_ = 0;
  std::uint64_t accesses_ = 0;
  std::uint64_t hits_ = 0;
  std::uint64_t misses_ = 0;
  std::uint64_t fills_ = 0;
  std::uint64_t writebacks_ = 0;
  std::uint64_t swap_triggers_ = 0;
  std::uint64_t invalidated_lines_ = 0;
  std::uint64_t next_swap_trigger_ = 0;
};

// Set-associative TLB, stress observation only (no mitigation).
class TlbLevel {
 public:
  TlbLevel(std::string name, std::uint32_t entries, std::uint32_t ways);

  // Returns true on hit; fills on miss and counts the entry write.
  bool access(std::uint64_t page);

  const std::string& name() const { return name_; }
  std::uint32_t entry_count() const { return static_cast<std::uint32_t>(entry_writes_.size()); }
  std::uint64_t accesses() const { return accesses_; }
  std::uint64_t misses() const { return misses_; }
  std::uint64_t static_entry_count() const;

 private:
  struct Entry {
    std::uint64_t page = 0;
    std::uint64_t lru = 0;
    bool valid = false;
  };
  std::string name_;
  std::uint32_t sets_, ways_;
  std::vector<Entry> entries_;
  std::vector<std::uint64_t> entry_writes_;
  std::uint64_t lru_clock_ = 0;
  std::uint64_t accesses_ = 0;
  std::uint64_t misses_ = 0;
};

enum class MemLevelId { L1D, L1I, L2, L3, Memory };
const char* to_string(MemLevelId id);

struct AccessResult {
  MemLevelId served_by = MemLevelId::Memory;
  std::uint64_t latency = 0;
  std::uint64_t value = 0;  // loaded word; for stores, the pre-store word
};

struct HierarchyConfig {
  CacheGeometry l1d{32u << 10, 8, kLineBytes, 4};
  CacheGeometry l1i{32u << 10, 4, kLineBytes, 4};
  CacheGeometry l2{256u << 10, 8, kLineBytes, 8};
  CacheGeometry l3{8u << 20, 16, kLineBytes, 30};
  std::uint64_t memory_latency_cycles = 200;
  bool swap_shift_enabled = false;
  std::uint64_t swap_period_accesses = 10'000'000;
  int tracked_way = 0;  // -1 disables per-bit tracking
  std::uint32_t dtlb_entries = 64, dtlb_ways = 4;
  std::uint32_t itlb_entries = 128, itlb_ways = 4;
  std::uint32_t stlb_entries = 512, stlb_ways = 4;
  std::uint64_t seed = 1;
};

// Three-level hierarchy with split L1, unified L2/L3, flat backing
// memory and per-level swap-shift mitigation. Misses fill every level
// that missed on the probe path; dirty victims are written back to the
// first lower level currently holding the line, else to memory.
class CacheHierarchy {
 public:
  explicit CacheHierarchy(const HierarchyConfig& cfg);

  AccessResult access(std::uint64_t addr, bool is_store, std::uint64_t data,
                      std::uint64_t cycle);
  AccessResult ifetch(std::uint64_t addr, std::uint64_t cycle);

  void finalize(std::uint64_t end_cycle);

  CacheLevel& l1d() { return l1d_; }
  CacheLevel& l1i() { return l1i_; }
  CacheLevel& l2() { return l2_; }
  CacheLevel& l3() { return l3_; }
  const CacheLevel& l1d() const { return l1d_; }
  const CacheLevel& l1i() const { return l1i_; }
  const CacheLevel& l2() const { return l2_; }
  const CacheLevel& l3() const { return l3_; }
  TlbLevel& dtlb() { return dtlb_; }
  TlbLevel& itlb() { return itlb_; }
  TlbLevel& stlb() { return stlb_; }
  const TlbLevel& dtlb() const { return dtlb_; }
  const TlbLevel& itlb() const { return itlb_; }
  const TlbLevel& stlb() const { return stlb_; }

  std::uint64_t memory_reads() const { return memory_reads_; }
  std::uint64_t memory_writes() const { return memory_writes_; }

  // Flat-memory view, for oracles and tests.
  std::uint64_t peek_memory_word(std::uint64_t addr) const;

 private:
  AccessResult run_access(std::uint64_t addr, bool is_store, std::uint64_t data,
                          std::uint64_t cycle, bool instruction);
  std::array<std::uint64_t, kWordsPerLine> read_memory_line(std::uint64_t line_addr);
  void write_memory_line(std::uint64_t line_addr,
                         const std::array<std::uint64_t, kWordsPerLine>& words);
  // Forward a writeback below `from`: update the first holder, else memory.
  void writeback_below(int from, const EvictedLine& line, std::uint64_t cycle);
  void run_due_swaps(std::uint64_t cycle);

  HierarchyConfig cfg_;
  CacheLevel l1d_, l1i_, l2_, l3_;
  TlbLevel dtlb_, itlb_, stlb_;
  std::unordered_map<std::uint64_t, std::array<std::uint64_t, kWordsPerLine>> memory_;
  std::uint64_t memory_reads_ = 0;
  std::uint64_t memory_writes_ = 0;
};

}  // namespace aging

#endif  // AGING_CACHE_HPP
