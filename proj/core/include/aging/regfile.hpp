#ifndef AGING_REGFILE_HPP
#define AGING_REGFILE_HPP

#include <cstdint>
#include <vector>

#include "aging/stress.hpp"
#include "aging/trace.hpp"

namespace aging {

// Modulo remapping of architectural register ids to physical slots.
inline std::uint32_t reg_map(std::uint32_t arch_id, std::uint32_t rotation,
                             std::uint32_t n_regs) {
  if (arch_id >= n_regs) throw std::invalid_argument("arch register id out of range");
  if (rotation >= n_regs) throw std::invalid_argument("rotation counter out of range");
  return (arch_id + rotation) % n_regs;
}

// Register file whose architectural-to-physical mapping rotates by one
// slot on every trigger. Rotation moves each architectural value to its
// new physical slot, so reads are unaffected; every physical slot takes
// a stress write at the trigger cycle. Aging is tracked on physical
// slots, per bit, plus a per-slot write count.
class RotatingRegFile {
 public:
  RotatingRegFile(std::uint32_t n_regs, std::uint64_t trigger_period_cycles,
                  bool rotation_enabled);

  std::uint64_t read(std::uint32_t arch_id) const;
  void write(std::uint32_t arch_id, std::uint64_t value, std::uint64_t cycle);

  // One rotation step, stress observed at `cycle`.
  void rotate(std::uint64_t cycle);

  // Performs every periodic rotation due at or before `cycle`. No-op
  // when rotation is disabled.
  void advance_to(std::uint64_t cycle);

  void finalize(std::uint64_t end_cycle);

  std::uint32_t n_regs() const { return n_regs_; }
  std::uint32_t rotation_counter() const { return rotation_; }
  std::uint64_t rotations_done() const { return rotations_done_; }
  bool rotation_enabled() const { return rotation_enabled_; }

  std::uint64_t slot_write_count(std::uint32_t phys) const {
    return slot_writes_.at(phys);
  }
  std::uint64_t static_slot_count() const;
  std::uint64_t min_slot_write_count() const;
  const std::vector<CellStress>& bit_cells() const { return bit_cells_; }
  std::uint64_t max_static_interval() const;

 private:
  void observe_slot(std::uint32_t phys, std::uint64_t value, std::uint64_t cycle);

  std::uint32_t n_regs_;
  std::uint32_t rotation_ = 0;
  std::uint64_t trigger_period_;
  bool rotation_enabled_;
  std::uint64_t next_trigger_;
  std::uint64_t rotations_done_ = 0;

  std::vector<std::uint64_t> storage_;      // physical slots
  std::vector<std::uint64_t> slot_writes_;  // per physical slot
  std::vector<CellStress> bit_cells_;       // n_regs * 64
};

// One rotating pool per register class, each with its own size and
// counter.
class RegFileSet {
 public:
  struct ClassConfig {
    std::uint32_t n_regs;
    std::uint64_t trigger_period_cycles;
    bool rotation_enabled;
  };

  RegFileSet(const std::vector<ClassConfig>& per_class);

  RotatingRegFile& of(RegClass cls) { return files_[static_cast<std::size_t>(cls)]; }
  const RotatingRegFile& of(RegClass cls) const {
    return files_[static_cast<std::size_t>(cls)];
  }

  std::uint64_t read(RegId reg) const { return of(reg.cls).read(reg.index); }
  void write(RegId reg, std::uint64_t value, std::uint64_t cycle) {
    of(reg.cls).write(reg.index, value, cycle);
  }
  void advance_to(std::uint64_t cycle) {
    for (auto& f : files_) f.advance_to(cycle);
  }
  void finalize(std::uint64_t end_cycle) {
    for (auto& f : files_) f.finalize(end_cycle);
  }

 private:
  std::vector<RotatingRegFile> files_;
};

}  // namespace aging

#endif  // AGING_REGFILE_HPP
