#include "aging/regfile.hpp"

namespace aging {

RotatingRegFile::RotatingRegFile(std::uint32_t n_regs,
                                 std::uint64_t trigger_period_cycles,
                                 bool rotation_enabled)
    : n_regs_(n_regs),
      trigger_period_(trigger_period_cycles),
      rotation_enabled_(rotation_enabled),
      next_trigger_(trigger_period_cycles),
      storage_(n_regs, 0),
      slot_writes_(n_regs, 0),
      bit_cells_(static_cast<std::size_t>(n_regs) * 64) {
  if (n_regs < 1) throw std::invalid_argument("register file needs >= 1 slot");
  if (trigger_period_cycles < 1)
    throw std::invalid_argument("rotation trigger period must be >= 1");
}

std::uint64_t RotatingRegFile::read(std::uint32_t arch_id) const {
  return storage_[reg_map(arch_id, rotation_, n_regs_)];
}

void RotatingRegFile::observe_slot(std::uint32_t phys, std::uint64_t value,
                                   std::uint64_t cycle) {
  ++slot_writes_[phys];
  CellStress* cells = &bit_cells_[static_cast<std::size_t>(phys) * 64];
  for (int b = 0; b < 64; ++b)
    cells[b].observe(cycle, static_cast<unsigned>((value >> b) & 1));
}

void RotatingRegFile::write(std::uint32_t arch_id, std::uint64_t value,
                            std::uint64_t cycle) {
  const std::uint32_t phys = reg_map(arch_id, rotation_, n_regs_);
  storage_[phys] = value;
  observe_slot(phys, value, cycle);
}

void RotatingRegFile::rotate(std::uint64_t cycle) {
  // Every architectural value moves to its slot under the incremented
  // counter; with a shift of one this is a cyclic shift of the storage.
  const std::uint32_t new_rotation = (rotation_ + 1) % n_regs_;
  std::vector<std::uint64_t> next(n_regs_);
  for (std::uint32_t arch = 0; arch < n_regs_; ++arch)
    next[reg_map(arch, new_rotation, n_regs_)] =
        storage_[reg_map(arch, rotation_, n_regs_)];
  storage_ = std::move(next);
  rotation_ = new_rotation;
  ++rotations_done_;
  for (std::uint32_t phys = 0; phys < n_regs_; ++phys)
    observe_slot(phys, storage_[phys], cycle);
}

void RotatingRegFile::advance_to(std::uint64_t cycle) {
  if (!rotation_enabled_) return;
  while (next_trigger_ <= cycle) {
    rotate(next_trigger_);
    next_trigger_ += trigger_period_;
  }
}

void RotatingRegFile::finalize(std::uint64_t end_cycle) {
  for (CellStress& c : bit_cells_) c.finalize(end_cycle);
}

std::uint64_t RotatingRegFile::static_slot_count() const {
  std::uint64_t n = 0;
  for (std::uint64_t w : slot_writes_)
    if (is_static(w)) ++n;
  return n;
}

std::uint64_t RotatingRegFile::min_slot_write_count() const {
  std::uint64_t m = ~0ull;
  for (std::uint64_t w : slot_writes_)
    if (w < m) m = w;
  return m;
}

std::uint64_t RotatingRegFile::max_static_interval() const {
  std::uint64_t m = 0;
  for (const CellStress& c : bit_cells_)
    if (c.max_static_interval > m) m = c.max_static_interval;
  return m;
}

RegFileSet::RegFileSet(const std::vector<ClassConfig>& per_class) {
  if (per_class.size() != static_cast<std::size_t>(kRegClassCount))
    throw std::invalid_argument("RegFileSet needs one config per register class");
  files_.reserve(per_class.size());
  for (const ClassConfig& c : per_class)
    files_.emplace_back(c.n_regs, c.trigger_period_cycles, c.rotation_enabled);
}

}  // namespace aging
