#ifndef AGING_PRBS_HPP
#define AGING_PRBS_HPP

#include <cstdint>
#include <utility>

namespace aging {

// Fibonacci (external-XOR) linear-feedback shift register.
//
// The emitted bit is the register's low bit before the advance; the
// advance shifts the XOR of the tapped positions in at the low end.
// Term x^k of the feedback polynomial maps to tap bit k-1, so the
// implicit x^width term keeps the mask's highest bit at width-1. A
// maximal-length polynomial gives period 2^width - 1 with the all-zero
// state excluded.
struct LfsrState {
  int width = 0;            // 3..64
  std::uint64_t taps = 0;   // feedback mask, highest set bit at width-1
  std::uint64_t state = 0;  // nonzero, < 2^width
};

// Shipped maximal-length tap masks for widths 7, 15 and 23
// (x^7+x^6+1, x^15+x^14+1, x^23+x^18+1). Throws for other widths.
std::uint64_t default_taps(int width);

// Stable 64-bit mix (splitmix64 finalizer); used to derive seeds and
// per-event deterministic patterns.
std::uint64_t mix64(std::uint64_t x);

// Validates width/taps/seed and returns a ready state.
// Rejects zero seeds, empty tap masks and masks whose highest set bit
// is not at width-1.
LfsrState make_lfsr(int width, std::uint64_t taps, std::uint64_t seed);

// Convenience: default polynomial for `width`, seed reduced mod 2^width
// (forced to 1 if the reduction is zero).
LfsrState make_lfsr(int width, std::uint64_t seed);

// One step: emitted bit plus the advanced state.
std::pair<unsigned, LfsrState> lfsr_step(const LfsrState& s);

// k consecutive steps batched into a word; bit i of the word is the
// i-th emitted bit. 1 <= k <= 64.
std::pair<std::uint64_t, LfsrState> lfsr_word(const LfsrState& s, int k);

// Mutable wrapper for call sites that thread a generator through a
// simulation. The underlying ops stay pure.
class PrbsSource {
 public:
  PrbsSource() : s_(make_lfsr(23, 1)) {}
  explicit PrbsSource(LfsrState s) : s_(s) {}
  PrbsSource(int width, std::uint64_t seed) : s_(make_lfsr(width, seed)) {}

  unsigned bit() {
    auto [b, ns] = lfsr_step(s_);
    s_ = ns;
    return b;
  }
  std::uint64_t word(int k = 64) {
    auto [w, ns] = lfsr_word(s_, k);
    s_ = ns;
    return w;
  }
  const LfsrState& state() const { return s_; }

 private:
  LfsrState s_;
};

}  // namespace aging

#endif  // AGING_PRBS_HPP
