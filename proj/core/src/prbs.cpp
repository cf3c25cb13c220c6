#include "aging/prbs.hpp"

#include <bit>
#include <stdexcept>

namespace aging {

namespace {

std::uint64_t width_mask(int width) {
  return width == 64 ? ~0ull : (1ull << width) - 1;
}

}  // namespace

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

std::uint64_t default_taps(int width) {
  switch (width) {
    case 7:  // x^7 + x^6 + 1
      return (1ull << 6) | (1ull << 5);
    case 15:  // x^15 + x^14 + 1
      return (1ull << 14) | (1ull << 13);
    case 23:  // x^23 + x^18 + 1
      return (1ull << 22) | (1ull << 17);
    default:
      throw std::invalid_argument("no default polynomial for width " +
                                  std::to_string(width));
  }
}

LfsrState make_lfsr(int width, std::uint64_t taps, std::uint64_t seed) {
  if (width < 3 || width > 64)
    throw std::invalid_argument("lfsr width must be in [3, 64]");
  if (taps == 0) throw std::invalid_argument("lfsr tap mask is empty");
  if ((taps & ~width_mask(width)) != 0 ||
      std::bit_width(taps) != static_cast<unsigned>(width))
    throw std::invalid_argument(
        "lfsr tap mask must have its highest bit at width-1");
  if (seed == 0) throw std::invalid_argument("lfsr seed must be nonzero");
  if ((seed & ~width_mask(width)) != 0)
    throw std::invalid_argument("lfsr seed must be < 2^width");
  return LfsrState{width, taps, seed};
}

LfsrState make_lfsr(int width, std::uint64_t seed) {
  std::uint64_t s = seed & width_mask(width);
  if (s == 0) s = 1;
  return make_lfsr(width, default_taps(width), s);
}

std::pair<unsigned, LfsrState> lfsr_step(const LfsrState& s) {
  const unsigned out = static_cast<unsigned>(s.state & 1);
  const std::uint64_t fb =
      static_cast<std::uint64_t>(std::popcount(s.state & s.taps) & 1);
  LfsrState next = s;
  next.state = ((s.state << 1) | fb) & width_mask(s.width);
  return {out, next};
}

std::pair<std::uint64_t, LfsrState> lfsr_word(const LfsrState& s, int k) {
  if (k < 1 || k > 64)
    throw std::invalid_argument("lfsr word width must be in [1, 64]");
  std::uint64_t w = 0;
  LfsrState cur = s;
  for (int i = 0; i < k; ++i) {
    auto [b, ns] = lfsr_step(cur);
    w |= static_cast<std::uint64_t>(b) << i;
    cur = ns;
  }
  return {w, cur};
}

}  // namespace aging
