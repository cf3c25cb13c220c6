#include "aging/stress.hpp"

namespace aging {

std::vector<std::uint64_t> signal_probability_histogram(
    std::span<const CellStress> cells, int bins) {
  if (bins < 2) throw std::invalid_argument("histogram needs at least 2 bins");
  std::vector<std::uint64_t> hist(static_cast<std::size_t>(bins), 0);
  for (const CellStress& c : cells) {
    if (!c.finalized)
      throw std::logic_error("histogram over unfinalized cells");
    const double p = c.signal_probability();
    int b = static_cast<int>(p * bins);
    if (b >= bins) b = bins - 1;  // p == 1.0 lands in the closed last bin
    ++hist[static_cast<std::size_t>(b)];
  }
  return hist;
}

}  // namespace aging
