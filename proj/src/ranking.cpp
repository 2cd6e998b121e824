#include "modshift/ranking.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "modshift/error.hpp"

namespace modshift {

std::vector<double> rank_transform(std::span<const double> values) {
  const std::size_t n = values.size();
  for (double v : values)
    if (!std::isfinite(v)) throw DataError("rank_transform: non-finite input");

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });

  std::vector<double> ranks(n);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i + 1;
    while (j < n && values[order[j]] == values[order[i]]) ++j;
    // Positions i+1 .. j (1-based) share their mean.
    const double avg = 0.5 * static_cast<double>(i + 1 + j);
    for (std::size_t k = i; k < j; ++k) ranks[order[k]] = avg;
    i = j;
  }
  return ranks;
}

}  // namespace modshift
