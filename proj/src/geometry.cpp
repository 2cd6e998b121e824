#include "modshift/geometry.hpp"

#include <algorithm>
#include <cmath>

#include "modshift/error.hpp"
#include "modshift/ranking.hpp"

namespace modshift {

double cosine_distance(std::span<const double> u, std::span<const double> v) {
  if (u.size() != v.size()) throw DataError("cosine_distance: dimension mismatch");
  double dot = 0.0;
  double uu = 0.0;
  double vv = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    dot += u[i] * v[i];
    uu += u[i] * u[i];
    vv += v[i] * v[i];
  }
  if (uu == 0.0 || vv == 0.0) throw DataError("cosine_distance: zero vector");
  const double d = 1.0 - dot / (std::sqrt(uu) * std::sqrt(vv));
  return std::clamp(d, 0.0, 2.0);
}

std::vector<double> pair_distances(const EmbeddingSpace& space, const PairSet& pairs) {
  std::vector<double> out;
  out.reserve(pairs.pairs.size());
  for (std::size_t i = 0; i < pairs.pairs.size(); ++i) {
    const auto& p = pairs.pairs[i];
    const auto a = space.find(p.seed);
    const auto b = space.find(p.neighbor);
    if (!a || !b)
      throw DataError("pair " + std::to_string(i) + " (" + p.seed + ", " + p.neighbor +
                      "): word missing from space '" + space.meta().model_id + "'");
    out.push_back(cosine_distance(space.row(*a), space.row(*b)));
  }
  return out;
}

RatioRanks ratio_ranks(std::span<const double> d_a, std::span<const double> d_b, double eps) {
  if (d_a.size() != d_b.size()) throw DataError("ratio_ranks: length mismatch");
  if (!(eps >= 0.0)) throw DataError("ratio_ranks: eps must be nonnegative");
  RatioRanks out;
  out.ratios.reserve(d_a.size());
  for (std::size_t i = 0; i < d_a.size(); ++i) {
    if (!(d_a[i] >= 0.0) || !(d_b[i] >= 0.0))
      throw DataError("ratio_ranks: negative or non-finite distance at " + std::to_string(i));
    const double r = (d_a[i] + eps) / (d_b[i] + eps);
    if (!std::isfinite(r))
      throw NumericalError("ratio_ranks: undefined ratio at pair " + std::to_string(i) +
                           " (zero distance with eps = 0)");
    out.ratios.push_back(r);
  }
  out.ranks = rank_transform(out.ratios);
  return out;
}

}  // namespace modshift
