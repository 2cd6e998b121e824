#pragma once

#include <span>
#include <vector>

#include "modshift/embedding.hpp"
#include "modshift/pairs.hpp"

namespace modshift {

/// 1 - cos(u, v), clamped to [0, 2]. Throws DataError on a dimension
/// mismatch or a zero vector.
double cosine_distance(std::span<const double> u, std::span<const double> v);

/// Distance of each (seed, neighbor) pair in `space`, in pair order.
std::vector<double> pair_distances(const EmbeddingSpace& space, const PairSet& pairs);

inline constexpr double kDefaultRatioEps = 1e-9;

struct RatioRanks {
  std::vector<double> ratios;  // (d_a + eps) / (d_b + eps)
  std::vector<double> ranks;   // ascending in ratio, tie-averaged
};

RatioRanks ratio_ranks(std::span<const double> d_a, std::span<const double> d_b,
                       double eps = kDefaultRatioEps);

}  // namespace modshift
