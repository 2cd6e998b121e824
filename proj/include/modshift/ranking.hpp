#pragma once

#include <span>
#include <vector>

namespace modshift {

/// Ascending ranks 1..N; tied values share the mean of the positions they
/// cover, so the ranks always sum to N(N+1)/2. Throws DataError on
/// non-finite input.
std::vector<double> rank_transform(std::span<const double> values);

}  // namespace modshift
