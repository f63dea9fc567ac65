#include "gammarad/series.hpp"

#include <cmath>

namespace gammarad {

DoublingProfile doubling_profile(const std::function<double(Index)>& term, Index n0,
                                 int doublings, double ratio) {
  if (n0 < 2) throw ValidationError("doubling_profile: base truncation must be >= 2");
  if (doublings < 2 || doublings > 40) {
    throw ValidationError("doubling_profile: doublings must lie in [2, 40]");
  }
  if (!(ratio > 0.0 && ratio < 1.0)) {
    throw ValidationError("doubling_profile: ratio must lie in (0, 1)");
  }

  DoublingProfile profile;
  double running = 0.0;
  Index next_k = 1;
  for (int j = 0; j <= doublings; ++j) {
    const Index cut = n0 << j;
    for (; next_k <= cut; ++next_k) {
      const double t = term(next_k);
      if (!std::isfinite(t) || t < 0.0) {
        throw NumericRangeError("doubling_profile: terms must be finite and nonnegative");
      }
      running += t;
    }
    profile.truncations.push_back(cut);
    profile.partial_sums.push_back(running);
  }
  for (int j = 1; j <= doublings; ++j) {
    profile.increments.push_back(profile.partial_sums[static_cast<std::size_t>(j)] -
                                 profile.partial_sums[static_cast<std::size_t>(j) - 1]);
  }

  const double first = profile.increments.front();
  if (first <= 0.0) {
    profile.ratio_floor = 0.0;
    profile.divergent_trending = false;
    return profile;
  }
  double floor_ratio = std::numeric_limits<double>::infinity();
  for (std::size_t j = 1; j < profile.increments.size(); ++j) {
    floor_ratio = std::min(floor_ratio, profile.increments[j] / first);
  }
  profile.ratio_floor = floor_ratio;
  profile.divergent_trending = floor_ratio >= ratio;
  return profile;
}

}  // namespace gammarad
