#pragma once

#include <functional>
#include <string>
#include <vector>

#include "gammarad/errors.hpp"
#include "gammarad/space.hpp"

namespace gammarad {

// Numerics cannot decide convergence of a positive series; what it can do is
// track partial sums across doubling truncations and report whether the mass
// added per doubling keeps up with the first doubling or falls away.  For
// sum 1/k each doubling adds about log(2); for any convergent series the
// increments die out geometrically or faster.
struct DoublingProfile {
  std::vector<Index> truncations;    // N0 * 2^j
  std::vector<double> partial_sums;  // S(N0 * 2^j)
  std::vector<double> increments;    // S(N0 * 2^{j+1}) - S(N0 * 2^j)
  double ratio_floor = 0.0;          // min over j >= 2 of I_j / I_1
  bool divergent_trending = false;   // every later increment keeps >= 90% of I_1

  double last_sum() const { return partial_sums.empty() ? 0.0 : partial_sums.back(); }
};

// Evaluates S(N) = sum_{k=1..N} term(k) at truncations N0 * 2^j, j = 0..doublings,
// and flags the series divergent-trending when each increment I_j
// (j = 2..doublings) stays at or above ratio * I_1.  The default five
// doublings and ratio 0.9 keep harmonic-type series on the divergent side
// while any geometric decay of increments (every convergent comparison case
// here decays at least like 1/2 per doubling) falls through the floor.
DoublingProfile doubling_profile(const std::function<double(Index)>& term, Index n0 = 512,
                                 int doublings = 5, double ratio = 0.9);

}  // namespace gammarad
