#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "gammarad/family.hpp"
#include "gammarad/gamma_norm.hpp"

namespace gammarad {

// One probed cut of a witness sequence: the second moment of the Gaussian sum
// restricted to basis indices k >= cut.
struct TailPoint {
  Index cut = 1;
  double value = 0.0;
  double std_error = 0.0;
};

// Bracketing report for sup over bases and member sequences of
// E || sum_k g_k T_k h_k ||^2 (squared scale throughout).
//
// The supremum itself is not computable; the contract is a certified lower
// bound achieved by a recorded witness (basis + member assignment, re-runnable
// from the stored seeds) plus an upper bound that is either exact (diagonal
// structure), supplied analytically by the caller, or +infinity.
struct UnifGammaBoundReport {
  double lower_bound = 0.0;
  double lower_std_error = 0.0;  // zero on the exact l2 path
  double upper_bound = std::numeric_limits<double>::infinity();
  bool upper_is_finite = false;
  // Diagonal families (every column supported on one common coordinate per
  // index, injectively) admit an exact value: the standard-basis greedy sum.
  bool diagonal_exact = false;

  std::string winning_basis;                  // "standard" or "rotation-<i>"
  std::vector<std::size_t> witness_members;   // member index chosen for each k
  std::uint64_t probe_seed = 0;               // seed the rotation probes used
  Index rotation_dim = 0;                     // dimension the rotations acted on
  double best_rotation_value = 0.0;           // best value among rotation probes
  double standard_basis_value = 0.0;          // value of the standard-basis witness

  std::vector<TailPoint> tails;  // witness tail profile at the probed cuts
  double tail_floor = 0.0;       // min tail value over cuts after the first
};

struct UnifGammaConfig {
  GaussianDrawConfig draws{};     // used only when the target needs sampling
  int rotation_probes = 8;        // random orthonormal bases to try
  Index rotation_dim_cap = 96;    // rotations act on the first min(N, cap) coords
  std::uint64_t probe_seed = 1002;
  std::vector<Index> tail_cuts{};  // empty = quarter cuts of the truncation
  // Squared-scale upper bound supplied by a theorem about the family, when
  // one is available; +infinity otherwise.
  double analytic_upper_sq = std::numeric_limits<double>::infinity();
};

// Greedy certified lower bound for a family over basis indices 1..trunc:
// the standard basis plus `rotation_probes` random orthonormal bases, keeping
// the best witness found.  Exact on l2 targets; Monte Carlo elsewhere.
UnifGammaBoundReport unif_gamma_lower(const OperatorFamily& family, Index trunc,
                                      const UnifGammaConfig& cfg = {});

// Comparison of a convex combination sum_i w_i T_i against the family it is
// drawn from.  The combination is a single operator, so its bracket cannot
// exceed the family's (factor 1 for real scalars, 2 allowed for complex).
struct ConvexComparisonReport {
  double combo_value = 0.0;
  double combo_std_error = 0.0;
  double family_value = 0.0;
  double family_std_error = 0.0;
  double factor = 1.0;
  bool holds = false;
};

ConvexComparisonReport permanence_convex(const OperatorFamily& family,
                                         const std::vector<double>& weights,
                                         const UnifGammaConfig& cfg = {});

// Best found value of the Rademacher-average ratio
//   ( E || sum_k r_k S_k x_k ||^2 / E || sum_k r_k x_k ||^2 )^{1/2}
// over random finite selections (S_k) from the family and test vectors (x_k),
// with sign averages enumerated exactly (selection sizes <= 12).  Compared
// against sqrt(pi/2) times the family's upper bracket on the norm scale.
struct RademacherComparisonReport {
  double r_lower = 0.0;            // norm scale
  double unif_lower_norm = 0.0;    // sqrt of the greedy lower bound
  double unif_upper_norm = std::numeric_limits<double>::infinity();
  double std_error = 0.0;
  bool inequality_holds = true;    // r_lower <= sqrt(pi/2) * upper + 4 sigma
  std::size_t best_selection_size = 0;
};

RademacherComparisonReport gamma_bound_vs_unif(const OperatorFamily& family,
                                               const UnifGammaConfig& cfg = {},
                                               std::uint64_t selection_seed = 7,
                                               int selections = 64);

// Coordinatewise domination of a diagonal family by a single diagonal
// operator: every member satisfies |t_k| <= |s_k| on each coordinate.  When
// it holds, a single square-summable majorant controls the whole family, and
// the report records that certificate.
struct DominatedCheckReport {
  bool dominated = false;
  std::size_t first_violation_member = 0;  // valid when !dominated
  Index first_violation_column = 0;        // valid when !dominated
  double majorant_column_sum_sq = 0.0;     // sum_k |s_k|^2
};

DominatedCheckReport dominated_check(const OperatorFamily& family,
                                     const ColumnOperator& majorant);

// Nested-chain comparison: the union of an increasing chain of families
// cannot beat the best single level by more than estimator noise — on the
// finite-p spaces.  On the sup-norm space the inequality is not asserted
// (that is exactly where it can fail); the report instead carries the
// union witness's tail profile so the caller can see whether tails vanish.
struct FatouUnionReport {
  double union_lower = 0.0;
  double union_std_error = 0.0;
  double max_level_lower = 0.0;
  double level_std_error = 0.0;
  bool applicable = false;   // target has p < infinity
  bool bound_holds = false;  // asserted only when applicable
  std::vector<TailPoint> union_tails;
  bool tails_vanish = false;  // last tail <= 2% of the full-sum value
};

FatouUnionReport fatou_union_bound(const std::vector<OperatorFamily>& chain,
                                   const UnifGammaConfig& cfg = {});

}  // namespace gammarad
