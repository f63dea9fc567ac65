#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gammarad/column_operator.hpp"
#include "gammarad/rng.hpp"
#include "gammarad/space.hpp"

namespace gammarad {

// Result of a second-moment computation E || sum_k g_k v_k ||^2 for
// independent standard normals g_k.  Exact results carry std_error 0; Monte
// Carlo results carry the batch-mean standard error and the effective sample
// count actually used.
struct SecondMomentEstimate {
  double value = 0.0;
  double std_error = 0.0;
  std::int64_t n_samples = 0;
  int batch_count = 0;
  bool exact = true;

  // True when `expected` lies within `n_sigma` standard errors (always
  // requires equality within round-off for exact results).
  bool consistent_with(double expected, double n_sigma = 4.0) const {
    const double tol = exact ? 1e-12 * std::max(1.0, std::abs(value))
                             : n_sigma * std_error;
    return std::abs(value - expected) <= tol;
  }
};

// An ordered orthonormal system used as the basis of a Gaussian sum.
struct Basis {
  std::string label;
  std::vector<FiniteVector> vectors;

  static Basis standard(Index count);
  double worst_gram_defect() const;
  void validate(double tol = 1e-10) const;  // throws BasisError when violated
};

// E || sum_k g_k v_k ||^2 by Monte Carlo with the batching plan in `cfg`.
SecondMomentEstimate mc_second_moment(const std::vector<const FiniteVector*>& vectors,
                                      const SpaceSpec& target,
                                      const GaussianDrawConfig& cfg);

// Squared gamma-norm of a column operator: E || sum_k g_k T e_k ||^2.
// On an l2 target this is exactly the sum of squared column norms
// (orthogonality kills every cross term) and no sampling happens.
SecondMomentEstimate gamma_norm_sq(const ColumnOperator& op,
                                   const GaussianDrawConfig& cfg);

// Same quantity, but always estimated by Monte Carlo; used to cross-check the
// sampling path against the exact one.
SecondMomentEstimate gamma_norm_sq_mc(const ColumnOperator& op,
                                      const GaussianDrawConfig& cfg);

// E || sum_{k=M}^{N} g_k T_k h_k ||^2 for a member sequence (T_k) aligned with
// basis vectors h_k; ops[j] pairs with basis.vectors[j].  Exact on l2.
SecondMomentEstimate mixed_gaussian_sum_sq(const std::vector<const ColumnOperator*>& ops,
                                           const Basis& basis,
                                           const GaussianDrawConfig& cfg);

// Exact Rademacher second moment 2^-n sum_{signs} || sum_k s_k v_k ||^2 by
// full enumeration; n is capped at 12 (4096 patterns).
double rademacher_sum_sq_exact(const std::vector<const FiniteVector*>& vectors,
                               const SpaceSpec& target);

// Absolute moments of a standard normal: E|g|^p = 2^{p/2} Gamma((p+1)/2)/sqrt(pi).
double gamma_abs_moment(double p);

}  // namespace gammarad
