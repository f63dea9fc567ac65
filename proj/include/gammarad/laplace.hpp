#pragma once

#include <vector>

#include "gammarad/column_operator.hpp"
#include "gammarad/hilbert.hpp"
#include "gammarad/unif_gamma.hpp"

namespace gammarad {

// One kernel column: the profile t -> c e^{-mu t} feeding target coordinate
// `target_coord`.  A list of these describes an operator Phi from
// L2(0,inf) (x) l2 into the truncated target space, column k acting on the
// k-th domain basis vector.
struct ExpProfile {
  Complex c{1.0, 0.0};
  Complex mu{1.0, 0.0};  // Re mu > 0
  Index target_coord = 1;
};

// Diagonal-type operator with exponentially decaying kernel columns.  Its
// squared Gaussian norm is the exact sum of squared L2 column masses,
// sum_k |c_k|^2 / (2 Re mu_k).
struct RepresentableOperator {
  std::vector<ExpProfile> profiles;  // basis index k = position + 1
  Index target_trunc = 0;            // 0 = max target coordinate
  ScalarField field = ScalarField::kComplex;

  Index domain_trunc() const { return static_cast<Index>(profiles.size()); }
  SpaceSpec target() const;
  void validate() const;
  double gamma_norm_sq() const;
};

// Exact transform columns: integrating e^{-lambda t} against the k-th profile
// gives the column c_k / (lambda + mu_k) at coordinate sigma(k).
ColumnOperator laplace_hat(const RepresentableOperator& phi, Complex lambda);

// Exact squared transform norms along the vertical line Re = b:
// value(s) = sum_k |c_k|^2 / |b + i s + mu_k|^2.
struct DecayTable {
  std::vector<double> s_values;
  std::vector<double> values;
  bool strictly_decreasing_in_abs_s = false;  // checked for real-rate systems
  bool symmetric = false;                     // value(s) == value(-s) where both probed
};
DecayTable gamma_rl_decay(const RepresentableOperator& phi, double b,
                          const std::vector<double>& s_grid);

// Lattice in the closed half-plane {Re >= b}: real parts b and b(1/2 + j) for
// j = 1..j_max, imaginary parts (n + rho) b for |n| <= n_span.
struct HalfplaneLatticeParams {
  double b = 1.0;
  int j_max = 8;
  Index n_span = 16;
  double rho = 0.0;
};
std::vector<Complex> halfplane_lattice(const HalfplaneLatticeParams& params);

// Family {transform(lambda) : lambda in lattice} with its certified bracket.
struct HalfplaneReport {
  OperatorFamily family;
  UnifGammaBoundReport bounds;
  double lower_norm = 0.0;      // sqrt of the certified lower bound
  double phi_gamma_norm = 0.0;  // norm scale
  double scaled_ratio = 0.0;    // lower_norm * sqrt(b) / phi_gamma_norm
};
HalfplaneReport halfplane_family(const RepresentableOperator& phi,
                                 const HalfplaneLatticeParams& params,
                                 const UnifGammaConfig& cfg = {});

// lower_norm across a geometric grid of b values, the least-squares slope of
// log lower_norm against log b, and the largest scaled ratio seen (the
// empirical stand-in for the half-plane constant; nothing is assumed about
// its value, only the scaling trend is asserted downstream).
struct ScalingRow {
  double b = 0.0;
  double lower_norm = 0.0;
  double ratio = 0.0;
};
struct HalfplaneScalingReport {
  std::vector<ScalingRow> rows;
  double slope = 0.0;
  double max_ratio = 0.0;
  bool doubling_controlled = true;  // bound at 2b <= sqrt(2) * bound at b + slack
};
HalfplaneScalingReport halfplane_scaling(const RepresentableOperator& phi,
                                         const std::vector<double>& b_grid,
                                         const HalfplaneLatticeParams& tmpl,
                                         const UnifGammaConfig& cfg = {});

// Ray lattices for sector families.  Dyadic: r 2^n e^{+-i theta},
// n = n_min..n_max.  Decade grids: magnitudes lambda_min * 10^{j/ppd} up to
// lambda_max, on the rays e^{+-i theta}.  theta = 0 collapses to one ray.
std::vector<Complex> sector_lattice_dyadic(double r, double theta, Index n_min, Index n_max);
std::vector<Complex> sector_lattice_decades(double theta, double lambda_min,
                                            double lambda_max, int points_per_decade);

// Family {sqrt(lambda) transform(lambda) : lambda in lattice}.  The analytic
// upper bound is the geometric phi constant of the alpha = 1/2 power-scaled
// system on the ray, (1 + sqrt 2)/sqrt(cos theta), times the gamma norm of
// phi, times the number of rays.
struct SectorReport {
  OperatorFamily family;
  UnifGammaBoundReport bounds;
  double lower_norm = 0.0;
  double hilbert_constant = 0.0;  // (1 + sqrt 2) / sqrt(cos theta)
  double phi_gamma_norm = 0.0;
  int rays = 1;
  double upper_norm = 0.0;
  bool lower_within_upper = false;
};
SectorReport sector_family(const RepresentableOperator& phi, double theta,
                           const std::vector<Complex>& lattice,
                           const UnifGammaConfig& cfg = {});

// Two-line strip kernel, normalized so the pair carries total mass one:
//   P_j(alpha, s) = (1/2) sin(pi alpha) / (cosh(pi s) - (-1)^j cos(pi alpha)).
// P_0 integrates to 1 - alpha and P_1 to alpha (the harmonic measures of the
// two boundary lines at interior height alpha).
struct PoissonKernelParams {
  int j = 0;          // boundary line selector, 0 or 1
  double alpha = 0.5; // interior height, in (0, 1)
  double s = 0.0;     // horizontal coordinate
};
double poisson_kernel(const PoissonKernelParams& params);

// Closed-form line masses: 1 - alpha (j = 0) and alpha (j = 1).
double poisson_line_mass(int j, double alpha);

// Adaptive quadrature of P_0 + P_1 over [-half_width, half_width].
struct PoissonNormalization {
  double integral = 0.0;
  double error_estimate = 0.0;
};
PoissonNormalization poisson_normalization_quadrature(double alpha, double half_width = 40.0);

// Central-difference analyticity probe of lambda -> transform(lambda):
// the defect max_k |d/d(Im) - i d/d(Re)| of the columns decays like h^2.
struct AnalyticityCheck {
  double defect_coarse = 0.0;
  double defect_fine = 0.0;
  double ratio = 0.0;          // defect_coarse / defect_fine
  bool quadratic_decay = false;  // ratio close to (h_coarse/h_fine)^2
};
AnalyticityCheck laplace_analyticity_check(const RepresentableOperator& phi, Complex lambda,
                                           double h_coarse = 1e-4, double h_fine = 1e-5);

// Columnwise-exact inequality |c/(lambda+mu)|^2 <= (|c|^2/(2 Re mu)) / (2 Re lambda),
// summed: squared transform norm <= squared norm of phi / (2 Re lambda).
struct TransformNormCheck {
  double transform_gamma_sq = 0.0;
  double bound_value = 0.0;
  bool columnwise_holds = false;
  bool holds = false;
};
TransformNormCheck transform_norm_bound_check(const RepresentableOperator& phi, Complex lambda);

// Candidate constants for half-plane transform bounds: the quadrature-derived
// universal value sqrt(2 pi e^{2 pi} / (e^{2 pi} - 1)) and the
// window-independent modulated-sequence constant at rate b.  Which is sharper
// for a given b is undecided; both are reported, neither is asserted.
struct StripConstantCandidates {
  double universal = 0.0;
  double modulated_at_b = 0.0;
};
StripConstantCandidates strip_constant_candidates(double b);

}  // namespace gammarad
