#pragma once

#include <Eigen/Dense>

#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "gammarad/column_operator.hpp"
#include "gammarad/gamma_norm.hpp"

namespace gammarad {

// Families of exponential-type functions in L2(0, infinity), indexed over an
// integer window:
//   pure_exp:     f_n(s) = exp(-lambda_n s),        Re lambda_n > 0
//   modulated:    f_n(s) = exp(-b s + 2 pi i (n + rho) s)
//   power_scaled: f_n(s) = mu_n^alpha exp(-mu_n s), mu_n = r 2^n exp(i theta)
enum class HilbertKind { kPureExp, kModulated, kPowerScaled };

struct HilbertSequenceSpec {
  HilbertKind kind = HilbertKind::kPureExp;

  std::vector<Complex> lambdas;  // pure_exp: one rate per index

  double b = 1.0;    // modulated decay rate
  double rho = 0.0;  // modulated frequency offset, in [0, 1)

  double alpha = 0.5;  // power_scaled exponent, in (0, 1/2]
  double r = 1.0;      // power_scaled radius, > 0
  double theta = 0.0;  // power_scaled ray angle, |theta| < pi/2

  Index n_min = 0;  // window for modulated / power_scaled
  Index n_max = 0;

  Index window_size() const;
  void validate() const;
};

// Gram matrix of a finite section together with its spectral summary.  The
// square root of the largest eigenvalue is a certified lower bound for the
// best constant C in || sum a_n f_n ||^2 <= C^2 sum |a_n|^2.
struct GramSummary {
  Index dim = 0;
  Eigen::MatrixXcd entries;
  double op_norm_sqrt = 0.0;
  double min_eigenvalue = 0.0;
};

// Exact closed-form Gram entries (no quadrature), Hermitian eigensolve for
// the spectral summary.  Throws when the section fails positive
// semidefiniteness beyond 1e-10 (that would mean the closed forms are wrong).
GramSummary gram(const HilbertSequenceSpec& spec);

// Certified constant from a summable off-diagonal majorant phi:
// returns sqrt(phi(0) + 2 sum_{j>=1} phi(j)), where phi_values covers
// j = 0..J and `tail` bounds the rest of the sum.  A non-finite tail returns
// +infinity (no certificate).
double phi_bound(const std::vector<double>& phi_values, double tail = 0.0);

// Geometric special case phi(j) = phi0 * ratio^j:
// the constant is sqrt(phi0 (1 + ratio) / (1 - ratio)).
double phi_bound_geometric(double phi0, double ratio);

// The geometric majorant profile |G_{nm}| <= phi0 * ratio^{|n-m|} valid for
// power_scaled specs: phi0 = r^{2 alpha - 1} / cos(theta), ratio = 2^{-alpha}.
struct GeometricPhiProfile {
  double phi0 = 0.0;
  double ratio = 0.0;
};
GeometricPhiProfile power_scaled_phi_profile(const HilbertSequenceSpec& spec);

// The window-independent constant 1 / sqrt(1 - exp(-2b)) for modulated specs.
double modulated_constant(double b);

// Entrywise verification that phi majorizes the Gram moduli along diagonals,
// followed by the spectral comparison op_norm_sqrt <= phi bound.
struct PhiMajorizationCheck {
  bool majorizes = false;
  double phi_bound_value = 0.0;
  bool bound_holds = false;
  Index first_fail_row = -1;  // valid when !majorizes
  Index first_fail_col = -1;
};
PhiMajorizationCheck check_phi_majorization(const GramSummary& summary,
                                            const std::vector<double>& phi_values,
                                            double tail = 0.0);

// min over pairs of |lambda_m - lambda_n| / |lambda_m + conj(lambda_n)|;
// zero signals a degenerate (repeated-rate) system.
double properly_spaced_margin(const std::vector<Complex>& lambdas);

// Bracket for the best constant of a spec: exact Gram sections of growing
// dimension below, a closed-form certificate above when one exists.
struct HilbertConstantReport {
  std::vector<Index> dims;
  std::vector<double> gram_sqrts;
  double lower = 0.0;
  double upper = std::numeric_limits<double>::infinity();
  bool upper_is_finite = false;
  bool monotone = true;  // gram_sqrts nondecreasing across nested sections
};
HilbertConstantReport hilbert_constant_report(const HilbertSequenceSpec& base,
                                              const std::vector<Index>& dims);

// Row-major CSV of the Gram entries, each complex value as "re,im".
std::string gram_csv(const GramSummary& summary);

// Composite Gauss-Legendre grid on [0, t_cut]: 16 nodes per panel.  A
// function f on (0, infinity) is represented by the coordinate vector
// (sqrt(w_i) f(t_i))_i, so Euclidean norms approximate L2 norms and the
// omitted tail beyond t_cut is controlled analytically.
struct TimeGrid {
  double t_cut = 0.0;
  int panels = 0;
  std::vector<double> points;
  std::vector<double> weights;

  Index size() const { return static_cast<Index>(points.size()); }
};
TimeGrid make_time_grid(double t_cut, int panels);

// Discretized members of the sequence on the grid (coordinates 1..grid.size()).
std::vector<FiniteVector> sequence_on_grid(const HilbertSequenceSpec& spec,
                                           const TimeGrid& grid);

// Analytic bound on max_n of the L2 mass of f_n beyond t_cut.
double sequence_tail_mass_bound(const HilbertSequenceSpec& spec, double t_cut);

// Transfer inequality E || sum_n g_n T f_n ||^2 <= C^2 * E || sum_i g_i T e_i ||^2
// for an operator T built on a declared time grid.  The operator is rebuilt
// on twice- and four-times-refined grids; failure of the refinement changes
// to at least halve flags the grid as too coarse.
struct TransferReport {
  double gaussian_sum = 0.0;  // finest grid
  double gaussian_sum_std_error = 0.0;
  double gamma_norm_sq = 0.0;  // finest grid
  double gamma_norm_std_error = 0.0;
  double constant_upper = 0.0;  // C, norm scale
  bool bound_holds = false;
  bool grid_converged = false;
  double refinement_change_coarse = 0.0;  // |v(2x) - v(1x)|
  double refinement_change_fine = 0.0;    // |v(4x) - v(2x)|
  double tail_mass_bound = 0.0;
  bool tail_negligible = false;
};
TransferReport hilbert_sequence_gaussian_transfer(
    const std::function<ColumnOperator(const TimeGrid&)>& op_on_grid,
    const HilbertSequenceSpec& spec, double t_cut, int base_panels,
    double constant_upper, const GaussianDrawConfig& draws);

}  // namespace gammarad
