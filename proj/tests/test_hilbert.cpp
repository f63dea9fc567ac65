#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "gammarad/hilbert.hpp"

using namespace gammarad;

namespace {

HilbertSequenceSpec modulated_spec(double b, double rho, Index half_window) {
  HilbertSequenceSpec spec;
  spec.kind = HilbertKind::kModulated;
  spec.b = b;
  spec.rho = rho;
  spec.n_min = -half_window;
  spec.n_max = half_window;
  return spec;
}

HilbertSequenceSpec power_scaled_spec(double alpha, double r, double theta, Index n_min,
                                      Index n_max) {
  HilbertSequenceSpec spec;
  spec.kind = HilbertKind::kPowerScaled;
  spec.alpha = alpha;
  spec.r = r;
  spec.theta = theta;
  spec.n_min = n_min;
  spec.n_max = n_max;
  return spec;
}

}  // namespace

TEST_CASE("geometric rate exponentials are properly spaced with margin 1/3") {
  HilbertSequenceSpec spec;
  spec.kind = HilbertKind::kPureExp;
  for (int n = 1; n <= 12; ++n) spec.lambdas.emplace_back(std::ldexp(1.0, n), 0.0);
  CHECK(properly_spaced_margin(spec.lambdas) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  const GramSummary summary = gram(spec);
  CHECK(summary.dim == 12);
  // Reference value from an independent implementation.
  CHECK(summary.op_norm_sqrt == doctest::Approx(0.662910853230).epsilon(1e-9));
  CHECK(summary.min_eigenvalue > 0.0);
}

TEST_CASE("modulated window sections approach but never pass the closed constant") {
  const double constant = modulated_constant(1.0);
  CHECK(constant == doctest::Approx(1.075415102530).epsilon(1e-11));
  struct Ref {
    Index half;
    double value;
  };
  const std::vector<Ref> refs = {{16, 1.039188247314},
                                 {32, 1.055089491355},
                                 {64, 1.064262759109},
                                 {128, 1.069384617007}};
  double prev = 0.0;
  for (const Ref& ref : refs) {
    const GramSummary summary = gram(modulated_spec(1.0, 0.0, ref.half));
    CHECK(summary.dim == 2 * ref.half + 1);
    CHECK(summary.op_norm_sqrt == doctest::Approx(ref.value).epsilon(1e-9));
    CHECK(summary.op_norm_sqrt < constant);
    CHECK(summary.op_norm_sqrt > prev);
    prev = summary.op_norm_sqrt;
  }
}

TEST_CASE("modulation offset rho never lifts sections above the constant") {
  const double cap = modulated_constant(1.0) + 1e-12;
  for (double rho : {0.0, 0.25, 0.5, 0.9}) {
    const GramSummary summary = gram(modulated_spec(1.0, rho, 64));
    CHECK(summary.op_norm_sqrt <= cap);
    CHECK(summary.min_eigenvalue > 0.0);
  }
}

TEST_CASE("critical power-scaled sections converge toward one plus root two") {
  struct Ref {
    Index n_min;
    Index n_max;
    double value;
  };
  const std::vector<Ref> refs = {{-4, 3, 1.673938723485},
                                 {-8, 7, 1.926164909114},
                                 {-16, 15, 2.056938540024},
                                 {-32, 31, 2.107183199129},
                                 {-64, 63, 2.122947377197},
                                 {-128, 127, 2.127363902843},
                                 {-256, 255, 2.128532041119}};
  const double bound = 1.0 + std::sqrt(2.0);
  double prev = 0.0;
  for (const Ref& ref : refs) {
    const GramSummary summary = gram(power_scaled_spec(0.5, 1.0, 0.0, ref.n_min, ref.n_max));
    CHECK(summary.op_norm_sqrt == doctest::Approx(ref.value).epsilon(1e-9));
    CHECK(summary.op_norm_sqrt <= bound + 1e-9);
    CHECK(summary.op_norm_sqrt > prev);
    prev = summary.op_norm_sqrt;
  }
  const GeometricPhiProfile profile =
      power_scaled_phi_profile(power_scaled_spec(0.5, 1.0, 0.0, -128, 127));
  CHECK(phi_bound_geometric(profile.phi0, profile.ratio) ==
        doctest::Approx(2.414213562373).epsilon(1e-11));
}

TEST_CASE("off-critical power-scaled window with ray angle matches references") {
  const HilbertSequenceSpec spec = power_scaled_spec(0.3, 1.5, 0.7, 0, 63);
  const GramSummary summary = gram(spec);
  CHECK(summary.op_norm_sqrt == doctest::Approx(1.203606712797).epsilon(1e-9));
  const GeometricPhiProfile profile = power_scaled_phi_profile(spec);
  const double bound = phi_bound_geometric(profile.phi0, profile.ratio);
  CHECK(bound == doctest::Approx(3.275804467651).epsilon(1e-9));
  CHECK(summary.op_norm_sqrt <= bound);
}

TEST_CASE("power-scaled windows reject negative offsets below the critical exponent") {
  CHECK_THROWS_AS(gram(power_scaled_spec(0.3, 1.5, 0.7, -8, 7)), ValidationError);
}

TEST_CASE("phi majorization check accepts a valid diagonal profile") {
  const HilbertSequenceSpec spec = power_scaled_spec(0.5, 1.0, 0.0, -16, 15);
  const GramSummary summary = gram(spec);
  const GeometricPhiProfile profile = power_scaled_phi_profile(spec);
  std::vector<double> phi;
  for (Index d = 0; d < 32; ++d) {
    phi.push_back(profile.phi0 * std::pow(profile.ratio, static_cast<double>(d)));
  }
  const double tail = profile.phi0 * std::pow(profile.ratio, 32.0) / (1.0 - profile.ratio);
  const PhiMajorizationCheck check = check_phi_majorization(summary, phi, tail);
  CHECK(check.majorizes);
  CHECK(check.bound_holds);
  CHECK(check.phi_bound_value >= summary.op_norm_sqrt);

  // Zeroing the profile must produce a located violation.
  const PhiMajorizationCheck broken = check_phi_majorization(summary, {0.0}, 0.0);
  CHECK_FALSE(broken.majorizes);
  CHECK(broken.first_fail_row >= 0);
}

TEST_CASE("nested section report is monotone with a finite upper bound") {
  const HilbertSequenceSpec base = power_scaled_spec(0.5, 1.0, 0.0, -64, 63);
  const HilbertConstantReport report = hilbert_constant_report(base, {8, 16, 32, 64, 128});
  CHECK(report.monotone);
  CHECK(report.upper_is_finite);
  CHECK(report.lower <= report.upper);
  CHECK(report.gram_sqrts.size() == 5);
}

TEST_CASE("gram csv dump carries one row per matrix entry") {
  const GramSummary summary = gram(modulated_spec(1.0, 0.0, 2));
  const std::string csv = gram_csv(summary);
  std::istringstream lines(csv);
  std::string line;
  int count = 0;
  while (std::getline(lines, line)) ++count;
  CHECK(count == 1 + summary.dim * summary.dim);
}

TEST_CASE("time-grid transfer keeps the gaussian sum under the declared constant") {
  const HilbertSequenceSpec spec = modulated_spec(1.0, 0.0, 4);
  const double t_cut = 12.0;
  const auto op_on_grid = [&spec](const TimeGrid& grid) {
    return sequence_on_grid(spec, grid);
  };
  GaussianDrawConfig draws;
  draws.seed = 5;
  draws.n_samples = 20000;
  draws.batch_count = 10;
  const double constant = modulated_constant(spec.b) * 1.05;
  const TransferReport report =
      hilbert_sequence_gaussian_transfer(op_on_grid, spec, t_cut, 48, constant, draws);
  CHECK(report.grid_converged);
  CHECK(report.bound_holds);
  CHECK(report.gaussian_sum <=
        constant * constant * report.gamma_norm_sq + 4.0 * report.gaussian_sum_std_error + 1e-9);
  CHECK(report.tail_mass_bound < 1e-6);
}
