#include <cmath>
#include <complex>
#include <vector>

#include "doctest.h"
#include "gammarad/laplace.hpp"
#include "gammarad/weiss.hpp"

using namespace gammarad;

namespace {

constexpr double kPi = 3.14159265358979323846;

RepresentableOperator quadratic_profile(Index n) {
  return make_diagonal_system(RateKind::kQuadratic, WeightKind::kUnit, n).profile_operator();
}

}  // namespace

TEST_CASE("transform columns are the expected simple poles") {
  RepresentableOperator phi;
  phi.profiles = {ExpProfile{Complex(3.0, 0.0), Complex(1.0, 0.0), 1}};
  phi.target_trunc = 1;
  phi.validate();
  const ColumnOperator at_one = laplace_hat(phi, Complex(1.0, 0.0));
  CHECK(at_one.column(1).coeff(1).real() == doctest::Approx(1.5).epsilon(1e-15));
  const ColumnOperator at_i = laplace_hat(phi, Complex(0.5, 1.0));
  // 3 / (1.5 + i) has squared modulus 9 / 3.25.
  CHECK(std::norm(at_i.column(1).coeff(1)) == doctest::Approx(9.0 / 3.25).epsilon(1e-14));
  CHECK_THROWS_AS(laplace_hat(phi, Complex(-1.0, 0.0)), DomainError);
}

TEST_CASE("profile gamma norm is the closed half-line integral") {
  const RepresentableOperator phi = quadratic_profile(10000);
  double expected = 0.0;
  for (Index k = 10000; k >= 1; --k) {
    expected += 1.0 / (2.0 * static_cast<double>(k) * k);
  }
  CHECK(phi.gamma_norm_sq() == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("halfplane lattice enumerates the declared grid") {
  HalfplaneLatticeParams params;
  params.b = 2.0;
  params.j_max = 3;
  params.n_span = 2;
  const std::vector<Complex> lattice = halfplane_lattice(params);
  CHECK(lattice.size() == static_cast<std::size_t>((3 + 1) * (2 * 2 + 1)));
  bool has_base = false;
  bool has_shifted = false;
  for (const Complex& z : lattice) {
    CHECK(z.real() >= 2.0 - 1e-15);
    if (z == Complex(2.0, 0.0)) has_base = true;
    if (z == Complex(2.0 * 1.5, 2.0 * 2.0)) has_shifted = true;
  }
  CHECK(has_base);
  CHECK(has_shifted);
}

TEST_CASE("halfplane certified bound matches references across scales") {
  // L(b) values from an independent implementation of the same lattice.
  struct Ref {
    double b;
    double value;
  };
  const std::vector<Ref> refs = {{0.0625, 0.982860787901},
                                 {1.0, 0.553928673550},
                                 {16.0, 0.101581106852}};
  const RepresentableOperator phi = quadratic_profile(10000);
  for (const Ref& ref : refs) {
    HalfplaneLatticeParams params;
    params.b = ref.b;
    const HalfplaneReport report = halfplane_family(phi, params);
    CHECK(report.bounds.diagonal_exact);
    CHECK(report.lower_norm == doctest::Approx(ref.value).epsilon(1e-9));
    CHECK(report.phi_gamma_norm == doctest::Approx(std::sqrt(phi.gamma_norm_sq())));
    CHECK(report.scaled_ratio ==
          doctest::Approx(report.lower_norm * std::sqrt(ref.b) / report.phi_gamma_norm));
  }
}

TEST_CASE("halfplane scaling sweep has the inverse square root signature") {
  const RepresentableOperator phi = quadratic_profile(10000);
  std::vector<double> b_grid;
  for (int e = -2; e <= 2; ++e) b_grid.push_back(std::ldexp(1.0, e));
  const HalfplaneScalingReport report = halfplane_scaling(phi, b_grid, {});
  REQUIRE(report.rows.size() == 5);
  CHECK(report.slope < -0.35);
  CHECK(report.slope > -0.65);
  CHECK(report.doubling_controlled);
  CHECK(report.max_ratio < 1.0);
  for (std::size_t i = 1; i < report.rows.size(); ++i) {
    CHECK(report.rows[i].lower_norm < report.rows[i - 1].lower_norm);
  }
}

TEST_CASE("dyadic sector lattice is exact powers of two along the rays") {
  const std::vector<Complex> axis = sector_lattice_dyadic(0.25, 0.0, 0, 5);
  REQUIRE(axis.size() == 6);
  CHECK(axis.front() == Complex(0.25, 0.0));
  CHECK(axis.back() == Complex(8.0, 0.0));
  const std::vector<Complex> rays = sector_lattice_dyadic(0.25, 0.5, 0, 5);
  CHECK(rays.size() == 12);
  for (const Complex& z : rays) {
    CHECK(std::abs(std::abs(std::arg(z)) - 0.5) < 1e-15);
  }
}

TEST_CASE("sector bound on the positive axis matches the reference values") {
  const RepresentableOperator phi = quadratic_profile(10000);
  const SectorReport dyadic =
      sector_family(phi, 0.0, sector_lattice_dyadic(0.25, 0.0, 0, 27));
  CHECK(dyadic.rays == 1);
  CHECK(dyadic.bounds.lower_bound == doctest::Approx(0.410449595).epsilon(1e-8));
  CHECK(dyadic.lower_within_upper);

  const SectorReport decades =
      sector_family(phi, 0.0, sector_lattice_decades(0.0, 0.25, 2.0e7, 8));
  CHECK(decades.bounds.lower_bound == doctest::Approx(0.410503074).epsilon(1e-8));
  const double limit = kPi * kPi / 24.0;
  CHECK(std::abs(decades.bounds.lower_bound - limit) < 0.1 * limit);
}

TEST_CASE("opening the sector doubles the rays and scales the upper constant") {
  const RepresentableOperator phi = quadratic_profile(2000);
  const double theta = 0.5;
  const SectorReport report =
      sector_family(phi, theta, sector_lattice_dyadic(0.25, theta, 0, 20));
  CHECK(report.rays == 2);
  CHECK(report.hilbert_constant > 0.0);
  CHECK(report.upper_norm ==
        doctest::Approx(2.0 * report.hilbert_constant * report.phi_gamma_norm).epsilon(1e-12));
  CHECK(report.lower_within_upper);
  CHECK_THROWS_AS(sector_family(phi, kPi / 2.0, sector_lattice_dyadic(0.25, 0.1, 0, 4)),
                  ValidationError);
}

TEST_CASE("normalized two-line kernel has unit total mass") {
  for (double alpha : {0.25, 0.5, 0.75}) {
    CHECK(poisson_line_mass(0, alpha) == doctest::Approx(1.0 - alpha).epsilon(1e-12));
    CHECK(poisson_line_mass(1, alpha) == doctest::Approx(alpha).epsilon(1e-12));
    const double total = poisson_normalization_quadrature(alpha);
    CHECK(std::abs(total - 1.0) <= 1e-6);
  }
  CHECK(poisson_kernel({0, 0.5, 0.0}) == doctest::Approx(0.5).epsilon(1e-14));
  // The kernel is even in s on both lines.
  CHECK(poisson_kernel({1, 0.3, 1.7}) == doctest::Approx(poisson_kernel({1, 0.3, -1.7})));
  CHECK_THROWS_AS(poisson_kernel({2, 0.5, 0.0}), ValidationError);
}

TEST_CASE("resolvent frequency decay curve is strictly decreasing and symmetric") {
  const RepresentableOperator phi = quadratic_profile(10000);
  std::vector<double> grid;
  for (int s = -100; s <= 100; s += 20) grid.push_back(static_cast<double>(s));
  const DecayTable table = gamma_rl_decay(phi, 1.0, grid);
  CHECK(table.strictly_decreasing_in_abs_s);
  CHECK(table.symmetric);
  // Reference endpoints from an independent implementation.
  std::size_t at_zero = 0;
  for (std::size_t i = 0; i < table.s_values.size(); ++i) {
    if (table.s_values[i] == 0.0) at_zero = i;
  }
  CHECK(table.values[at_zero] == doctest::Approx(0.306837).epsilon(1e-5));
  CHECK(table.values.front() <= 2e-3);
  CHECK(table.values.back() <= 2e-3);
}

TEST_CASE("finite difference probe sees the quadratic defect of analyticity") {
  const RepresentableOperator phi = quadratic_profile(2000);
  const AnalyticityCheck check = laplace_analyticity_check(phi, Complex(2.0, 0.5));
  CHECK(check.quadratic_decay);
  CHECK(check.ratio > 25.0);
  CHECK(check.ratio < 400.0);
  CHECK_THROWS_AS(laplace_analyticity_check(phi, Complex(1e-6, 0.0)), DomainError);
}

TEST_CASE("transform norm stays under the growth bound on the right half plane") {
  const RepresentableOperator phi = quadratic_profile(2000);
  const TransformNormCheck check = transform_norm_bound_check(phi, Complex(1.0, 0.7));
  CHECK(check.holds);
  CHECK(check.columnwise_holds);
  CHECK(check.transform_gamma_sq <= check.bound_value + 1e-12);
}

TEST_CASE("strip constants: universal value and window-free modulated value") {
  const StripConstantCandidates cand = strip_constant_candidates(1.0);
  const double e2pi = std::exp(2.0 * kPi);
  CHECK(cand.universal == doctest::Approx(std::sqrt(2.0 * kPi * e2pi / (e2pi - 1.0))));
  CHECK(cand.universal == doctest::Approx(2.508972).epsilon(1e-6));
  CHECK(cand.modulated_at_b == doctest::Approx(1.075415102530).epsilon(1e-11));
}
