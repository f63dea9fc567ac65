#include "gammarad/laplace.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace gammarad {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Column value of the transform at lambda for one profile.
Complex transform_entry(const ExpProfile& p, Complex lambda) {
  return p.c / (lambda + p.mu);
}

void require_right_halfplane(Complex lambda, const char* what) {
  if (!(lambda.real() > 0.0)) {
    throw DomainError(std::string(what) + ": Re(lambda) must be positive");
  }
}

}  // namespace

SpaceSpec RepresentableOperator::target() const {
  Index hi = target_trunc;
  for (const ExpProfile& p : profiles) hi = std::max(hi, p.target_coord);
  if (hi < 1) hi = 1;
  return SpaceSpec{2.0, hi, field};
}

void RepresentableOperator::validate() const {
  if (target_trunc < 0) {
    throw ValidationError("RepresentableOperator: negative target truncation");
  }
  for (std::size_t i = 0; i < profiles.size(); ++i) {
    const ExpProfile& p = profiles[i];
    if (!(p.mu.real() > 0.0) || !std::isfinite(p.mu.real()) || !std::isfinite(p.mu.imag())) {
      throw ValidationError("RepresentableOperator: profile " + std::to_string(i + 1) +
                            " needs Re(mu) > 0 and finite mu");
    }
    if (!std::isfinite(p.c.real()) || !std::isfinite(p.c.imag())) {
      throw ValidationError("RepresentableOperator: profile " + std::to_string(i + 1) +
                            " has a non-finite coefficient");
    }
    if (p.target_coord < 1) {
      throw ValidationError("RepresentableOperator: profile " + std::to_string(i + 1) +
                            " has target coordinate < 1");
    }
    if (target_trunc > 0 && p.target_coord > target_trunc) {
      throw ValidationError("RepresentableOperator: profile " + std::to_string(i + 1) +
                            " exceeds the stated target truncation");
    }
  }
}

double RepresentableOperator::gamma_norm_sq() const {
  validate();
  double sum = 0.0;
  for (const ExpProfile& p : profiles) {
    sum += std::norm(p.c) / (2.0 * p.mu.real());
  }
  return sum;
}

ColumnOperator laplace_hat(const RepresentableOperator& phi, Complex lambda) {
  phi.validate();
  require_right_halfplane(lambda, "laplace_hat");
  const SpaceSpec tgt = phi.target();
  const Index dom = std::max<Index>(phi.domain_trunc(), 1);
  ColumnOperator op(tgt, dom);
  for (std::size_t i = 0; i < phi.profiles.size(); ++i) {
    const ExpProfile& p = phi.profiles[i];
    const Complex v = transform_entry(p, lambda);
    if (v == Complex{0.0, 0.0}) continue;
    FiniteVector col;
    col.add_entry(p.target_coord, v);
    col.finish();
    op.set_column(static_cast<Index>(i + 1), std::move(col));
  }
  return op;
}

DecayTable gamma_rl_decay(const RepresentableOperator& phi, double b,
                          const std::vector<double>& s_grid) {
  phi.validate();
  if (s_grid.empty()) throw DomainError("gamma_rl_decay: empty frequency grid");
  bool real_rates = true;
  for (const ExpProfile& p : phi.profiles) {
    if (!(b + p.mu.real() > 0.0)) {
      throw DomainError("gamma_rl_decay: line Re = b must stay right of every -mu");
    }
    if (p.mu.imag() != 0.0) real_rates = false;
  }

  DecayTable table;
  table.s_values = s_grid;
  table.values.reserve(s_grid.size());
  for (double s : s_grid) {
    if (!std::isfinite(s)) throw DomainError("gamma_rl_decay: non-finite frequency");
    double v = 0.0;
    for (const ExpProfile& p : phi.profiles) {
      const double re = b + p.mu.real();
      const double im = s + p.mu.imag();
      v += std::norm(p.c) / (re * re + im * im);
    }
    table.values.push_back(v);
  }

  // Monotone decay in |s| is a theorem only when every rate is real (each
  // term is then a function of s^2); probe it pairwise on the given grid.
  std::vector<std::size_t> order(s_grid.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b2) {
    return std::abs(s_grid[a]) < std::abs(s_grid[b2]);
  });
  bool decreasing = real_rates && !phi.profiles.empty();
  for (std::size_t i = 0; i + 1 < order.size() && decreasing; ++i) {
    const double a_abs = std::abs(s_grid[order[i]]);
    const double b_abs = std::abs(s_grid[order[i + 1]]);
    const double va = table.values[order[i]];
    const double vb = table.values[order[i + 1]];
    if (a_abs < b_abs) {
      if (!(vb < va)) decreasing = false;
    } else if (std::abs(va - vb) > 1e-12 * std::max(1.0, va)) {
      decreasing = false;  // equal |s| must give equal values for real rates
    }
  }
  table.strictly_decreasing_in_abs_s = decreasing;

  bool symmetric = true;
  for (std::size_t i = 0; i < s_grid.size() && symmetric; ++i) {
    for (std::size_t j = i + 1; j < s_grid.size(); ++j) {
      if (s_grid[j] == -s_grid[i]) {
        if (std::abs(table.values[i] - table.values[j]) >
            1e-12 * std::max(1.0, table.values[i])) {
          symmetric = false;
        }
        break;
      }
    }
  }
  table.symmetric = symmetric && real_rates;
  return table;
}

std::vector<Complex> halfplane_lattice(const HalfplaneLatticeParams& params) {
  if (!(params.b > 0.0) || !std::isfinite(params.b)) {
    throw DomainError("halfplane_lattice: b must be positive and finite");
  }
  if (params.j_max < 0 || params.n_span < 0) {
    throw DomainError("halfplane_lattice: j_max and n_span must be nonnegative");
  }
  std::vector<double> sigmas;
  sigmas.push_back(params.b);
  for (int j = 1; j <= params.j_max; ++j) {
    sigmas.push_back(params.b * (0.5 + static_cast<double>(j)));
  }
  std::vector<Complex> points;
  points.reserve(sigmas.size() * (2 * static_cast<std::size_t>(params.n_span) + 1));
  for (double sigma : sigmas) {
    for (Index n = -params.n_span; n <= params.n_span; ++n) {
      const double t = (static_cast<double>(n) + params.rho) * params.b;
      points.emplace_back(sigma, t);
    }
  }
  return points;
}

HalfplaneReport halfplane_family(const RepresentableOperator& phi,
                                 const HalfplaneLatticeParams& params,
                                 const UnifGammaConfig& cfg) {
  const std::vector<Complex> lattice = halfplane_lattice(params);
  HalfplaneReport report;
  report.family = OperatorFamily("halfplane_transforms");
  for (Complex lambda : lattice) {
    report.family.add(laplace_hat(phi, lambda));
  }
  report.bounds = unif_gamma_lower(report.family, phi.domain_trunc(), cfg);
  report.lower_norm = std::sqrt(std::max(0.0, report.bounds.lower_bound));
  report.phi_gamma_norm = std::sqrt(phi.gamma_norm_sq());
  report.scaled_ratio = report.phi_gamma_norm > 0.0
                            ? report.lower_norm * std::sqrt(params.b) / report.phi_gamma_norm
                            : 0.0;
  return report;
}

HalfplaneScalingReport halfplane_scaling(const RepresentableOperator& phi,
                                         const std::vector<double>& b_grid,
                                         const HalfplaneLatticeParams& tmpl,
                                         const UnifGammaConfig& cfg) {
  if (b_grid.size() < 2) {
    throw DomainError("halfplane_scaling: need at least two abscissas");
  }
  HalfplaneScalingReport report;
  report.rows.reserve(b_grid.size());
  for (double b : b_grid) {
    HalfplaneLatticeParams params = tmpl;
    params.b = b;
    const HalfplaneReport hp = halfplane_family(phi, params, cfg);
    report.rows.push_back(ScalingRow{b, hp.lower_norm, hp.scaled_ratio});
    report.max_ratio = std::max(report.max_ratio, hp.scaled_ratio);
  }

  // Least-squares slope of log lower_norm against log b.
  double mx = 0.0;
  double my = 0.0;
  for (const ScalingRow& row : report.rows) {
    if (!(row.lower_norm > 0.0)) {
      throw NumericRangeError("halfplane_scaling: vanishing lower bound breaks the log fit");
    }
    mx += std::log(row.b);
    my += std::log(row.lower_norm);
  }
  mx /= static_cast<double>(report.rows.size());
  my /= static_cast<double>(report.rows.size());
  double sxx = 0.0;
  double sxy = 0.0;
  for (const ScalingRow& row : report.rows) {
    const double dx = std::log(row.b) - mx;
    const double dy = std::log(row.lower_norm) - my;
    sxx += dx * dx;
    sxy += dx * dy;
  }
  if (!(sxx > 0.0)) throw DomainError("halfplane_scaling: abscissas must be distinct");
  report.slope = sxy / sxx;

  // Halving the abscissa should not gain more than the sqrt scaling allows.
  for (const ScalingRow& row : report.rows) {
    for (const ScalingRow& other : report.rows) {
      if (std::abs(other.b - 2.0 * row.b) <= 1e-12 * row.b) {
        if (other.lower_norm > std::sqrt(2.0) * row.lower_norm * (1.0 + 1e-9)) {
          report.doubling_controlled = false;
        }
      }
    }
  }
  return report;
}

std::vector<Complex> sector_lattice_dyadic(double r, double theta, Index n_min, Index n_max) {
  if (!(r > 0.0)) throw DomainError("sector_lattice_dyadic: r must be positive");
  if (!(std::abs(theta) < kPi / 2.0)) {
    throw DomainError("sector_lattice_dyadic: |theta| must be below pi/2");
  }
  if (n_min > n_max) throw DomainError("sector_lattice_dyadic: empty exponent range");
  std::vector<Complex> points;
  const Complex up{std::cos(theta), std::sin(theta)};
  for (Index n = n_min; n <= n_max; ++n) {
    const double m = std::ldexp(r, static_cast<int>(n));
    if (theta == 0.0) {
      points.emplace_back(m, 0.0);
    } else {
      points.push_back(m * up);
      points.push_back(m * std::conj(up));
    }
  }
  return points;
}

std::vector<Complex> sector_lattice_decades(double theta, double lambda_min,
                                            double lambda_max, int points_per_decade) {
  if (!(lambda_min > 0.0) || !(lambda_max > lambda_min)) {
    throw DomainError("sector_lattice_decades: need 0 < lambda_min < lambda_max");
  }
  if (points_per_decade < 1) {
    throw DomainError("sector_lattice_decades: points_per_decade must be >= 1");
  }
  if (!(std::abs(theta) < kPi / 2.0)) {
    throw DomainError("sector_lattice_decades: |theta| must be below pi/2");
  }
  const double q = std::pow(10.0, 1.0 / static_cast<double>(points_per_decade));
  const int steps =
      static_cast<int>(std::ceil(std::log(lambda_max / lambda_min) / std::log(q)));
  std::vector<Complex> points;
  const Complex up{std::cos(theta), std::sin(theta)};
  for (int j = 0; j <= steps; ++j) {
    const double m = lambda_min * std::pow(q, static_cast<double>(j));
    if (theta == 0.0) {
      points.emplace_back(m, 0.0);
    } else {
      points.push_back(m * up);
      points.push_back(m * std::conj(up));
    }
  }
  return points;
}

SectorReport sector_family(const RepresentableOperator& phi, double theta,
                           const std::vector<Complex>& lattice,
                           const UnifGammaConfig& cfg) {
  phi.validate();
  if (!(theta >= 0.0) || !(theta < kPi / 2.0)) {
    throw DomainError("sector_family: theta must lie in [0, pi/2)");
  }
  if (lattice.empty()) throw DomainError("sector_family: empty lattice");

  SectorReport report;
  report.family = OperatorFamily("sector_sqrt_transforms");
  const SpaceSpec tgt = phi.target();
  const Index dom = std::max<Index>(phi.domain_trunc(), 1);
  for (Complex lambda : lattice) {
    require_right_halfplane(lambda, "sector_family");
    const Complex root = std::sqrt(lambda);
    ColumnOperator op(tgt, dom);
    for (std::size_t i = 0; i < phi.profiles.size(); ++i) {
      const ExpProfile& p = phi.profiles[i];
      const Complex v = root * transform_entry(p, lambda);
      if (v == Complex{0.0, 0.0}) continue;
      FiniteVector col;
      col.add_entry(p.target_coord, v);
      col.finish();
      op.set_column(static_cast<Index>(i + 1), std::move(col));
    }
    report.family.add(std::move(op));
  }

  report.bounds = unif_gamma_lower(report.family, dom, cfg);
  report.lower_norm = std::sqrt(std::max(0.0, report.bounds.lower_bound));
  report.phi_gamma_norm = std::sqrt(phi.gamma_norm_sq());
  report.rays = theta == 0.0 ? 1 : 2;

  // The ray {r 2^n e^{i theta}} carries the alpha = 1/2 power-scaled Gram
  // majorant phi(d) = (1/cos theta) 2^{-d/2}, whose geometric bound is
  // (1 + sqrt 2)/sqrt(cos theta); a union of two rays at most doubles the
  // bracket on the norm scale.
  HilbertSequenceSpec ray_spec;
  ray_spec.kind = HilbertKind::kPowerScaled;
  ray_spec.alpha = 0.5;
  ray_spec.r = 1.0;
  ray_spec.theta = theta;
  ray_spec.n_min = 0;
  ray_spec.n_max = 0;
  const GeometricPhiProfile prof = power_scaled_phi_profile(ray_spec);
  report.hilbert_constant = phi_bound_geometric(prof.phi0, prof.ratio);
  report.upper_norm =
      static_cast<double>(report.rays) * report.hilbert_constant * report.phi_gamma_norm;

  const double se_norm = report.lower_norm > 0.0
                             ? report.bounds.lower_std_error / (2.0 * report.lower_norm)
                             : report.bounds.lower_std_error;
  report.lower_within_upper =
      report.lower_norm <= report.upper_norm + 4.0 * se_norm +
                               1e-9 * std::max(1.0, report.upper_norm);
  return report;
}

double poisson_kernel(const PoissonKernelParams& params) {
  if (params.j != 0 && params.j != 1) {
    throw DomainError("poisson_kernel: line selector must be 0 or 1");
  }
  if (!(params.alpha > 0.0) || !(params.alpha < 1.0)) {
    throw DomainError("poisson_kernel: alpha must lie strictly between 0 and 1");
  }
  const double sign = params.j == 0 ? 1.0 : -1.0;  // -(-1)^j cos term
  const double denom = std::cosh(kPi * params.s) - sign * std::cos(kPi * params.alpha);
  return 0.5 * std::sin(kPi * params.alpha) / denom;
}

double poisson_line_mass(int j, double alpha) {
  if (j != 0 && j != 1) throw DomainError("poisson_line_mass: line selector must be 0 or 1");
  if (!(alpha > 0.0) || !(alpha < 1.0)) {
    throw DomainError("poisson_line_mass: alpha must lie strictly between 0 and 1");
  }
  return j == 0 ? 1.0 - alpha : alpha;
}

PoissonNormalization poisson_normalization_quadrature(double alpha, double half_width) {
  if (!(half_width > 1.0)) {
    throw DomainError("poisson_normalization_quadrature: half_width must exceed 1");
  }
  const auto f = [alpha](double s) {
    return poisson_kernel(PoissonKernelParams{0, alpha, s}) +
           poisson_kernel(PoissonKernelParams{1, alpha, s});
  };
  PoissonNormalization out;
  double err = 0.0;
  out.integral = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
      f, -half_width, half_width, 10, 1e-12, &err);
  out.error_estimate = err;
  return out;
}

AnalyticityCheck laplace_analyticity_check(const RepresentableOperator& phi, Complex lambda,
                                           double h_coarse, double h_fine) {
  phi.validate();
  if (!(h_coarse > h_fine) || !(h_fine > 0.0)) {
    throw DomainError("laplace_analyticity_check: need h_coarse > h_fine > 0");
  }
  if (!(lambda.real() - h_coarse > 0.0)) {
    throw DomainError("laplace_analyticity_check: probe stencil leaves the right half-plane");
  }

  const auto defect_at = [&](double h) {
    double worst = 0.0;
    for (const ExpProfile& p : phi.profiles) {
      const Complex du = (transform_entry(p, lambda + Complex{h, 0.0}) -
                          transform_entry(p, lambda - Complex{h, 0.0})) /
                         (2.0 * h);
      const Complex dv = (transform_entry(p, lambda + Complex{0.0, h}) -
                          transform_entry(p, lambda - Complex{0.0, h})) /
                         (2.0 * h);
      worst = std::max(worst, std::abs(dv - Complex{0.0, 1.0} * du));
    }
    return worst;
  };

  AnalyticityCheck check;
  check.defect_coarse = defect_at(h_coarse);
  check.defect_fine = defect_at(h_fine);
  const double nominal = (h_coarse / h_fine) * (h_coarse / h_fine);
  if (check.defect_fine <= 1e-300) {
    // Degenerate (zero-coefficient) input: both defects vanish identically.
    check.ratio = check.defect_coarse <= 1e-300 ? 1.0 : std::numeric_limits<double>::infinity();
    check.quadratic_decay = check.defect_coarse <= 1e-300;
  } else {
    check.ratio = check.defect_coarse / check.defect_fine;
    check.quadratic_decay = check.ratio >= nominal / 4.0 && check.ratio <= nominal * 4.0;
  }
  return check;
}

TransformNormCheck transform_norm_bound_check(const RepresentableOperator& phi, Complex lambda) {
  phi.validate();
  require_right_halfplane(lambda, "transform_norm_bound_check");
  TransformNormCheck check;
  check.columnwise_holds = true;
  for (const ExpProfile& p : phi.profiles) {
    const double lhs = std::norm(transform_entry(p, lambda));
    const double rhs =
        std::norm(p.c) / (2.0 * p.mu.real()) / (2.0 * lambda.real());
    if (lhs > rhs * (1.0 + 1e-12)) check.columnwise_holds = false;
    check.transform_gamma_sq += lhs;
    check.bound_value += rhs;
  }
  check.holds = check.transform_gamma_sq <= check.bound_value * (1.0 + 1e-12);
  return check;
}

StripConstantCandidates strip_constant_candidates(double b) {
  if (!(b > 0.0)) throw DomainError("strip_constant_candidates: b must be positive");
  StripConstantCandidates out;
  const double e2pi = std::exp(2.0 * kPi);
  out.universal = std::sqrt(2.0 * kPi * e2pi / (e2pi - 1.0));
  out.modulated_at_b = modulated_constant(b);
  return out;
}

}  // namespace gammarad
