#include "gammarad/hilbert.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <algorithm>
#include <cmath>

#include "gammarad/report.hpp"

namespace gammarad {
namespace {

constexpr double kTwoPi = 2.0 * M_PI;

Complex pure_exp_entry(Complex ln, Complex lm) { return 1.0 / (ln + std::conj(lm)); }

Complex modulated_entry(double b, Index n, Index m) {
  const double d = static_cast<double>(n - m);
  return 1.0 / Complex(2.0 * b, -kTwoPi * d);
}

// r^{2a-1} 2^{a(n+m)} / ((2^n + 2^m) cos t + i (2^n - 2^m) sin t), factored
// by 2^{max(n,m)} so no intermediate overflows for any window.
Complex power_scaled_entry(double alpha, double r, double theta, Index n, Index m) {
  const double mx = static_cast<double>(std::max(n, m));
  const double en = static_cast<double>(n) - mx;
  const double em = static_cast<double>(m) - mx;
  const double num = std::pow(r, 2.0 * alpha - 1.0) *
                     std::exp2(alpha * (static_cast<double>(n) + static_cast<double>(m)) - mx);
  const Complex den((std::exp2(en) + std::exp2(em)) * std::cos(theta),
                    (std::exp2(en) - std::exp2(em)) * std::sin(theta));
  return num / den;
}

Complex member_value(const HilbertSequenceSpec& spec, Index n, double t) {
  switch (spec.kind) {
    case HilbertKind::kPureExp: {
      const Complex lambda = spec.lambdas[static_cast<std::size_t>(n)];
      return std::exp(-lambda * t);
    }
    case HilbertKind::kModulated: {
      const double freq = kTwoPi * (static_cast<double>(n) + spec.rho);
      return std::exp(Complex(-spec.b * t, freq * t));
    }
    case HilbertKind::kPowerScaled: {
      const Complex mu = spec.r * std::exp2(static_cast<double>(n)) *
                         std::exp(Complex(0.0, spec.theta));
      return std::pow(mu, spec.alpha) * std::exp(-mu * t);
    }
  }
  throw DomainError("member_value: unknown kind");
}

}  // namespace

Index HilbertSequenceSpec::window_size() const {
  if (kind == HilbertKind::kPureExp) return static_cast<Index>(lambdas.size());
  return n_max - n_min + 1;
}

void HilbertSequenceSpec::validate() const {
  switch (kind) {
    case HilbertKind::kPureExp:
      if (lambdas.empty()) throw ValidationError("pure_exp: empty rate list");
      for (const Complex& l : lambdas) {
        if (!(l.real() > 0.0)) throw DomainError("pure_exp: Re lambda must be positive");
      }
      break;
    case HilbertKind::kModulated:
      if (!(b > 0.0)) throw ValidationError("modulated: b must be positive");
      if (!(rho >= 0.0 && rho < 1.0)) throw ValidationError("modulated: rho must lie in [0,1)");
      if (n_max < n_min) throw ValidationError("modulated: empty window");
      break;
    case HilbertKind::kPowerScaled:
      if (!(alpha > 0.0 && alpha <= 0.5)) {
        throw ValidationError("power_scaled: alpha must lie in (0, 1/2]");
      }
      if (!(r > 0.0)) throw ValidationError("power_scaled: r must be positive");
      if (!(std::abs(theta) < M_PI / 2.0)) {
        throw ValidationError("power_scaled: |theta| must be below pi/2");
      }
      if (n_max < n_min) throw ValidationError("power_scaled: empty window");
      // For alpha < 1/2 the diagonal grows like 2^{(1-2 alpha)|n|} as
      // n -> -infinity, so no summable majorant covers negative windows;
      // certified constants are only offered for n >= 0.
      if (alpha < 0.5 && n_min < 0) {
        throw ValidationError("power_scaled: alpha < 1/2 requires n_min >= 0");
      }
      break;
  }
  if (window_size() < 1) throw ValidationError("HilbertSequenceSpec: empty window");
  if (window_size() > 4096) {
    throw ValidationError("HilbertSequenceSpec: window larger than 4096");
  }
}

GramSummary gram(const HilbertSequenceSpec& spec) {
  spec.validate();
  const Index dim = spec.window_size();
  Eigen::MatrixXcd g(dim, dim);
  for (Index i = 0; i < dim; ++i) {
    for (Index j = 0; j <= i; ++j) {
      Complex v;
      switch (spec.kind) {
        case HilbertKind::kPureExp:
          v = pure_exp_entry(spec.lambdas[static_cast<std::size_t>(i)],
                             spec.lambdas[static_cast<std::size_t>(j)]);
          break;
        case HilbertKind::kModulated:
          v = modulated_entry(spec.b, spec.n_min + i, spec.n_min + j);
          break;
        case HilbertKind::kPowerScaled:
          v = power_scaled_entry(spec.alpha, spec.r, spec.theta, spec.n_min + i,
                                 spec.n_min + j);
          break;
      }
      g(i, j) = v;
      g(j, i) = std::conj(v);
    }
    g(i, i) = Complex(g(i, i).real(), 0.0);  // diagonals are exactly real
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(g, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw NumericRangeError("gram: eigensolver failed to converge");
  }
  const double lo = solver.eigenvalues()(0);
  const double hi = solver.eigenvalues()(dim - 1);
  if (lo < -1e-10 * std::max(1.0, hi)) {
    throw NumericRangeError("gram: section is not positive semidefinite");
  }

  GramSummary out;
  out.dim = dim;
  out.entries = std::move(g);
  out.op_norm_sqrt = std::sqrt(std::max(0.0, hi));
  out.min_eigenvalue = lo;
  return out;
}

double phi_bound(const std::vector<double>& phi_values, double tail) {
  if (phi_values.empty()) throw ValidationError("phi_bound: phi(0) required");
  for (double p : phi_values) {
    if (!(p >= 0.0)) throw ValidationError("phi_bound: phi must be nonnegative");
  }
  if (!(tail >= 0.0)) throw ValidationError("phi_bound: tail must be nonnegative");
  if (!std::isfinite(tail)) return std::numeric_limits<double>::infinity();
  double off = tail;
  for (std::size_t j = 1; j < phi_values.size(); ++j) off += phi_values[j];
  return std::sqrt(phi_values[0] + 2.0 * off);
}

double phi_bound_geometric(double phi0, double ratio) {
  if (!(phi0 >= 0.0)) throw ValidationError("phi_bound_geometric: phi0 must be nonnegative");
  if (!(ratio >= 0.0 && ratio < 1.0)) {
    throw ValidationError("phi_bound_geometric: ratio must lie in [0,1)");
  }
  return std::sqrt(phi0 * (1.0 + ratio) / (1.0 - ratio));
}

GeometricPhiProfile power_scaled_phi_profile(const HilbertSequenceSpec& spec) {
  spec.validate();
  if (spec.kind != HilbertKind::kPowerScaled) {
    throw DomainError("power_scaled_phi_profile: spec must be power_scaled");
  }
  GeometricPhiProfile out;
  out.phi0 = std::pow(spec.r, 2.0 * spec.alpha - 1.0) / std::cos(spec.theta);
  out.ratio = std::exp2(-spec.alpha);
  return out;
}

double modulated_constant(double b) {
  if (!(b > 0.0)) throw ValidationError("modulated_constant: b must be positive");
  return 1.0 / std::sqrt(1.0 - std::exp(-2.0 * b));
}

PhiMajorizationCheck check_phi_majorization(const GramSummary& summary,
                                            const std::vector<double>& phi_values,
                                            double tail) {
  if (static_cast<Index>(phi_values.size()) < summary.dim) {
    throw ValidationError("check_phi_majorization: need phi(0..dim-1)");
  }
  PhiMajorizationCheck out;
  out.majorizes = true;
  for (Index i = 0; i < summary.dim && out.majorizes; ++i) {
    for (Index j = 0; j <= i; ++j) {
      const double mag = std::abs(summary.entries(i, j));
      if (mag > phi_values[static_cast<std::size_t>(i - j)] + 1e-12 * std::max(1.0, mag)) {
        out.majorizes = false;
        out.first_fail_row = i;
        out.first_fail_col = j;
        break;
      }
    }
  }
  out.phi_bound_value = phi_bound(phi_values, tail);
  out.bound_holds =
      out.majorizes && summary.op_norm_sqrt <= out.phi_bound_value + 1e-9;
  return out;
}

double properly_spaced_margin(const std::vector<Complex>& lambdas) {
  if (lambdas.size() < 2) {
    throw ValidationError("properly_spaced_margin: at least two rates required");
  }
  for (const Complex& l : lambdas) {
    if (!(l.real() > 0.0)) throw DomainError("properly_spaced_margin: Re lambda must be positive");
  }
  double margin = std::numeric_limits<double>::infinity();
  for (std::size_t m = 0; m < lambdas.size(); ++m) {
    for (std::size_t n = 0; n < m; ++n) {
      const double num = std::abs(lambdas[m] - lambdas[n]);
      const double den = std::abs(lambdas[m] + std::conj(lambdas[n]));
      margin = std::min(margin, num / den);
    }
  }
  return margin;
}

HilbertConstantReport hilbert_constant_report(const HilbertSequenceSpec& base,
                                              const std::vector<Index>& dims) {
  base.validate();
  if (dims.empty()) throw ValidationError("hilbert_constant_report: no section sizes");
  std::vector<Index> sorted = dims;
  std::sort(sorted.begin(), sorted.end());

  HilbertConstantReport out;
  for (Index d : sorted) {
    if (d < 1) throw ValidationError("hilbert_constant_report: section sizes must be positive");
    HilbertSequenceSpec section = base;
    if (base.kind == HilbertKind::kPureExp) {
      if (d > static_cast<Index>(base.lambdas.size())) {
        throw ValidationError("hilbert_constant_report: section exceeds the rate list");
      }
      section.lambdas.assign(base.lambdas.begin(), base.lambdas.begin() + d);
    } else {
      section.n_max = base.n_min + d - 1;
    }
    const GramSummary g = gram(section);
    out.dims.push_back(d);
    out.gram_sqrts.push_back(g.op_norm_sqrt);
  }
  for (std::size_t i = 0; i + 1 < out.gram_sqrts.size(); ++i) {
    if (out.gram_sqrts[i] > out.gram_sqrts[i + 1] + 1e-10) out.monotone = false;
  }
  out.lower = out.gram_sqrts.back();

  switch (base.kind) {
    case HilbertKind::kModulated:
      out.upper = modulated_constant(base.b);
      out.upper_is_finite = true;
      break;
    case HilbertKind::kPowerScaled: {
      const GeometricPhiProfile p = power_scaled_phi_profile(base);
      out.upper = phi_bound_geometric(p.phi0, p.ratio);
      out.upper_is_finite = true;
      break;
    }
    case HilbertKind::kPureExp:
      break;  // no closed-form certificate registered
  }
  if (out.upper_is_finite && out.lower > out.upper + 1e-9 * std::max(1.0, out.upper)) {
    throw NumericRangeError("hilbert_constant_report: section value exceeds the certificate");
  }
  return out;
}

std::string gram_csv(const GramSummary& summary) {
  std::string out;
  for (Index i = 0; i < summary.dim; ++i) {
    for (Index j = 0; j < summary.dim; ++j) {
      if (j > 0) out.push_back(',');
      out += format_double(summary.entries(i, j).real());
      out.push_back(',');
      out += format_double(summary.entries(i, j).imag());
    }
    out.push_back('\n');
  }
  return out;
}

TimeGrid make_time_grid(double t_cut, int panels) {
  if (!(t_cut > 0.0)) throw ValidationError("make_time_grid: t_cut must be positive");
  if (panels < 1 || panels > 4096) {
    throw ValidationError("make_time_grid: panels must lie in [1, 4096]");
  }
  using Rule = boost::math::quadrature::gauss<double, 16>;
  const auto& half_nodes = Rule::abscissa();  // nonnegative abscissas on [-1, 1]
  const auto& half_weights = Rule::weights();

  TimeGrid grid;
  grid.t_cut = t_cut;
  grid.panels = panels;
  const double h = t_cut / panels;
  for (int p = 0; p < panels; ++p) {
    const double mid = (static_cast<double>(p) + 0.5) * h;
    const double scale = 0.5 * h;
    std::vector<std::pair<double, double>> nodes;
    for (std::size_t i = 0; i < half_nodes.size(); ++i) {
      nodes.emplace_back(mid - scale * half_nodes[i], scale * half_weights[i]);
      nodes.emplace_back(mid + scale * half_nodes[i], scale * half_weights[i]);
    }
    std::sort(nodes.begin(), nodes.end());
    for (const auto& [t, w] : nodes) {
      grid.points.push_back(t);
      grid.weights.push_back(w);
    }
  }
  return grid;
}

std::vector<FiniteVector> sequence_on_grid(const HilbertSequenceSpec& spec,
                                           const TimeGrid& grid) {
  spec.validate();
  if (grid.size() < 1) throw ValidationError("sequence_on_grid: empty grid");
  if (spec.kind != HilbertKind::kPureExp &&
      (spec.n_min < -64 || spec.n_max > 64)) {
    throw ValidationError("sequence_on_grid: window must lie in [-64, 64]");
  }

  std::vector<FiniteVector> members;
  const Index count = spec.window_size();
  members.reserve(static_cast<std::size_t>(count));
  for (Index idx = 0; idx < count; ++idx) {
    const Index n = spec.kind == HilbertKind::kPureExp ? idx : spec.n_min + idx;
    FiniteVector v;
    for (Index i = 0; i < grid.size(); ++i) {
      const double t = grid.points[static_cast<std::size_t>(i)];
      const double sw = std::sqrt(grid.weights[static_cast<std::size_t>(i)]);
      const Complex val = sw * member_value(spec, n, t);
      if (std::abs(val) > 1e-300) v.add_entry(i + 1, val);
    }
    v.finish();
    members.push_back(std::move(v));
  }
  return members;
}

double sequence_tail_mass_bound(const HilbertSequenceSpec& spec, double t_cut) {
  spec.validate();
  double worst = 0.0;
  const Index count = spec.window_size();
  for (Index idx = 0; idx < count; ++idx) {
    const Index n = spec.kind == HilbertKind::kPureExp ? idx : spec.n_min + idx;
    double rate = 0.0;
    double amp_sq = 1.0;
    switch (spec.kind) {
      case HilbertKind::kPureExp:
        rate = spec.lambdas[static_cast<std::size_t>(n)].real();
        break;
      case HilbertKind::kModulated:
        rate = spec.b;
        break;
      case HilbertKind::kPowerScaled: {
        const double mu_abs = spec.r * std::exp2(static_cast<double>(n));
        rate = mu_abs * std::cos(spec.theta);
        amp_sq = std::pow(mu_abs, 2.0 * spec.alpha);
        break;
      }
    }
    worst = std::max(worst, amp_sq * std::exp(-2.0 * rate * t_cut) / (2.0 * rate));
  }
  return worst;
}

TransferReport hilbert_sequence_gaussian_transfer(
    const std::function<ColumnOperator(const TimeGrid&)>& op_on_grid,
    const HilbertSequenceSpec& spec, double t_cut, int base_panels,
    double constant_upper, const GaussianDrawConfig& draws) {
  if (!op_on_grid) throw ValidationError("transfer: operator builder required");
  if (!(constant_upper > 0.0) || !std::isfinite(constant_upper)) {
    throw ValidationError("transfer: a finite positive constant is required");
  }
  draws.validate();

  struct Level {
    double sum = 0.0;
    double sum_se = 0.0;
    double gamma_sq = 0.0;
    double gamma_se = 0.0;
  };
  std::vector<Level> levels;
  for (int refine = 1; refine <= 4; refine *= 2) {
    const TimeGrid grid = make_time_grid(t_cut, base_panels * refine);
    const ColumnOperator op = op_on_grid(grid);
    if (op.domain_trunc() != grid.size()) {
      throw ValidationError("transfer: operator domain must match the declared grid");
    }
    const std::vector<FiniteVector> members = sequence_on_grid(spec, grid);
    std::vector<FiniteVector> images;
    images.reserve(members.size());
    for (const FiniteVector& m : members) images.push_back(op.apply(m));

    Level level;
    if (op.target().is_l2()) {
      for (const FiniteVector& im : images) level.sum += im.norm_sq_l2();
    } else {
      std::vector<const FiniteVector*> ptrs;
      for (const FiniteVector& im : images) ptrs.push_back(&im);
      const SecondMomentEstimate est = mc_second_moment(ptrs, op.target(), draws);
      level.sum = est.value;
      level.sum_se = est.std_error;
    }
    const SecondMomentEstimate gn = gamma_norm_sq(op, draws);
    level.gamma_sq = gn.value;
    level.gamma_se = gn.std_error;
    levels.push_back(level);
  }

  TransferReport out;
  out.gaussian_sum = levels[2].sum;
  out.gaussian_sum_std_error = levels[2].sum_se;
  out.gamma_norm_sq = levels[2].gamma_sq;
  out.gamma_norm_std_error = levels[2].gamma_se;
  out.constant_upper = constant_upper;
  out.refinement_change_coarse = std::abs(levels[1].sum - levels[0].sum);
  out.refinement_change_fine = std::abs(levels[2].sum - levels[1].sum);
  out.grid_converged = out.refinement_change_fine <=
                       0.5 * out.refinement_change_coarse +
                           1e-12 * std::max(1.0, std::abs(levels[2].sum));
  out.tail_mass_bound = sequence_tail_mass_bound(spec, t_cut);
  out.tail_negligible = out.tail_mass_bound <= 1e-8 * std::max(1.0, out.gaussian_sum);

  const double sigma = out.gaussian_sum_std_error +
                       constant_upper * constant_upper * out.gamma_norm_std_error;
  out.bound_holds = out.gaussian_sum <=
                    constant_upper * constant_upper * out.gamma_norm_sq + 4.0 * sigma +
                        1e-9 * std::max(1.0, out.gaussian_sum);
  return out;
}

}  // namespace gammarad
