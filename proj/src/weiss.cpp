#include "gammarad/weiss.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gammarad/rng.hpp"

namespace gammarad {

namespace {

double rate_value(RateKind rate, Index k) {
  const double kd = static_cast<double>(k);
  switch (rate) {
    case RateKind::kLinear:
      return kd;
    case RateKind::kQuadratic:
      return kd * kd;
    case RateKind::kGeometric:
      return std::ldexp(1.0, static_cast<int>(k));
    case RateKind::kLogSquared: {
      const double l = std::log(kd + 1.0);
      return kd * l * l;
    }
  }
  throw ValidationError("make_diagonal_system: unknown rate kind");
}

double weight_value(WeightKind weight, Index k) {
  const double kd = static_cast<double>(k);
  switch (weight) {
    case WeightKind::kUnit:
      return 1.0;
    case WeightKind::kInverseSqrt:
      return 1.0 / std::sqrt(kd);
    case WeightKind::kInverse:
      return 1.0 / kd;
  }
  throw ValidationError("make_diagonal_system: unknown weight kind");
}

const char* rate_tag(RateKind rate) {
  switch (rate) {
    case RateKind::kLinear:
      return "linear";
    case RateKind::kQuadratic:
      return "quadratic";
    case RateKind::kGeometric:
      return "geometric";
    case RateKind::kLogSquared:
      return "log_squared";
  }
  return "unknown";
}

const char* weight_tag(WeightKind weight) {
  switch (weight) {
    case WeightKind::kUnit:
      return "unit";
    case WeightKind::kInverseSqrt:
      return "inverse_sqrt";
    case WeightKind::kInverse:
      return "inverse";
  }
  return "unknown";
}

// Overflow-safe lambda_g beta^2 / (lambda_g + lambda_k)^2: the two factors of
// the denominator are applied one at a time so geometric rates near the top
// of the double range never square.
double resolvent_term(double beta_sq, double lambda_grid, double lambda_k) {
  const double denom = lambda_grid + lambda_k;
  return beta_sq * (lambda_grid / denom) / denom;
}

}  // namespace

void DiagonalSystem::validate() const {
  if (lambdas.empty() || lambdas.size() != betas.size()) {
    throw ValidationError("DiagonalSystem: rates and weights must align and be nonempty");
  }
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    if (!(lambdas[i] > 0.0) || !std::isfinite(lambdas[i])) {
      throw ValidationError("DiagonalSystem: rates must be positive and finite");
    }
    if (!std::isfinite(betas[i])) {
      throw ValidationError("DiagonalSystem: weights must be finite");
    }
  }
}

RepresentableOperator DiagonalSystem::profile_operator(Index n) const {
  validate();
  const Index count = n == 0 ? size() : std::min(n, size());
  if (count < 1) throw DomainError("DiagonalSystem: empty truncation");
  RepresentableOperator phi;
  phi.profiles.reserve(static_cast<std::size_t>(count));
  for (Index k = 1; k <= count; ++k) {
    phi.profiles.push_back(ExpProfile{Complex{betas[static_cast<std::size_t>(k - 1)], 0.0},
                                      Complex{lambdas[static_cast<std::size_t>(k - 1)], 0.0},
                                      k});
  }
  return phi;
}

DiagonalSystem make_diagonal_system(RateKind rate, WeightKind weight, Index n) {
  if (n < 1) throw DomainError("make_diagonal_system: need at least one coordinate");
  if (rate == RateKind::kGeometric && n > 1020) {
    throw DomainError("make_diagonal_system: geometric rates overflow past index 1020");
  }
  DiagonalSystem sys;
  sys.label = std::string(rate_tag(rate)) + "_" + weight_tag(weight);
  sys.lambdas.reserve(static_cast<std::size_t>(n));
  sys.betas.reserve(static_cast<std::size_t>(n));
  for (Index k = 1; k <= n; ++k) {
    sys.lambdas.push_back(rate_value(rate, k));
    sys.betas.push_back(weight_value(weight, k));
  }
  sys.validate();
  return sys;
}

std::vector<CorpusEntry> equivalence_corpus(int doublings) {
  if (doublings < 2 || doublings > 12) {
    throw DomainError("equivalence_corpus: doublings out of range");
  }
  const Index scale = static_cast<Index>(1) << doublings;
  std::vector<CorpusEntry> corpus;
  for (RateKind rate : {RateKind::kLinear, RateKind::kQuadratic, RateKind::kGeometric,
                        RateKind::kLogSquared}) {
    const Index base = rate == RateKind::kGeometric ? 16 : 512;
    for (WeightKind weight : {WeightKind::kUnit, WeightKind::kInverseSqrt, WeightKind::kInverse}) {
      corpus.push_back(CorpusEntry{make_diagonal_system(rate, weight, base * scale), base});
    }
  }
  return corpus;
}

double invariant_measure_quantity(const DiagonalSystem& sys) {
  sys.validate();
  double sum = 0.0;
  for (std::size_t i = 0; i < sys.lambdas.size(); ++i) {
    sum += sys.betas[i] * sys.betas[i] / (2.0 * sys.lambdas[i]);
  }
  return sum;
}

double half_power_gamma_quantity(const DiagonalSystem& sys) {
  sys.validate();
  double sum = 0.0;
  for (std::size_t i = 0; i < sys.lambdas.size(); ++i) {
    sum += sys.betas[i] * sys.betas[i] / sys.lambdas[i];
  }
  return sum;
}

double resolvent_sup_quantity(const DiagonalSystem& sys) {
  sys.validate();
  double sum = 0.0;
  for (std::size_t i = 0; i < sys.lambdas.size(); ++i) {
    sum += sys.betas[i] * sys.betas[i] / (4.0 * sys.lambdas[i]);
  }
  return sum;
}

FactorFourCheck factor_four_identity_check(const DiagonalSystem& sys, double tol) {
  sys.validate();
  if (!(tol > 0.0)) throw DomainError("factor_four_identity_check: tolerance must be positive");
  FactorFourCheck check;
  for (std::size_t i = 0; i < sys.lambdas.size(); ++i) {
    const double lam = sys.lambdas[i];
    const double b2 = sys.betas[i] * sys.betas[i];
    check.lhs += b2 / lam;
    // 4 lambda beta^2 / (2 lambda)^2, with the square factored so geometric
    // rates cannot overflow.
    const double twol = lam + lam;
    check.rhs += 4.0 * (b2 * (lam / twol) / twol);
  }
  const double scale = std::max({std::abs(check.lhs), std::abs(check.rhs),
                                 std::numeric_limits<double>::min()});
  check.rel_gap = std::abs(check.lhs - check.rhs) / scale;
  check.holds = check.rel_gap <= tol;
  return check;
}

ResolventBoundsReport resolvent_family_bounds(const DiagonalSystem& sys, int points_per_decade,
                                              const UnifGammaConfig& cfg) {
  sys.validate();
  const auto [lo_it, hi_it] = std::minmax_element(sys.lambdas.begin(), sys.lambdas.end());
  const std::vector<Complex> lattice =
      sector_lattice_decades(0.0, *lo_it / 4.0, 4.0 * *hi_it, points_per_decade);
  ResolventBoundsReport report;
  report.sector = sector_family(sys.profile_operator(), 0.0, lattice, cfg);
  report.closed_form = resolvent_sup_quantity(sys);
  report.capture_ratio =
      report.closed_form > 0.0 ? report.sector.bounds.lower_bound / report.closed_form : 0.0;
  return report;
}

WeissEquivalenceReport weiss_equivalence_report(const DiagonalSystem& sys, Index profile_base,
                                                int doublings, int points_per_decade) {
  sys.validate();
  if (profile_base < 2) throw DomainError("weiss_equivalence_report: profile base too small");
  if (doublings < 2 || doublings > 40) {
    throw DomainError("weiss_equivalence_report: doublings out of range");
  }
  const Index needed = profile_base * (static_cast<Index>(1) << doublings);
  if (needed > sys.size()) {
    throw DomainError("weiss_equivalence_report: system shorter than the profile range");
  }
  if (points_per_decade < 1) {
    throw DomainError("weiss_equivalence_report: points_per_decade must be >= 1");
  }

  const auto beta_sq = [&](Index k) {
    const double b = sys.betas[static_cast<std::size_t>(k - 1)];
    return b * b;
  };
  const auto lam_at = [&](Index k) { return sys.lambdas[static_cast<std::size_t>(k - 1)]; };

  // One geometric grid covering every rate in the profile range; the
  // resolvent term for coordinate k is the grid maximum of
  // lambda beta^2/(lambda + lambda_k)^2, attained next to lambda_k because the
  // map is unimodal with peak there.
  double lo = lam_at(1);
  double hi = lam_at(1);
  for (Index k = 2; k <= needed; ++k) {
    lo = std::min(lo, lam_at(k));
    hi = std::max(hi, lam_at(k));
  }
  const double q = std::pow(10.0, 1.0 / static_cast<double>(points_per_decade));
  std::vector<double> grid;
  for (double v = lo / 4.0; v <= 4.0 * hi * q; v *= q) grid.push_back(v);

  const auto resolvent_term_at = [&](Index k) {
    const double lam = lam_at(k);
    const auto it = std::lower_bound(grid.begin(), grid.end(), lam);
    const std::ptrdiff_t pos = it - grid.begin();
    double best = 0.0;
    for (std::ptrdiff_t j = std::max<std::ptrdiff_t>(0, pos - 2);
         j < std::min<std::ptrdiff_t>(static_cast<std::ptrdiff_t>(grid.size()), pos + 3); ++j) {
      best = std::max(best, resolvent_term(beta_sq(k), grid[static_cast<std::size_t>(j)], lam));
    }
    return best;
  };

  WeissEquivalenceReport report;
  report.label = sys.label;
  report.invariant = doubling_profile(
      [&](Index k) { return beta_sq(k) / (2.0 * lam_at(k)); }, profile_base, doublings);
  report.half_power =
      doubling_profile([&](Index k) { return beta_sq(k) / lam_at(k); }, profile_base, doublings);
  report.resolvent = doubling_profile(resolvent_term_at, profile_base, doublings);
  report.invariant_divergent = report.invariant.divergent_trending;
  report.half_power_divergent = report.half_power.divergent_trending;
  report.resolvent_divergent = report.resolvent.divergent_trending;
  report.consistent = report.invariant_divergent == report.half_power_divergent &&
                      report.half_power_divergent == report.resolvent_divergent;
  return report;
}

void OffDiagonalSystem::validate() const {
  if (lambdas.empty() || lambdas.size() != betas.size() ||
      lambdas.size() != delta_sets.size()) {
    throw ValidationError("OffDiagonalSystem: rates, weights, clusters must align");
  }
  if (!(delta > 0.0) || delta > 1.0) {
    throw ValidationError("OffDiagonalSystem: delta must lie in (0, 1]");
  }
  if (j_overlap < 1) throw ValidationError("OffDiagonalSystem: j_overlap must be >= 1");
  const Index n = size();
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    if (!(lambdas[i] > 0.0) || !std::isfinite(lambdas[i])) {
      throw ValidationError("OffDiagonalSystem: rates must be positive and finite");
    }
    if (!std::isfinite(betas[i])) {
      throw ValidationError("OffDiagonalSystem: weights must be finite");
    }
    for (Index j : delta_sets[i]) {
      if (j < 1 || j > n) {
        throw ValidationError("OffDiagonalSystem: cluster index out of range");
      }
    }
  }
}

OffDiagonalConditions off_diagonal_conditions(const OffDiagonalSystem& sys) {
  sys.validate();
  OffDiagonalConditions cond;
  std::vector<Index> multiplicity(static_cast<std::size_t>(sys.size()) + 1, 0);
  for (const std::vector<Index>& cluster : sys.delta_sets) {
    for (Index j : cluster) ++multiplicity[static_cast<std::size_t>(j)];
  }
  cond.max_multiplicity = *std::max_element(multiplicity.begin(), multiplicity.end());
  cond.separation_holds = cond.max_multiplicity <= sys.j_overlap;

  cond.min_mass_fraction = 1.0;
  for (std::size_t i = 0; i < sys.delta_sets.size(); ++i) {
    const Index own = static_cast<Index>(i + 1);
    const bool keeps_own =
        std::find(sys.delta_sets[i].begin(), sys.delta_sets[i].end(), own) !=
        sys.delta_sets[i].end();
    cond.min_mass_fraction = std::min(cond.min_mass_fraction, keeps_own ? 1.0 : 0.0);
  }
  cond.mass_holds = cond.min_mass_fraction >= sys.delta - 1e-12;
  return cond;
}

OffDiagonalRunReport off_diagonal_contrapositive_run(const OffDiagonalSystem& sys,
                                                     double target_mass) {
  sys.validate();
  if (!(target_mass > 0.0)) {
    throw DomainError("off_diagonal_contrapositive_run: target mass must be positive");
  }
  const OffDiagonalConditions cond = off_diagonal_conditions(sys);
  if (!cond.separation_holds || !cond.mass_holds) {
    throw DomainError("off_diagonal_contrapositive_run: structural hypotheses fail");
  }

  OffDiagonalRunReport report;
  report.target_mass = target_mass;

  // Pump the half-power mass just past the target.
  double s0 = 0.0;
  Index crossing = 0;
  for (Index k = 1; k <= sys.size(); ++k) {
    const double b = sys.betas[static_cast<std::size_t>(k - 1)];
    s0 += b * b / sys.lambdas[static_cast<std::size_t>(k - 1)];
    if (s0 >= target_mass) {
      crossing = k;
      break;
    }
  }
  if (crossing == 0) {
    throw DomainError("off_diagonal_contrapositive_run: system too short to reach target mass");
  }
  report.crossing_index = crossing;

  const double c4 = 1.0 + 1.0 / std::sqrt(sys.delta);
  const double c7 = 1.0 / std::sqrt(sys.delta);
  const double mult = static_cast<double>(cond.max_multiplicity);

  // Cluster-retained mass, direct and via the integral-route rewrite.
  double retained = 0.0;
  double retained_integral = 0.0;
  for (Index k = 1; k <= crossing; ++k) {
    const std::size_t i = static_cast<std::size_t>(k - 1);
    const bool keeps_own = std::find(sys.delta_sets[i].begin(), sys.delta_sets[i].end(), k) !=
                           sys.delta_sets[i].end();
    if (!keeps_own) continue;
    const double b2 = sys.betas[i] * sys.betas[i];
    retained += b2 / sys.lambdas[i];
    retained_integral += 2.0 * (b2 / (2.0 * sys.lambdas[i]));
  }

  const double s1 = retained;
  const double s2 = s1 / mult;
  const double s3 = retained_integral / mult;
  const double s4 = s3 / (c4 * c4);
  const double s5 = s4;
  const double s6 = s5;
  const double s7 = s6 / (c7 * c7);

  const auto push = [&](int index, const char* label, double value, double floor,
                        const char* rule) {
    ChainStep step;
    step.index = index;
    step.label = label;
    step.value = value;
    step.floor = floor;
    step.slack = value - floor;
    step.rule = rule;
    report.steps.push_back(std::move(step));
  };

  push(0, "half_power_mass", s0, target_mass, "none");
  push(1, "cluster_retained_mass", s1, sys.delta * s0, "cluster_mass_retention");
  push(2, "disjointified_mass", s2, s1 / static_cast<double>(sys.j_overlap),
       "covering_multiplicity");
  push(3, "integral_form", s3, s2, "none");
  push(4, "square_function_bound", s4, s3 / (c4 * c4), "square_function_comparison");
  push(5, "frequency_form", s5, s4, "none");
  push(6, "remainder_dropped", s6, s5, "positive_remainder_drop");
  push(7, "gaussian_bound_witness", s7, s6 / (c7 * c7), "ratio_comparison");

  report.final_value = s7;
  report.required_floor = target_mass * sys.delta /
                          (static_cast<double>(sys.j_overlap) * c4 * c4 * c7 * c7);
  report.nonnegative_slack = true;
  for (const ChainStep& step : report.steps) {
    if (step.slack < -1e-12 * std::max(1.0, std::abs(step.value))) {
      report.nonnegative_slack = false;
    }
  }
  report.final_exceeds_floor =
      report.final_value >= report.required_floor * (1.0 - 1e-12);
  return report;
}

OffDiagonalSystem make_off_diagonal_harmonic(Index n) {
  if (n < 1) throw DomainError("make_off_diagonal_harmonic: need at least one coordinate");
  OffDiagonalSystem sys;
  sys.lambdas.reserve(static_cast<std::size_t>(n));
  sys.betas.assign(static_cast<std::size_t>(n), 1.0);
  sys.delta_sets.reserve(static_cast<std::size_t>(n));
  for (Index k = 1; k <= n; ++k) {
    sys.lambdas.push_back(static_cast<double>(k));
    sys.delta_sets.push_back({k});
  }
  sys.delta = 1.0;
  sys.j_overlap = 1;
  return sys;
}

OuReport ou_terminal_distribution(const DiagonalSystem& sys, const OuConfig& cfg, int n_sigma) {
  sys.validate();
  if (!(cfg.t_final > 0.0)) throw DomainError("ou_terminal_distribution: t_final must be positive");
  if (cfg.n_steps < 1) throw DomainError("ou_terminal_distribution: need at least one step");
  if (cfg.n_paths < 100) throw DomainError("ou_terminal_distribution: need at least 100 paths");
  if (n_sigma < 1) throw DomainError("ou_terminal_distribution: n_sigma must be >= 1");

  const double dt = cfg.t_final / static_cast<double>(cfg.n_steps);
  OuReport report;
  report.n_sigma = n_sigma;
  report.coords.reserve(sys.lambdas.size());

  double sum_se_sq = 0.0;
  for (std::size_t i = 0; i < sys.lambdas.size(); ++i) {
    const double lam = sys.lambdas[i];
    const double beta = sys.betas[i];
    const double decay = std::exp(-lam * dt);
    // Exact one-step noise variance: beta^2 (1 - e^{-2 lambda dt}) / (2 lambda).
    const double step_var = beta * beta * (-std::expm1(-2.0 * lam * dt)) / (2.0 * lam);
    const double step_sd = std::sqrt(step_var);

    GaussianStream stream(derive_stream_seed(cfg.seed, static_cast<std::uint64_t>(i + 1)));
    double sum_sq = 0.0;
    for (std::size_t path = 0; path < cfg.n_paths; ++path) {
      double u = 0.0;
      for (int s = 0; s < cfg.n_steps; ++s) u = decay * u + step_sd * stream.next();
      sum_sq += u * u;
    }

    OuCoordinateStat stat;
    stat.lambda = lam;
    stat.beta = beta;
    stat.target_var = beta * beta * (-std::expm1(-2.0 * lam * cfg.t_final)) / (2.0 * lam);
    stat.empirical_var = sum_sq / static_cast<double>(cfg.n_paths);
    // The terminal values are exactly Gaussian, so the second-moment estimator
    // has variance 2 sigma^4 / n; the known-mean form needs no n-1 correction.
    stat.std_error = stat.target_var * std::sqrt(2.0 / static_cast<double>(cfg.n_paths));
    stat.z = stat.std_error > 0.0 ? (stat.empirical_var - stat.target_var) / stat.std_error : 0.0;

    report.sum_target += stat.target_var;
    report.sum_empirical += stat.empirical_var;
    sum_se_sq += stat.std_error * stat.std_error;
    report.max_abs_z = std::max(report.max_abs_z, std::abs(stat.z));
    report.coords.push_back(stat);
  }

  report.sum_std_error = std::sqrt(sum_se_sq);
  report.sum_z = report.sum_std_error > 0.0
                     ? (report.sum_empirical - report.sum_target) / report.sum_std_error
                     : 0.0;
  report.all_within =
      report.max_abs_z <= static_cast<double>(n_sigma) &&
      std::abs(report.sum_z) <= static_cast<double>(n_sigma);
  return report;
}

}  // namespace gammarad
