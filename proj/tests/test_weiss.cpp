#include <cmath>
#include <set>
#include <string>
#include <vector>

#include "doctest.h"
#include "gammarad/weiss.hpp"

using namespace gammarad;

TEST_CASE("diagonal system rates and weights take their defining values") {
  const DiagonalSystem lin = make_diagonal_system(RateKind::kLinear, WeightKind::kUnit, 5);
  CHECK(lin.lambdas == std::vector<double>{1.0, 2.0, 3.0, 4.0, 5.0});
  CHECK(lin.betas == std::vector<double>{1.0, 1.0, 1.0, 1.0, 1.0});

  const DiagonalSystem quad = make_diagonal_system(RateKind::kQuadratic, WeightKind::kInverse, 4);
  CHECK(quad.lambdas == std::vector<double>{1.0, 4.0, 9.0, 16.0});
  CHECK(quad.betas[3] == doctest::Approx(0.25));

  const DiagonalSystem geo =
      make_diagonal_system(RateKind::kGeometric, WeightKind::kInverseSqrt, 4);
  CHECK(geo.lambdas == std::vector<double>{2.0, 4.0, 8.0, 16.0});
  CHECK(geo.betas[3] == doctest::Approx(0.5));

  const DiagonalSystem logsq = make_diagonal_system(RateKind::kLogSquared, WeightKind::kUnit, 3);
  CHECK(logsq.lambdas[2] == doctest::Approx(3.0 * std::log(4.0) * std::log(4.0)));
  CHECK(logsq.label == "log_squared_unit");
}

TEST_CASE("geometric rates refuse truncations that overflow doubles") {
  CHECK_NOTHROW(make_diagonal_system(RateKind::kGeometric, WeightKind::kUnit, 1020));
  CHECK_THROWS_AS(make_diagonal_system(RateKind::kGeometric, WeightKind::kUnit, 1030),
                  DomainError);
}

TEST_CASE("the three diagnostic quantities scale by exact rational factors") {
  const DiagonalSystem sys = make_diagonal_system(RateKind::kQuadratic, WeightKind::kUnit, 10000);
  const double invariant = invariant_measure_quantity(sys);
  const double half_power = half_power_gamma_quantity(sys);
  const double resolvent = resolvent_sup_quantity(sys);
  CHECK(half_power == doctest::Approx(2.0 * invariant).epsilon(1e-13));
  CHECK(half_power == doctest::Approx(4.0 * resolvent).epsilon(1e-13));
  // Partial sums sit just under their limits.
  const double pi2_6 = 1.644934066848226;
  CHECK(std::abs(half_power - pi2_6) < 1.0e-4);
  CHECK(std::abs(invariant - pi2_6 / 2.0) < 5.0e-5);
}

TEST_CASE("factor four identity closes to the last bit") {
  const DiagonalSystem sys = make_diagonal_system(RateKind::kQuadratic, WeightKind::kUnit, 10000);
  const FactorFourCheck check = factor_four_identity_check(sys);
  CHECK(check.holds);
  CHECK(check.rel_gap == 0.0);
  CHECK(check.lhs == doctest::Approx(1.644834071848065).epsilon(1e-14));
  CHECK(check.lhs == check.rhs);
}

TEST_CASE("grid supremum captures the closed resolvent form") {
  const DiagonalSystem sys = make_diagonal_system(RateKind::kQuadratic, WeightKind::kUnit, 500);
  const ResolventBoundsReport report = resolvent_family_bounds(sys, 8);
  CHECK(report.closed_form == doctest::Approx(resolvent_sup_quantity(sys)).epsilon(1e-13));
  CHECK(report.capture_ratio > 0.9);
  CHECK(report.capture_ratio <= 1.0 + 1e-9);
  CHECK(report.sector.lower_within_upper);
}

TEST_CASE("equivalence corpus enumerates all twelve labeled systems") {
  const std::vector<CorpusEntry> corpus = equivalence_corpus();
  REQUIRE(corpus.size() == 12);
  std::set<std::string> labels;
  for (const CorpusEntry& entry : corpus) {
    labels.insert(entry.system.label);
    CHECK(entry.profile_base >= 16);
  }
  CHECK(labels.size() == 12);
  CHECK(labels.count("linear_unit") == 1);
  CHECK(labels.count("log_squared_inverse") == 1);
}

TEST_CASE("three-way verdicts agree on borderline and clear-cut systems") {
  // Borderline divergent: harmonic-type sums on the linear/unit system.
  const DiagonalSystem harmonic = make_diagonal_system(RateKind::kLinear, WeightKind::kUnit,
                                                       512 * 32);
  const WeissEquivalenceReport div = weiss_equivalence_report(harmonic);
  CHECK(div.consistent);
  CHECK(div.invariant_divergent);
  CHECK(div.half_power_divergent);
  CHECK(div.resolvent_divergent);

  // Clearly convergent: cubic-decay terms on the linear/inverse system.
  const DiagonalSystem cubic = make_diagonal_system(RateKind::kLinear, WeightKind::kInverse,
                                                    512 * 32);
  const WeissEquivalenceReport conv = weiss_equivalence_report(cubic);
  CHECK(conv.consistent);
  CHECK_FALSE(conv.invariant_divergent);
  CHECK_FALSE(conv.half_power_divergent);
  CHECK_FALSE(conv.resolvent_divergent);
}

TEST_CASE("off-diagonal conditions hold for the canonical harmonic witness") {
  const OffDiagonalSystem sys = make_off_diagonal_harmonic(100);
  const OffDiagonalConditions cond = off_diagonal_conditions(sys);
  CHECK(cond.separation_holds);
  CHECK(cond.max_multiplicity == 1);
  CHECK(cond.mass_holds);
  CHECK(cond.min_mass_fraction == doctest::Approx(1.0));
}

TEST_CASE("chain runs reach their frozen values at the recorded crossings") {
  struct Ref {
    double target;
    Index crossing;
    double final_value;
    Index n;
  };
  const std::vector<Ref> refs = {{2.0, 4, 0.520833333, 10},
                                 {5.0, 83, 1.250517068, 100},
                                 {10.0, 12367, 2.500010752, 12400}};
  for (const Ref& ref : refs) {
    const OffDiagonalSystem sys = make_off_diagonal_harmonic(ref.n);
    const OffDiagonalRunReport report = off_diagonal_contrapositive_run(sys, ref.target);
    CHECK(report.crossing_index == ref.crossing);
    CHECK(report.final_value == doctest::Approx(ref.final_value).epsilon(1e-9));
    CHECK(report.required_floor == doctest::Approx(ref.target / 4.0).epsilon(1e-12));
    CHECK(report.nonnegative_slack);
    CHECK(report.final_exceeds_floor);
    REQUIRE(report.steps.size() == 8);
    // The first rewrite into integral form is lossless to the bit.
    CHECK(report.steps[3].value == report.steps[2].value);
    CHECK(report.steps[3].rule == "none");
  }
}

TEST_CASE("chain labels and rules narrate the argument in order") {
  const OffDiagonalRunReport report =
      off_diagonal_contrapositive_run(make_off_diagonal_harmonic(10), 2.0);
  const std::vector<std::string> labels = {
      "half_power_mass",          "cluster_retained_mass", "disjointified_mass",
      "integral_form",            "square_function_bound", "frequency_form",
      "remainder_dropped",        "gaussian_bound_witness"};
  REQUIRE(report.steps.size() == labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    CHECK(report.steps[i].label == labels[i]);
    CHECK(report.steps[i].slack >= -1e-12);
  }
}

TEST_CASE("insufficient mass is reported as an input problem") {
  const OffDiagonalSystem sys = make_off_diagonal_harmonic(4);
  CHECK_THROWS_AS(off_diagonal_contrapositive_run(sys, 50.0), DomainError);
}

TEST_CASE("ou terminal variances match the exact transition law") {
  const DiagonalSystem sys = make_diagonal_system(RateKind::kQuadratic, WeightKind::kUnit, 6);
  OuConfig cfg;
  cfg.t_final = 20.0;
  cfg.seed = 5;
  cfg.n_paths = 2000;
  const OuReport report = ou_terminal_distribution(sys, cfg);
  REQUIRE(report.coords.size() == 6);
  for (std::size_t i = 0; i < report.coords.size(); ++i) {
    const double lambda = sys.lambdas[i];
    const double expected = (1.0 - std::exp(-2.0 * lambda * 20.0)) / (2.0 * lambda);
    CHECK(report.coords[i].target_var == doctest::Approx(expected).epsilon(1e-12));
  }
  CHECK(report.all_within);
  CHECK(report.max_abs_z == doctest::Approx(1.956047).epsilon(1e-4));
  CHECK(report.sum_target == doctest::Approx(report.coords[0].target_var +
                                             report.coords[1].target_var +
                                             report.coords[2].target_var +
                                             report.coords[3].target_var +
                                             report.coords[4].target_var +
                                             report.coords[5].target_var));
}

TEST_CASE("ou statistics are invariant under step refinement") {
  // The transition composition is exact, so 4 steps and 64 steps that share
  // one seed may differ in realized paths but both match the law; with the
  // same per-coordinate streams the terminal draws are not required to agree,
  // so compare the z verdicts instead.
  const DiagonalSystem sys = make_diagonal_system(RateKind::kLinear, WeightKind::kUnit, 3);
  OuConfig coarse;
  coarse.t_final = 5.0;
  coarse.n_steps = 4;
  coarse.seed = 11;
  coarse.n_paths = 4000;
  OuConfig fine = coarse;
  fine.n_steps = 64;
  const OuReport a = ou_terminal_distribution(sys, coarse);
  const OuReport b = ou_terminal_distribution(sys, fine);
  CHECK(a.all_within);
  CHECK(b.all_within);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(a.coords[i].target_var == doctest::Approx(b.coords[i].target_var).epsilon(1e-12));
  }
}
