#include <cmath>
#include <limits>
#include <vector>

#include "doctest.h"
#include "gammarad/family.hpp"
#include "gammarad/unif_gamma.hpp"

using namespace gammarad;

namespace {

FiniteVector harmonic_symbol(Index n) {
  FiniteVector h;
  for (Index k = 1; k <= n; ++k) h.add_entry(k, Complex(1.0 / static_cast<double>(k), 0.0));
  h.finish();
  return h;
}

}  // namespace

TEST_CASE("family registration deduplicates identical members") {
  OperatorFamily fam("dedupe");
  ColumnOperator op(SpaceSpec{2.0, 3, ScalarField::kComplex}, 3);
  op.set_column(1, FiniteVector::unit(1));
  const std::size_t first = fam.add(op);
  const std::size_t second = fam.add(op);
  CHECK(first == second);
  CHECK(fam.size() == 1);
}

TEST_CASE("projection family grows linearly with no uniform bound") {
  const Index n = 100;
  const OperatorFamily fam = projection_family(n);
  CHECK(fam.size() == static_cast<std::size_t>(n));
  const UnifGammaBoundReport rep = unif_gamma_lower(fam, n);
  CHECK(rep.diagonal_exact);
  CHECK(rep.winning_basis == "standard");
  CHECK(rep.lower_bound == doctest::Approx(100.0).epsilon(1e-14));
  CHECK(rep.lower_std_error == 0.0);
  CHECK(rep.witness_members.size() == static_cast<std::size_t>(n));
  REQUIRE(rep.tails.size() == 4);
  // Tail at cut c counts the surviving coordinates exactly: n - c + 1.
  const std::vector<double> expected = {100.0, 75.0, 50.0, 25.0};
  for (std::size_t i = 0; i < rep.tails.size(); ++i) {
    CHECK(rep.tails[i].value == doctest::Approx(expected[i]).epsilon(1e-14));
  }
  // At half the truncation the bound is half as large: growth certifies that
  // no single constant covers every truncation.
  const UnifGammaBoundReport half = unif_gamma_lower(projection_family(n / 2), n / 2);
  CHECK(rep.lower_bound / half.lower_bound == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("rank one family with square-summable symbol has vanishing tails") {
  const Index n = 200;
  const OperatorFamily fam = rank_one_family(harmonic_symbol(n), n);
  const UnifGammaBoundReport rep = unif_gamma_lower(fam, n);
  CHECK(rep.winning_basis == "standard");
  // Reference values from an independent implementation.
  CHECK(rep.lower_bound == doctest::Approx(1.639946546015).epsilon(1e-10));
  REQUIRE(rep.tails.size() == 4);
  CHECK(rep.tails[0].value == doctest::Approx(1.639946546015).epsilon(1e-10));
  CHECK(rep.tails[1].value == doctest::Approx(0.014813812393).epsilon(1e-7));
  CHECK(rep.tails[2].value == doctest::Approx(0.004962645830).epsilon(1e-7));
  CHECK(rep.tails[3].value == doctest::Approx(0.001656972993).epsilon(1e-7));
  // Tails collapse while the total stays put; the family is uniformly
  // controlled by the symbol's square sum.
  CHECK(rep.tails[3].value < 0.002 * rep.tails[0].value);
}

TEST_CASE("shift orbit block values match the closed form to 1e-12") {
  const std::vector<ShiftBlockValue> blocks = shift_orbit_divergence(20);
  REQUIRE(blocks.size() == 19);
  for (const ShiftBlockValue& b : blocks) {
    const double closed =
        std::ldexp(1.0, b.block / 2) * (b.block % 2 == 0 ? 1.0 : std::sqrt(2.0)) /
        (static_cast<double>(b.block) * b.block);
    CHECK(std::abs(b.value - closed) <= 1e-12 * closed);
    CHECK(b.block_size == (Index(1) << b.block));
    CHECK(b.first_shift_power == static_cast<int>(b.block_size - 1));
  }
  CHECK(blocks.front().block == 2);
  CHECK(blocks.front().value == doctest::Approx(0.5).epsilon(1e-13));
  CHECK(blocks.back().value == doctest::Approx(2.56).epsilon(1e-13));
  CHECK(blocks.back().value > blocks.front().value);
}

TEST_CASE("sup space log decay columns carry the declared weights") {
  const ColumnOperator op = sup_space_log_decay_operator(10);
  CHECK(op.target().is_sup());
  for (Index k = 1; k <= 10; ++k) {
    const FiniteVector& col = op.column(k);
    REQUIRE(col.nnz() == 1);
    CHECK(col.entries().front().first == k);
    CHECK(col.entries().front().second.real() ==
          doctest::Approx(1.0 / std::sqrt(std::log(static_cast<double>(k) + 1.0))));
  }
}

TEST_CASE("truncation chain levels are nested and grow the bound") {
  const ColumnOperator op = sup_space_log_decay_operator(64);
  const std::vector<OperatorFamily> chain = truncation_chain(op, 4);
  REQUIRE(chain.size() == 4);
  for (std::size_t i = 1; i < chain.size(); ++i) {
    CHECK(chain[i].size() >= chain[i - 1].size());
    CHECK(chain[i].contains_all_of(chain[i - 1]));
  }
}

TEST_CASE("fatou style union bound holds on l2 and reports sup-space tails") {
  // l2 chain: nested truncations of a diagonal operator.
  ColumnOperator diag(SpaceSpec{2.0, 8, ScalarField::kComplex}, 8);
  for (Index k = 1; k <= 8; ++k) {
    diag.set_column(k, FiniteVector::unit(k).scaled(Complex(1.0 / k, 0.0)));
  }
  const std::vector<OperatorFamily> chain = truncation_chain(diag, 3);
  const FatouUnionReport rep = fatou_union_bound(chain);
  CHECK(rep.applicable);
  CHECK(rep.bound_holds);
  CHECK(rep.union_lower >= rep.max_level_lower - 1e-12);

  // sup-space chain: the inequality is not asserted, tails are reported.
  const std::vector<OperatorFamily> sup_chain =
      truncation_chain(sup_space_log_decay_operator(64), 3);
  const FatouUnionReport sup_rep = fatou_union_bound(sup_chain);
  CHECK_FALSE(sup_rep.applicable);
  CHECK_FALSE(sup_rep.union_tails.empty());
}

TEST_CASE("coordinatewise domination certifies a family-wide majorant") {
  const Index n = 16;
  OperatorFamily fam("scaled-diagonals");
  for (int m = 1; m <= 3; ++m) {
    ColumnOperator op(SpaceSpec{2.0, n, ScalarField::kComplex}, n);
    for (Index k = 1; k <= n; ++k) {
      op.set_column(k, FiniteVector::unit(k).scaled(Complex(1.0 / (k + m), 0.0)));
    }
    fam.add(std::move(op));
  }
  ColumnOperator majorant(SpaceSpec{2.0, n, ScalarField::kComplex}, n);
  for (Index k = 1; k <= n; ++k) {
    majorant.set_column(k, FiniteVector::unit(k).scaled(Complex(1.0 / k, 0.0)));
  }
  const DominatedCheckReport rep = dominated_check(fam, majorant);
  CHECK(rep.dominated);
  CHECK(rep.majorant_column_sum_sq > 0.0);

  // Break domination at one coordinate and the witness points at it.
  ColumnOperator rogue(SpaceSpec{2.0, n, ScalarField::kComplex}, n);
  rogue.set_column(5, FiniteVector::unit(5).scaled(Complex(2.0, 0.0)));
  fam.add(std::move(rogue));
  const DominatedCheckReport bad = dominated_check(fam, majorant);
  CHECK_FALSE(bad.dominated);
  CHECK(bad.first_violation_column == 5);
}

TEST_CASE("convex combinations never beat the family bound by more than noise") {
  const OperatorFamily fam = projection_family(4);
  const ConvexComparisonReport rep = permanence_convex(fam, {0.25, 0.25, 0.25, 0.25});
  CHECK(rep.holds);
  CHECK(rep.combo_value <= rep.family_value * rep.factor + 4.0 * rep.combo_std_error + 1e-9);
  CHECK_THROWS_AS(permanence_convex(fam, {0.5, 0.5}), DomainError);
}

TEST_CASE("rademacher selections stay below the uniform upper bound") {
  // Diagonal family with an exact upper bound: members scale coordinates by
  // at most 1, so selections cannot exceed the uniform value.
  const OperatorFamily fam = projection_family(12);
  UnifGammaConfig cfg;
  cfg.draws.n_samples = 20000;
  cfg.draws.batch_count = 10;
  const RademacherComparisonReport rep = gamma_bound_vs_unif(fam, cfg, 7, 32);
  CHECK(rep.inequality_holds);
  CHECK(rep.unif_upper_norm < std::numeric_limits<double>::infinity());
  CHECK(rep.r_lower > 0.0);
}

TEST_CASE("two-sided multiplication rescales certified bounds by the outer norms") {
  const Index n = 32;
  OperatorFamily fam("diag");
  ColumnOperator op(SpaceSpec{2.0, n, ScalarField::kComplex}, n);
  for (Index k = 1; k <= n; ++k) {
    op.set_column(k, FiniteVector::unit(k).scaled(Complex(1.0 / k, 0.0)));
  }
  fam.add(std::move(op));

  ColumnOperator twice(SpaceSpec{2.0, n, ScalarField::kComplex}, n);
  ColumnOperator ident(SpaceSpec{2.0, n, ScalarField::kComplex}, n);
  for (Index k = 1; k <= n; ++k) {
    twice.set_column(k, FiniteVector::unit(k).scaled(Complex(2.0, 0.0)));
    ident.set_column(k, FiniteVector::unit(k));
  }
  const OperatorFamily doubled = transformed_family(twice, fam, ident);
  const UnifGammaBoundReport base = unif_gamma_lower(fam, n);
  const UnifGammaBoundReport scaled = unif_gamma_lower(doubled, n);
  // Doubling every column quadruples the squared bound exactly.
  CHECK(scaled.lower_bound == doctest::Approx(4.0 * base.lower_bound).epsilon(1e-13));
}
