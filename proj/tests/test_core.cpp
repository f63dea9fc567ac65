#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "doctest.h"
#include "gammarad/column_operator.hpp"
#include "gammarad/report.hpp"
#include "gammarad/rng.hpp"
#include "gammarad/series.hpp"
#include "gammarad/space.hpp"

using namespace gammarad;

TEST_CASE("space spec accepts exactly p in {1, 2, infinity}") {
  SpaceSpec ok{2.0, 5, ScalarField::kComplex};
  CHECK_NOTHROW(ok.validate());
  SpaceSpec sup{std::numeric_limits<double>::infinity(), 3, ScalarField::kReal};
  CHECK_NOTHROW(sup.validate());
  CHECK(sup.is_sup());
  CHECK(sup.label() == "sup");
  SpaceSpec bad_p{3.0, 5, ScalarField::kComplex};
  CHECK_THROWS_AS(bad_p.validate(), ValidationError);
  SpaceSpec bad_trunc{2.0, 0, ScalarField::kComplex};
  CHECK_THROWS_AS(bad_trunc.validate(), ValidationError);
}

TEST_CASE("finite vectors sort, merge duplicates, and drop zeros") {
  FiniteVector v;
  v.add_entry(5, Complex(2.0, 0.0));
  v.add_entry(2, Complex(0.0, 1.0));
  v.add_entry(5, Complex(-2.0, 0.0));  // cancels the first entry
  v.finish();
  CHECK(v.nnz() == 1);
  CHECK(v.max_index() == 2);
  CHECK(v.coeff(2) == Complex(0.0, 1.0));
  CHECK(v.coeff(5) == Complex(0.0, 0.0));
  CHECK_THROWS_AS(FiniteVector::unit(0), ValidationError);
}

TEST_CASE("finite vector norms agree with the target space") {
  FiniteVector v;
  v.add_entry(1, Complex(3.0, 0.0));
  v.add_entry(7, Complex(0.0, -4.0));
  v.finish();
  CHECK(v.norm_sq_l2() == doctest::Approx(25.0).epsilon(1e-15));
  CHECK(v.norm(SpaceSpec{2.0, 7, ScalarField::kComplex}) == doctest::Approx(5.0));
  CHECK(v.norm(SpaceSpec{std::numeric_limits<double>::infinity(), 7, ScalarField::kComplex}) ==
        doctest::Approx(4.0));
  CHECK(v.norm(SpaceSpec{1.0, 7, ScalarField::kComplex}) == doctest::Approx(7.0));
}

TEST_CASE("dot is sesquilinear in the second slot") {
  FiniteVector x;
  x.add_entry(1, Complex(1.0, 1.0));
  x.finish();
  FiniteVector y;
  y.add_entry(1, Complex(0.0, 2.0));
  y.finish();
  // [x, y] = (1 + i) * conj(2i) = (1 + i)(-2i) = 2 - 2i.
  CHECK(FiniteVector::dot(x, y).real() == doctest::Approx(2.0));
  CHECK(FiniteVector::dot(x, y).imag() == doctest::Approx(-2.0));
}

TEST_CASE("column operator applies columns linearly and adjoint matches") {
  SpaceSpec target{2.0, 3, ScalarField::kComplex};
  ColumnOperator op(target, 2);
  FiniteVector c1;
  c1.add_entry(1, Complex(1.0, 0.0));
  c1.add_entry(3, Complex(0.0, 2.0));
  c1.finish();
  op.set_column(1, c1);
  op.set_column(2, FiniteVector::unit(2).scaled(Complex(0.5, 0.0)));

  FiniteVector x;
  x.add_entry(1, Complex(2.0, 0.0));
  x.add_entry(2, Complex(4.0, 0.0));
  x.finish();
  const FiniteVector image = op.apply(x);
  CHECK(image.coeff(1) == Complex(2.0, 0.0));
  CHECK(image.coeff(2) == Complex(2.0, 0.0));
  CHECK(image.coeff(3) == Complex(0.0, 4.0));

  // [T x, y] must equal [x, T* y] for every pair of probes.
  FiniteVector y;
  y.add_entry(3, Complex(1.0, -1.0));
  y.finish();
  const Complex lhs = FiniteVector::dot(op.apply(x), y);
  const Complex rhs = FiniteVector::dot(x, op.apply_adjoint(y));
  CHECK(std::abs(lhs - rhs) < 1e-14);
}

TEST_CASE("derived seed streams differ and reproduce") {
  CHECK(derive_stream_seed(1, 1) == derive_stream_seed(1, 1));
  CHECK(derive_stream_seed(1, 1) != derive_stream_seed(1, 2));
  CHECK(derive_stream_seed(1, 1) != derive_stream_seed(2, 1));
}

TEST_CASE("uniform doubles sit inside (0, 1]") {
  Xoshiro256pp rng(12345);
  for (int i = 0; i < 10000; ++i) {
    const double u = rng.next_unit();
    CHECK(u > 0.0);
    CHECK(u <= 1.0);
  }
}

TEST_CASE("gaussian stream has standard moments") {
  GaussianStream g(777);
  const int n = 200000;
  double s1 = 0.0;
  double s2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = g.next();
    s1 += x;
    s2 += x * x;
  }
  const double mean = s1 / n;
  const double var = s2 / n - mean * mean;
  // 5 sigma bands: se(mean) = 1/sqrt(n), se(var) ~ sqrt(2/n).
  CHECK(std::abs(mean) < 5.0 / std::sqrt(static_cast<double>(n)));
  CHECK(std::abs(var - 1.0) < 5.0 * std::sqrt(2.0 / n));
}

TEST_CASE("gaussian draw config enforces the batching plan") {
  GaussianDrawConfig cfg;
  cfg.n_samples = 100;
  cfg.batch_count = 10;
  CHECK_NOTHROW(cfg.validate());
  cfg.batch_count = 1;
  CHECK_THROWS_AS(cfg.validate(), ValidationError);
  cfg.batch_count = 20;  // fewer than 10 samples per batch
  CHECK_THROWS_AS(cfg.validate(), ValidationError);
}

TEST_CASE("doubling profile flags the harmonic series as divergent-trending") {
  const DoublingProfile profile =
      doubling_profile([](Index k) { return 1.0 / static_cast<double>(k); }, 512, 5);
  CHECK(profile.truncations.size() == 6);
  CHECK(profile.truncations.front() == 512);
  CHECK(profile.truncations.back() == 512 * 32);
  CHECK(profile.divergent_trending);
  // Doubling increments of the harmonic series approach log 2 from below.
  CHECK(profile.ratio_floor > 0.9);
  for (std::size_t i = 1; i < profile.partial_sums.size(); ++i) {
    CHECK(profile.partial_sums[i] > profile.partial_sums[i - 1]);
  }
}

TEST_CASE("doubling profile flags a summable tail as convergent") {
  const DoublingProfile profile =
      doubling_profile([](Index k) { return 1.0 / (static_cast<double>(k) * k); }, 512, 5);
  CHECK_FALSE(profile.divergent_trending);
  CHECK(profile.ratio_floor < 0.9);
}

TEST_CASE("format_double writes shortest round-trip decimal") {
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(1.0) == "1");
  CHECK(format_double(-2.56) == "-2.56");
  CHECK(format_double(0.0) == "0");
  const double pi2_6 = 1.644934066848226;
  CHECK(std::stod(format_double(pi2_6)) == pi2_6);
}

TEST_CASE("csv report uses the fixed header and newline-terminated rows") {
  ReportRow row;
  row.experiment = "demo";
  row.params = "a=1;b=two";
  row.value = 2.5;
  row.std_error = 0.0;
  row.truncation = "16";
  row.seed = 42;
  const std::string csv = to_csv({row});
  CHECK(csv == std::string(kCsvHeader) + "\ndemo,a=1;b=two,2.5,0,16,42\n");
}

TEST_CASE("csv escaping quotes fields containing separators") {
  CHECK(csv_escape("plain") == "plain");
  CHECK(csv_escape("has,comma") == "\"has,comma\"");
  CHECK(csv_escape("has\"quote") == "\"has\"\"quote\"");
}

TEST_CASE("fnv1a64 matches the published test vectors") {
  CHECK(fnv1a64("") == 14695981039346656037ULL);
  CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
  CHECK(fnv1a64("foobar") == 0x85944171f73967e8ULL);
}
