#include "gammarad/column_operator.hpp"

#include <cmath>
#include <cstring>

namespace gammarad {

namespace {

void fnv_accumulate(std::uint64_t& h, const void* data, std::size_t n) {
  const auto* bytes = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < n; ++i) {
    h ^= bytes[i];
    h *= 0x100000001b3ULL;
  }
}

void fnv_accumulate_double(std::uint64_t& h, double v) {
  // Normalize -0.0 so numerically equal columns fingerprint identically.
  if (v == 0.0) v = 0.0;
  std::uint64_t bits;
  std::memcpy(&bits, &v, sizeof bits);
  fnv_accumulate(h, &bits, sizeof bits);
}

}  // namespace

std::uint64_t ColumnOperator::fingerprint() const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  fnv_accumulate_double(h, target_.p);
  fnv_accumulate(h, &target_.trunc, sizeof target_.trunc);
  fnv_accumulate(h, &domain_trunc_, sizeof domain_trunc_);
  for (const auto& [k, col] : columns_) {
    fnv_accumulate(h, &k, sizeof k);
    for (const auto& [i, v] : col.entries()) {
      fnv_accumulate(h, &i, sizeof i);
      fnv_accumulate_double(h, v.real());
      fnv_accumulate_double(h, v.imag());
    }
  }
  return h;
}

ColumnOperator ColumnOperator::compose_after(const ColumnOperator& s) const {
  if (s.target().trunc > domain_trunc_) {
    throw ValidationError("compose_after: inner target exceeds outer domain truncation");
  }
  ColumnOperator out(target_, s.domain_trunc());
  for (const auto& [k, col] : s.columns()) {
    FiniteVector image = apply(col);
    if (!image.empty()) out.set_column(k, std::move(image));
  }
  return out;
}

double ColumnOperator::op_norm_estimate(int iterations) const {
  if (columns_.empty()) return 0.0;
  // Deterministic start: equal weight on every column index.
  FiniteVector x;
  for (const auto& [k, col] : columns_) x.add_entry(k, Complex(1.0));
  x.finish();
  double norm = std::sqrt(x.norm_sq_l2());
  double value = 0.0;
  for (int it = 0; it < iterations; ++it) {
    x = x.scaled(Complex(1.0 / norm));
    FiniteVector y = apply(x);
    const double ysq = y.norm_sq_l2();
    if (ysq == 0.0) return 0.0;
    x = apply_adjoint(y);
    norm = std::sqrt(x.norm_sq_l2());
    // Rayleigh quotient for T*T converges to the squared top singular value.
    const double next = norm == 0.0 ? 0.0 : std::sqrt(norm);
    if (it > 4 && std::abs(next - value) <= 1e-14 * std::max(1.0, value)) {
      value = next;
      break;
    }
    value = next;
  }
  return value;
}

}  // namespace gammarad
