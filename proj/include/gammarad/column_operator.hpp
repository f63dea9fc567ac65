#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "gammarad/space.hpp"

namespace gammarad {

// An operator from a truncated separable Hilbert space into a truncated
// sequence space, given by its columns: column k is the image of the k-th
// standard basis vector of the domain.  Missing columns are zero.  The domain
// truncation bounds which basis vectors the operator is defined on; column
// indices beyond it are rejected.
class ColumnOperator {
 public:
  ColumnOperator() = default;
  ColumnOperator(SpaceSpec target, Index domain_trunc)
      : target_(target), domain_trunc_(domain_trunc) {
    target_.validate();
    if (domain_trunc_ < 1) {
      throw ValidationError("ColumnOperator: domain truncation must be positive");
    }
  }

  const SpaceSpec& target() const { return target_; }
  Index domain_trunc() const { return domain_trunc_; }
  const std::map<Index, FiniteVector>& columns() const { return columns_; }

  void set_column(Index k, FiniteVector v) {
    if (k < 1 || k > domain_trunc_) {
      throw ValidationError("ColumnOperator: column index outside domain truncation");
    }
    v.finish();
    if (v.max_index() > target_.trunc) {
      throw ValidationError("ColumnOperator: column entry outside target truncation");
    }
    if (v.empty()) {
      columns_.erase(k);
    } else {
      columns_[k] = std::move(v);
    }
  }

  const FiniteVector& column(Index k) const {
    static const FiniteVector kZero;
    auto it = columns_.find(k);
    return it == columns_.end() ? kZero : it->second;
  }

  // Image of a (sparse) domain vector: T x = sum_k x_k * column_k.
  FiniteVector apply(const FiniteVector& x) const {
    FiniteVector out;
    for (const auto& [k, xk] : x.entries()) {
      auto it = columns_.find(k);
      if (it == columns_.end()) continue;
      for (const auto& [i, v] : it->second.entries()) out.add_entry(i, xk * v);
    }
    out.finish();
    return out;
  }

  // Image of a dense domain vector given as coefficients x[0..n-1] for
  // coordinates 1..n.
  FiniteVector apply_dense(const std::vector<Complex>& x) const {
    FiniteVector out;
    for (const auto& [k, col] : columns_) {
      if (k > static_cast<Index>(x.size())) break;
      const Complex xk = x[static_cast<std::size_t>(k - 1)];
      if (xk == Complex(0.0)) continue;
      for (const auto& [i, v] : col.entries()) out.add_entry(i, xk * v);
    }
    out.finish();
    return out;
  }

  // Adjoint image (target -> domain), used by operator-norm estimation:
  // (T* y)_k = [y, column_k].
  FiniteVector apply_adjoint(const FiniteVector& y) const {
    FiniteVector out;
    for (const auto& [k, col] : columns_) {
      const Complex v = FiniteVector::dot(y, col);
      if (v != Complex(0.0)) out.add_entry(k, v);
    }
    out.finish();
    return out;
  }

  // Sum of squared column norms.  On an l2 target this is the exact second
  // moment of the Gaussian column sum.
  double column_norm_sq_sum() const {
    double s = 0.0;
    for (const auto& [k, col] : columns_) s += col.norm_sq_l2();
    return s;
  }

  // Content fingerprint (FNV-1a over the sorted column data), used to
  // deduplicate family members.
  std::uint64_t fingerprint() const;

  // Composition: (*this) after S, i.e. columns k |-> this->apply(S.column(k)).
  ColumnOperator compose_after(const ColumnOperator& s) const;

  // Largest singular value, by power iteration on T*T with a deterministic
  // start vector.  Intended for small validation problems.
  double op_norm_estimate(int iterations = 200) const;

 private:
  SpaceSpec target_;
  Index domain_trunc_ = 0;
  std::map<Index, FiniteVector> columns_;
};

}  // namespace gammarad
