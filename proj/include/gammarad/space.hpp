#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "gammarad/errors.hpp"

namespace gammarad {

using Complex = std::complex<double>;
using Index = std::int64_t;

enum class ScalarField { kReal, kComplex };

// A truncated sequence space: the first `trunc` coordinates of little-lp.
// p = 2 is the workhorse (second moments of Gaussian sums are exact there);
// p = infinity models the sup-norm space of null sequences, where only
// Monte Carlo estimates are available.
struct SpaceSpec {
  double p = 2.0;                 // 1, 2, or infinity
  Index trunc = 0;                // number of coordinates represented
  ScalarField field = ScalarField::kComplex;

  bool is_l2() const { return p == 2.0; }
  bool is_sup() const { return std::isinf(p); }

  void validate() const {
    if (!(p == 1.0 || p == 2.0 || std::isinf(p))) {
      throw ValidationError("SpaceSpec: p must be 1, 2, or infinity");
    }
    if (trunc < 1) throw ValidationError("SpaceSpec: truncation must be positive");
  }

  std::string label() const {
    if (is_sup()) return "sup";
    return p == 1.0 ? "l1" : "l2";
  }
};

// Sparse vector with 1-based coordinates, kept sorted by index with no
// duplicates and no explicit zeros.  Indices are 64-bit because some
// constructions address coordinates far beyond anything that could be
// materialized densely.
class FiniteVector {
 public:
  using Entry = std::pair<Index, Complex>;

  FiniteVector() = default;
  explicit FiniteVector(std::vector<Entry> entries) : entries_(std::move(entries)) {
    normalize();
  }

  static FiniteVector unit(Index i) { return FiniteVector({{i, Complex(1.0, 0.0)}}); }

  const std::vector<Entry>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }
  std::size_t nnz() const { return entries_.size(); }

  Index max_index() const { return entries_.empty() ? 0 : entries_.back().first; }

  Complex coeff(Index i) const {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), i,
                               [](const Entry& e, Index v) { return e.first < v; });
    return (it != entries_.end() && it->first == i) ? it->second : Complex(0.0);
  }

  void add_entry(Index i, Complex v) {
    if (i < 1) throw ValidationError("FiniteVector: coordinates are 1-based");
    entries_.emplace_back(i, v);
    dirty_ = true;
  }

  void finish() {
    if (dirty_) {
      normalize();
      dirty_ = false;
    }
  }

  double norm_sq_l2() const {
    double s = 0.0;
    for (const auto& [i, v] : entries_) s += std::norm(v);
    return s;
  }

  double norm(const SpaceSpec& space) const {
    if (space.is_l2()) return std::sqrt(norm_sq_l2());
    if (space.is_sup()) {
      double m = 0.0;
      for (const auto& [i, v] : entries_) m = std::max(m, std::abs(v));
      return m;
    }
    double s = 0.0;
    for (const auto& [i, v] : entries_) s += std::abs(v);
    return s;
  }

  // Inner product [x, y] = sum_i x_i conj(y_i).
  static Complex dot(const FiniteVector& x, const FiniteVector& y) {
    Complex s(0.0);
    auto ix = x.entries_.begin();
    auto iy = y.entries_.begin();
    while (ix != x.entries_.end() && iy != y.entries_.end()) {
      if (ix->first < iy->first) {
        ++ix;
      } else if (iy->first < ix->first) {
        ++iy;
      } else {
        s += ix->second * std::conj(iy->second);
        ++ix;
        ++iy;
      }
    }
    return s;
  }

  FiniteVector scaled(Complex c) const {
    std::vector<Entry> out = entries_;
    for (auto& [i, v] : out) v *= c;
    return FiniteVector(std::move(out));
  }

  static FiniteVector sum(const FiniteVector& a, const FiniteVector& b) {
    std::vector<Entry> out;
    out.reserve(a.entries_.size() + b.entries_.size());
    auto ia = a.entries_.begin();
    auto ib = b.entries_.begin();
    while (ia != a.entries_.end() || ib != b.entries_.end()) {
      if (ib == b.entries_.end() || (ia != a.entries_.end() && ia->first < ib->first)) {
        out.push_back(*ia++);
      } else if (ia == a.entries_.end() || ib->first < ia->first) {
        out.push_back(*ib++);
      } else {
        out.emplace_back(ia->first, ia->second + ib->second);
        ++ia;
        ++ib;
      }
    }
    return FiniteVector(std::move(out));
  }

 private:
  void normalize() {
    std::sort(entries_.begin(), entries_.end(),
              [](const Entry& a, const Entry& b) { return a.first < b.first; });
    std::vector<Entry> out;
    out.reserve(entries_.size());
    for (const auto& [i, v] : entries_) {
      if (i < 1) throw ValidationError("FiniteVector: coordinates are 1-based");
      if (!out.empty() && out.back().first == i) {
        out.back().second += v;
      } else {
        out.emplace_back(i, v);
      }
    }
    std::erase_if(out, [](const Entry& e) { return e.second == Complex(0.0); });
    entries_ = std::move(out);
  }

  std::vector<Entry> entries_;
  bool dirty_ = false;
};

}  // namespace gammarad
