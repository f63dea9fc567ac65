#include "gammarad/gamma_norm.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "gammarad/errors.hpp"

namespace gammarad {

namespace {

// Columns re-indexed onto the union of their supports, so the sampling loop
// can accumulate into a small dense scratch vector no matter how large the
// ambient coordinate indices are.
struct CompactColumns {
  std::vector<std::vector<std::pair<std::size_t, Complex>>> columns;
  std::size_t width = 0;

  explicit CompactColumns(const std::vector<const FiniteVector*>& vectors) {
    std::unordered_map<Index, std::size_t> local;
    columns.reserve(vectors.size());
    for (const FiniteVector* v : vectors) {
      auto& col = columns.emplace_back();
      col.reserve(v->nnz());
      for (const auto& [i, value] : v->entries()) {
        auto [it, inserted] = local.emplace(i, width);
        if (inserted) ++width;
        col.emplace_back(it->second, value);
      }
    }
  }
};

double norm_sq_of_scratch(const std::vector<Complex>& z, const SpaceSpec& target) {
  if (target.is_l2()) {
    double s = 0.0;
    for (const Complex& v : z) s += std::norm(v);
    return s;
  }
  if (target.is_sup()) {
    double m = 0.0;
    for (const Complex& v : z) m = std::max(m, std::norm(v));
    return m;
  }
  double s = 0.0;
  for (const Complex& v : z) s += std::abs(v);
  return s * s;
}

SecondMomentEstimate batch_mean_estimate(const std::vector<double>& batch_means,
                                         std::int64_t effective_samples) {
  SecondMomentEstimate est;
  est.exact = false;
  est.batch_count = static_cast<int>(batch_means.size());
  est.n_samples = effective_samples;
  double mean = 0.0;
  for (double m : batch_means) mean += m;
  mean /= static_cast<double>(batch_means.size());
  double var = 0.0;
  for (double m : batch_means) var += (m - mean) * (m - mean);
  var /= static_cast<double>(batch_means.size() - 1);
  est.value = mean;
  est.std_error = std::sqrt(var / static_cast<double>(batch_means.size()));
  return est;
}

}  // namespace

Basis Basis::standard(Index count) {
  if (count < 1) throw ValidationError("Basis: count must be positive");
  Basis b;
  b.label = "standard";
  b.vectors.reserve(static_cast<std::size_t>(count));
  for (Index k = 1; k <= count; ++k) b.vectors.push_back(FiniteVector::unit(k));
  return b;
}

double Basis::worst_gram_defect() const {
  double worst = 0.0;
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    for (std::size_t j = i; j < vectors.size(); ++j) {
      const Complex g = FiniteVector::dot(vectors[i], vectors[j]);
      const double target = i == j ? 1.0 : 0.0;
      worst = std::max(worst, std::abs(g - Complex(target)));
    }
  }
  return worst;
}

void Basis::validate(double tol) const {
  if (vectors.empty()) throw ValidationError("Basis: no vectors");
  const double defect = worst_gram_defect();
  if (defect > tol) {
    throw BasisError("Basis '" + label + "' failed orthonormality check", defect);
  }
}

SecondMomentEstimate mc_second_moment(const std::vector<const FiniteVector*>& vectors,
                                      const SpaceSpec& target,
                                      const GaussianDrawConfig& cfg) {
  cfg.validate();
  target.validate();
  CompactColumns compact(vectors);
  const std::int64_t per_batch = cfg.samples_per_batch();
  std::vector<double> batch_means;
  batch_means.reserve(static_cast<std::size_t>(cfg.batch_count));
  std::vector<Complex> scratch(compact.width, Complex(0.0));
  for (int b = 0; b < cfg.batch_count; ++b) {
    GaussianStream stream = cfg.batch_stream(b);
    double acc = 0.0;
    for (std::int64_t s = 0; s < per_batch; ++s) {
      std::fill(scratch.begin(), scratch.end(), Complex(0.0));
      for (const auto& col : compact.columns) {
        const double g = stream.next();
        for (const auto& [slot, v] : col) scratch[slot] += g * v;
      }
      acc += norm_sq_of_scratch(scratch, target);
    }
    batch_means.push_back(acc / static_cast<double>(per_batch));
  }
  return batch_mean_estimate(batch_means,
                             per_batch * static_cast<std::int64_t>(cfg.batch_count));
}

SecondMomentEstimate gamma_norm_sq(const ColumnOperator& op,
                                   const GaussianDrawConfig& cfg) {
  if (op.target().is_l2()) {
    SecondMomentEstimate est;
    est.value = op.column_norm_sq_sum();
    est.exact = true;
    return est;
  }
  return gamma_norm_sq_mc(op, cfg);
}

SecondMomentEstimate gamma_norm_sq_mc(const ColumnOperator& op,
                                      const GaussianDrawConfig& cfg) {
  std::vector<const FiniteVector*> vectors;
  vectors.reserve(op.columns().size());
  // One Gaussian per stored column, consumed in increasing column order; zero
  // columns draw nothing, which leaves the estimate unchanged.
  for (const auto& [k, col] : op.columns()) vectors.push_back(&col);
  return mc_second_moment(vectors, op.target(), cfg);
}

SecondMomentEstimate mixed_gaussian_sum_sq(const std::vector<const ColumnOperator*>& ops,
                                           const Basis& basis,
                                           const GaussianDrawConfig& cfg) {
  if (ops.size() != basis.vectors.size()) {
    throw ValidationError("mixed_gaussian_sum_sq: one operator per basis vector required");
  }
  if (ops.empty()) throw DomainError("mixed_gaussian_sum_sq: empty selection");
  basis.validate();
  const SpaceSpec& target = ops.front()->target();
  std::vector<FiniteVector> images;
  images.reserve(ops.size());
  for (std::size_t j = 0; j < ops.size(); ++j) {
    if (ops[j]->target().p != target.p) {
      throw ValidationError("mixed_gaussian_sum_sq: members map into different spaces");
    }
    images.push_back(ops[j]->apply(basis.vectors[j]));
  }
  if (target.is_l2()) {
    SecondMomentEstimate est;
    double s = 0.0;
    for (const FiniteVector& w : images) s += w.norm_sq_l2();
    est.value = s;
    est.exact = true;
    return est;
  }
  std::vector<const FiniteVector*> ptrs;
  ptrs.reserve(images.size());
  for (const FiniteVector& w : images) ptrs.push_back(&w);
  return mc_second_moment(ptrs, target, cfg);
}

double rademacher_sum_sq_exact(const std::vector<const FiniteVector*>& vectors,
                               const SpaceSpec& target) {
  const std::size_t n = vectors.size();
  if (n == 0) throw DomainError("rademacher_sum_sq_exact: empty selection");
  if (n > 12) {
    throw ValidationError(
        "rademacher_sum_sq_exact: enumeration capped at 12 vectors (4096 patterns)");
  }
  CompactColumns compact(vectors);
  std::vector<Complex> scratch(compact.width);
  double total = 0.0;
  const std::uint64_t patterns = 1ULL << n;
  for (std::uint64_t mask = 0; mask < patterns; ++mask) {
    std::fill(scratch.begin(), scratch.end(), Complex(0.0));
    for (std::size_t k = 0; k < n; ++k) {
      const double sign = (mask >> k) & 1 ? -1.0 : 1.0;
      for (const auto& [slot, v] : compact.columns[k]) scratch[slot] += sign * v;
    }
    total += norm_sq_of_scratch(scratch, target);
  }
  return total / static_cast<double>(patterns);
}

double gamma_abs_moment(double p) {
  if (!(p > 0.0) || p > 170.0) {
    throw DomainError("gamma_abs_moment: p must lie in (0, 170]");
  }
  return std::pow(2.0, p / 2.0) * std::tgamma((p + 1.0) / 2.0) / std::sqrt(M_PI);
}

}  // namespace gammarad
