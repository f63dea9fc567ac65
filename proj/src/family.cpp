#include "gammarad/family.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace gammarad {

OperatorFamily projection_family(Index n) {
  if (n < 1) throw ValidationError("projection_family: size must be positive");
  SpaceSpec target{2.0, n, ScalarField::kComplex};
  OperatorFamily family("projection");
  for (Index k = 1; k <= n; ++k) {
    ColumnOperator pk(target, n);
    pk.set_column(k, FiniteVector::unit(k));
    family.add(std::move(pk));
  }
  return family;
}

OperatorFamily rank_one_family(const FiniteVector& h, Index n) {
  if (n < 1) throw ValidationError("rank_one_family: size must be positive");
  if (h.empty()) throw DomainError("rank_one_family: h must be nonzero");
  const Index domain = std::max(h.max_index(), n);
  SpaceSpec target{2.0, n, ScalarField::kComplex};
  OperatorFamily family("rank-one");
  // Member j maps x to [x, h] e_j, so its k-th column is conj(h_k) e_j.
  for (Index j = 1; j <= n; ++j) {
    ColumnOperator tj(target, domain);
    for (const auto& [k, hk] : h.entries()) {
      tj.set_column(k, FiniteVector::unit(j).scaled(std::conj(hk)));
    }
    family.add(std::move(tj));
  }
  return family;
}

ColumnOperator sup_space_log_decay_operator(Index n) {
  if (n < 1) throw ValidationError("sup_space_log_decay_operator: size must be positive");
  SpaceSpec target{std::numeric_limits<double>::infinity(), n, ScalarField::kReal};
  ColumnOperator op(target, n);
  for (Index k = 1; k <= n; ++k) {
    const double c = 1.0 / std::sqrt(std::log(static_cast<double>(k) + 1.0));
    op.set_column(k, FiniteVector::unit(k).scaled(Complex(c)));
  }
  return op;
}

std::vector<OperatorFamily> truncation_chain(const ColumnOperator& op, int depth) {
  if (depth < 1 || depth > static_cast<int>(op.domain_trunc())) {
    throw ValidationError("truncation_chain: depth must lie in [1, domain truncation]");
  }
  std::vector<OperatorFamily> chain;
  chain.reserve(static_cast<std::size_t>(depth));
  for (int m = 1; m <= depth; ++m) {
    OperatorFamily family("truncation-chain-" + std::to_string(m));
    for (int j = 1; j <= m; ++j) {
      // T o P_j keeps the first j columns of T and zeroes the rest.
      ColumnOperator member(op.target(), op.domain_trunc());
      for (const auto& [k, col] : op.columns()) {
        if (k <= j) member.set_column(k, col);
      }
      family.add(std::move(member));
    }
    chain.push_back(std::move(family));
  }
  return chain;
}

OperatorFamily transformed_family(const ColumnOperator& s, const OperatorFamily& f,
                                  const ColumnOperator& r) {
  if (f.empty()) throw DomainError("transformed_family: empty family");
  OperatorFamily out("transformed-" + f.label());
  for (const ColumnOperator& t : f.members()) {
    out.add(s.compose_after(t.compose_after(r)));
  }
  return out;
}

std::vector<ShiftBlockValue> shift_orbit_divergence(int n_max) {
  if (n_max < 2 || n_max > 24) {
    throw ValidationError("shift_orbit_divergence: block range must lie in [2, 24]");
  }
  // Block boundaries M_1 = 1, M_{m+1} = M_m + m, i.e. M_m = 1 + m(m-1)/2.
  auto block_start = [](Index m) -> Index { return 1 + m * (m - 1) / 2; };

  // The member operator has a single nonzero column per block width 2^m: the
  // column at M_{2^m + 1} maps to the scalar target with weight m^-2.
  std::unordered_map<Index, double> weight_at;
  for (int m = 1; m <= n_max; ++m) {
    const Index width = Index(1) << m;
    weight_at[block_start(width + 1)] = 1.0 / (static_cast<double>(m) * m);
  }

  std::vector<ShiftBlockValue> out;
  out.reserve(static_cast<std::size_t>(n_max - 1));
  for (int n = 2; n <= n_max; ++n) {
    const Index width = Index(1) << n;
    const Index lo = block_start(width) + 1;      // first k of the block
    const Index target = block_start(width + 1);  // where every shift lands
    // k = lo + (j-1) is shifted by width - j, so every image is the constant
    // index lo + width - 1 = target and each of the 2^n summands contributes
    // the same squared member weight.  Scaling by the exact power of two keeps
    // the block value within an ulp of its closed form.
    const auto it = weight_at.find(target);
    const double w = it != weight_at.end() ? it->second : 0.0;
    const double second_moment = std::ldexp(w * w, n);
    ShiftBlockValue row;
    row.block = n;
    row.first_domain_index = lo;
    row.block_size = width;
    row.target_index = target;
    row.first_shift_power = static_cast<int>(width - 1);
    row.value = std::sqrt(second_moment);
    out.push_back(row);
  }
  return out;
}

}  // namespace gammarad
