#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <unordered_map>
#include <vector>

#include "gammarad/column_operator.hpp"

namespace gammarad {

// A finite collection of operators with a common target space.  Members are
// deduplicated by content fingerprint, so constructions that revisit the same
// parameter (coincident grid points, repeated truncations) do not inflate the
// family.
class OperatorFamily {
 public:
  OperatorFamily() = default;
  explicit OperatorFamily(std::string label) : label_(std::move(label)) {}

  const std::string& label() const { return label_; }
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  const ColumnOperator& member(std::size_t i) const { return members_.at(i); }
  const std::vector<ColumnOperator>& members() const { return members_; }

  // Adds a member unless an identical one is already present; returns the
  // index of the member that represents it.
  std::size_t add(ColumnOperator op) {
    if (!members_.empty() && op.target().p != members_.front().target().p) {
      throw ValidationError("OperatorFamily: members must share a target space");
    }
    const std::uint64_t fp = op.fingerprint();
    if (auto it = fingerprint_to_index_.find(fp); it != fingerprint_to_index_.end()) {
      return it->second;
    }
    members_.push_back(std::move(op));
    fingerprint_to_index_.emplace(fp, members_.size() - 1);
    return members_.size() - 1;
  }

  bool contains_fingerprint(std::uint64_t fp) const {
    return fingerprint_to_index_.count(fp) > 0;
  }

  // True when every member of `other` also belongs to this family.
  bool contains_all_of(const OperatorFamily& other) const {
    for (const ColumnOperator& m : other.members_) {
      if (!contains_fingerprint(m.fingerprint())) return false;
    }
    return true;
  }

  // Largest domain truncation over the members: the index range a greedy
  // witness can draw from.
  Index max_domain_trunc() const {
    Index m = 0;
    for (const ColumnOperator& op : members_) m = std::max(m, op.domain_trunc());
    return m;
  }

  const SpaceSpec& target() const {
    if (members_.empty()) throw DomainError("OperatorFamily: empty family");
    return members_.front().target();
  }

 private:
  std::string label_;
  std::vector<ColumnOperator> members_;
  std::unordered_map<std::uint64_t, std::size_t> fingerprint_to_index_;
};

// The family {P_k : k = 1..n} of coordinate projections P_k = e_k (x) e_k on
// the truncated l2 space.  The canonical example of a family whose members
// are uniformly bounded while their Gaussian sums grow without bound.
OperatorFamily projection_family(Index n);

// The family {h (x) e_j : j = 1..n}: rank-one members x |-> [x, h] e_j.  Its
// Gaussian sums against the standard basis have second moment
// sum_k |[h, e_k]|^2, so tails vanish whenever h is square-summable.
OperatorFamily rank_one_family(const FiniteVector& h, Index n);

// Diagonal operator on the sup-norm space with slowly decaying weights
// e_k |-> u_k / sqrt(log(k+1)).  Its Gaussian sum has bounded second moment
// at every truncation while the weights are not square-summable against any
// reordering that would make the sum converge in a stronger sense; it is the
// standard obstruction to passing uniform bounds through increasing unions in
// spaces containing the null-sequence space.
ColumnOperator sup_space_log_decay_operator(Index n);

// The increasing chain F_m = {T o P_j : j = 1..m} of truncations of a single
// operator; used to probe permanence of bounds under nested unions.
std::vector<OperatorFamily> truncation_chain(const ColumnOperator& op, int depth);

// Two-sided multiplication {S o T o R : T in F}; bounds transform by at most
// the product of the outer operator norms.
OperatorFamily transformed_family(const ColumnOperator& s, const OperatorFamily& f,
                                  const ColumnOperator& r);

// One divergence block of the weighted shift-orbit construction.  The member
// operator is T = sum_m m^-2 T_m', where T_m' picks out a single far
// coordinate of a block of width 2^m, and the orbit runs over powers of the
// right shift chosen so that an entire block collapses onto that coordinate.
// Block n then contributes the exact Gaussian sum value 2^{n/2} / n^2, which
// is unbounded in n: orbits of a single operator under an isometry need not
// inherit any uniform bound.
struct ShiftBlockValue {
  int block = 0;                 // outer index n
  Index first_domain_index = 0;  // first k of the block
  Index block_size = 0;          // 2^n consecutive indices
  Index target_index = 0;        // the coordinate the shifted block lands on
  int first_shift_power = 0;     // powers decrease by 1 down to 0 across the block
  double value = 0.0;            // sqrt(E || sum_k g_k T S^{m_k} h_k ||^2)
};

std::vector<ShiftBlockValue> shift_orbit_divergence(int n_max);

}  // namespace gammarad
