#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "divalg/error.hpp"
#include "divalg/field_model.hpp"
#include "divalg/finite_group.hpp"
#include "divalg/quaternion.hpp"

namespace divalg {

/// ℤ/n₁ × … × ℤ/n_r, elements encoded in mixed radix (first factor fastest).
class FiniteAbelianGroup {
 public:
  static constexpr long kDefaultCap = 10'000;

  explicit FiniteAbelianGroup(std::vector<long> cyclic_orders, long cap = kDefaultCap);

  const std::vector<long>& cyclic_orders() const noexcept { return orders_; }
  long order() const noexcept { return size_; }
  long exponent() const;
  int add(int a, int b) const;
  int neg(int a) const;
  int times(long k, int a) const;
  /// k·A as a subset.
  ElementSet multiple(long k) const;
  /// {a : k·a = 0}.
  ElementSet torsion(long k) const;
  /// The subgroup generated by a subset.
  ElementSet span(const ElementSet& s) const;
  std::string to_string() const;

 private:
  std::vector<int> digits(int a) const;
  int from_digits(const std::vector<int>& d) const;

  std::vector<long> orders_;
  long size_ = 1;
};

/// Every abelian group of order n up to isomorphism, as products of cyclic
/// groups of prime-power order (one partition per primary part).
std::vector<FiniteAbelianGroup> abelian_groups_of_order(long n);

struct Lemma2Result {
  std::vector<SubgroupRecord> maximal_subgroups;
  bool all_prime_index = true;
  /// A nontrivial ⟹ at least one maximal subgroup, and all have prime index.
  bool holds = true;
};

/// Exhaustive subgroup search; maximality is decided on the full lattice.
Lemma2Result ck_lemma2_finite(const FiniteAbelianGroup& a, const LatticeOptions& opt = {});

struct Equivalence {
  bool lhs = false;
  bool rhs = false;
  bool equivalent() const { return lhs == rhs; }
};

/// lhs: n·A = nk·A for 1 ≤ k ≤ k_max (k_max = 0 means exp(A), which
/// decides every k; see docs/formats.md). rhs: pᵢ^{rᵢ}·A = pᵢ^{rᵢ+1}·A for
/// each pᵢ^{rᵢ} ∥ n, and q·A = A for every other prime q.
Equivalence ck_lemma11(const FiniteAbelianGroup& a, long n, long k_max = 0);

/// F* modeled as the cyclic group ℤ/m. lhs: p^r-th powers equal
/// p^{r+1}-th powers. rhs: μ_{p^r} together with the p-th powers is all.
Equivalence ck_lemma12(long m, long p, long r);

struct MuDegree {
  long degree = 0;
  bool mu_in_F = false;
};

/// [𝔽_p(μ_q) : 𝔽_p] = ord_q(p); μ_q lies in ⋃_{p∤i} L_i iff p ∤ degree.
MuDegree ck_mu_in_limit_field(long p, long q);

struct Ck1Report {
  long t = 1;
  long order_lower_bound = 1;
  bool exact_for_ideal_residue = true;
  std::string basis_note;
};

/// |Γ/tΓ| for Γ = ℤ[1/2], the value group of the series field.
Ck1Report ck_mt_order(long t);

enum class ModelKind { Constructible, Puiseux };

struct NormalPrime {
  long p = 0;
  std::string witness;
  std::string certificate;
};

/// Odd primes p ≤ bound with a certified normal maximal subgroup of index p.
std::vector<NormalPrime> ck_normal_primes(ModelKind model, long bound = 97);

bool is_prime(long n);

/// CK₁(M_t) of (a, b) over a euclidean model is trivial for t ∈ {1, 2}: a
/// division algebra (a, b) has a, b < 0 and removing the square factors
/// −a, −b turns it into (−1, −1).
template <FieldModel M>
bool ck_quaternion_trivial(const M& m, const typename M::Elem& a, const typename M::Elem& b, int t) {
  if (t != 1 && t != 2) throw std::invalid_argument("t must be 1 or 2");
  const QuaternionAlgebra<M> alg(m, a, b);
  if (!alg.is_division()) throw Error(ErrorCode::NotDivision, "(a, b) is split");
  const auto minus_one = m.from_rational(Rational(-1));
  const auto ra = m.sqrt(-a);
  const auto rb = m.sqrt(-b);
  return m.residual_ok(a * m.inv(ra * ra) - minus_one) && m.residual_ok(b * m.inv(rb * rb) - minus_one);
}

}  // namespace divalg
