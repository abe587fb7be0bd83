#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "divalg/error.hpp"
#include "divalg/finite_group.hpp"

namespace divalg {

/// The unramified extension of ℚ_ℓ of the given degree, truncated to
/// ℤ/ℓ^N[t]/(f). The modulus f is monic with coefficients in [0, ℓ) and its
/// reduction is primitive: t mod ℓ generates the residue field's unit group.
struct UnramifiedField {
  long ell = 2;
  long degree = 1;
  long precision = 20;
  std::vector<long> modulus;  // low to high, leading 1 included

  long residue_size() const;
};

/// Coefficients of 1, t, …, t^{D−1} in [0, ℓ^N).
using LElem = std::vector<mpz_class>;

/// Σ cᵢ·xⁱ for i = 0, …, n−1 with cᵢ integral in L.
struct CyclicAlgElement {
  std::vector<LElem> coeffs;
};

/// v = numerator / denominator with denominator = n.
struct ValueFrac {
  long numerator = 0;
  long denominator = 1;
};

/**
 * The cyclic algebra D = (L/F, σ, ℓ): L unramified of degree n over F,
 * F unramified of degree m over ℚ_ℓ, σ the Frobenius of L/F and xⁿ = ℓ.
 * L is stored over ℚ_ℓ directly (degree D = m·n); F is its σ-fixed field.
 * Elements of D are kept in the order ⊕ V_L·xⁱ modulo ℓ^N, which is a ring,
 * so products are exact there and valuations below N are certified.
 */
class CyclicAlgebra {
 public:
  static constexpr long kMaxResidueSize = 1L << 22;

  CyclicAlgebra(long ell, long m, long n, long precision);

  long ell() const noexcept { return ell_; }
  long m() const noexcept { return m_; }
  long n() const noexcept { return n_; }
  long precision() const noexcept { return prec_; }
  long q() const noexcept { return q_; }
  const UnramifiedField& base_field() const noexcept { return base_; }
  const UnramifiedField& field() const noexcept { return top_; }
  /// σ(t), the Hensel-lifted root of f congruent to t^q.
  const LElem& frobenius_image() const noexcept { return theta_; }

  // Arithmetic in L.
  LElem l_zero() const;
  LElem l_from(long v) const;
  LElem l_gen() const;
  LElem l_add(const LElem& a, const LElem& b) const;
  LElem l_sub(const LElem& a, const LElem& b) const;
  LElem l_mul(const LElem& a, const LElem& b) const;
  LElem l_pow(LElem a, unsigned long e) const;
  /// Inverse of a unit of V_L.
  LElem l_inv(const LElem& a) const;
  bool l_is_zero(const LElem& a) const;
  /// ℓ-adic valuation, or precision() when a vanishes to precision.
  long l_valuation(const LElem& a) const;
  LElem sigma(const LElem& a) const;
  LElem sigma_pow(LElem a, long k) const;
  /// Σ σⁱ(a), an element of F.
  LElem trace_to_base(const LElem& a) const;
  /// Reduction mod ℓ as an index Σ rᵢ·ℓⁱ of the residue field.
  long residue_index(const LElem& a) const;
  /// k with residue(a) = t̄^k, for units a.
  long dlog(const LElem& a) const;
  LElem random_l(gmp_randclass& rng) const;

  // Arithmetic in D.
  CyclicAlgElement from_l(const LElem& c) const;
  CyclicAlgElement x() const;
  CyclicAlgElement mul(const CyclicAlgElement& a, const CyclicAlgElement& b) const;
  CyclicAlgElement add(const CyclicAlgElement& a, const CyclicAlgElement& b) const;
  bool equal(const CyclicAlgElement& a, const CyclicAlgElement& b) const;
  ValueFrac valuation(const CyclicAlgElement& a) const;
  /// Image in D*/F*(1 + M_D) ≅ [L̄*/F̄*] ⋊ ℤ/n as u + M·i, where the leading
  /// term is c·xⁱ, u = dlog(c/ℓ^{v(c)}) mod M and M = (qⁿ − 1)/(q − 1).
  int quotient_image(const CyclicAlgElement& a) const;
  SemidirectZnZm quotient_group() const;
  /// Nonzero element with coefficient valuations up to max_shift.
  CyclicAlgElement random_element(gmp_randclass& rng, long max_shift = 2) const;

 private:
  LElem reduce(std::vector<mpz_class> poly) const;
  LElem eval_modulus(const LElem& a) const;
  LElem eval_modulus_derivative(const LElem& a) const;

  long ell_, m_, n_, prec_, q_, dim_;
  mpz_class mod_;  // ℓ^N
  UnramifiedField base_, top_;
  std::vector<mpz_class> f_;
  LElem theta_;
  std::vector<LElem> theta_powers_;
  std::vector<int> dlog_table_;
};

CyclicAlgebra ca_make(long ell, long m, long n, long precision = 20);

/// The primitive monic polynomial of the given degree over 𝔽_ℓ that comes
/// first when coefficient vectors (c_{D−1}, …, c₀) are ordered
/// lexicographically.
std::vector<long> primitive_modulus(long ell, long degree);

/// [ℤ/M] ⋊ ℤ/n with M = (qⁿ − 1)/(q − 1), acting by multiplication by q.
SemidirectZnZm ca_quotient_group(long q, long n);

struct CaReport {
  long q = 0, n = 0, ell = 0, m = 0, precision = 0;
  long unit_part_order = 0;  // M
  long order = 0;
  bool order_ok = false;
  std::optional<bool> dihedral;  // only claimed for n = 2
  std::vector<SubgroupRecord> maximal;
  /// Every odd prime p | q + 1 has a non-normal maximal subgroup of index p.
  bool nonnormal_ok = true;
  long samples = 0;
  bool images_generate = false;
  bool homomorphism_ok = false;

  bool ok() const { return order_ok && dihedral.value_or(true) && nonnormal_ok && images_generate && homomorphism_ok; }
  long count_maximal(long index, bool normal) const;
};

CaReport ca_report(long q, long n, long precision = 20, std::uint64_t seed = 1, long samples = 2000);

}  // namespace divalg
