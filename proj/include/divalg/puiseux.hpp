#pragma once

#include <string>
#include <vector>

#include "divalg/dyadic.hpp"
#include "divalg/error.hpp"
#include "divalg/tower.hpp"

namespace divalg {

struct PuiseuxTerm {
  Dyadic exp;
  TowerElement coeff;
};

/**
 * A truncated Puiseux series Σ cₑ·x^e with dyadic exponents, known modulo
 * x^O where O is the validity order. An order of +∞ means the value is
 * exact. All terms lie strictly below the order and have nonzero
 * coefficients; the exact zero is the empty series with order +∞.
 */
class PuiseuxElement {
 public:
  PuiseuxElement() = default;
  PuiseuxElement(long v) : PuiseuxElement(TowerElement(v)) {}  // NOLINT(google-explicit-constructor)
  PuiseuxElement(const Rational& q) : PuiseuxElement(TowerElement(q)) {}  // NOLINT(google-explicit-constructor)
  PuiseuxElement(const TowerElement& c);  // NOLINT(google-explicit-constructor)

  static PuiseuxElement monomial(const TowerElement& coeff, const Dyadic& exp);
  /// The infinitesimal x itself.
  static PuiseuxElement x() { return monomial(TowerElement(1), Dyadic(1)); }
  /// Collects like exponents, drops zero coefficients and terms at or above `order`.
  static PuiseuxElement from_terms(std::vector<PuiseuxTerm> terms, Order order);

  const std::vector<PuiseuxTerm>& terms() const noexcept { return terms_; }
  const Order& order() const noexcept { return order_; }
  bool is_exact() const noexcept { return !order_.has_value(); }
  bool is_exact_zero() const noexcept { return terms_.empty() && !order_; }
  /// True when a nonzero leading term is certified below the order.
  bool is_certified_nonzero() const noexcept { return !terms_.empty(); }

  /// Lowers the validity order to min(order, o).
  PuiseuxElement truncated(const Order& o) const;

  /// Leading exponent. ZeroValuation for the exact zero; PrecisionExhausted when
  /// no term is certified below the order.
  Dyadic valuation() const;
  /// Leading exponent if certified, otherwise the order (a lower bound for v).
  Order lower_valuation() const;
  Sign sign() const;

  PuiseuxElement operator-() const;
  friend PuiseuxElement operator+(const PuiseuxElement& a, const PuiseuxElement& b);
  friend PuiseuxElement operator-(const PuiseuxElement& a, const PuiseuxElement& b);
  friend PuiseuxElement operator*(const PuiseuxElement& a, const PuiseuxElement& b);

  /// `c1*x^(e1) + c2*x^(e2) (mod x^O)` with s-expression coefficients.
  std::string to_string() const;

 private:
  std::vector<PuiseuxTerm> terms_;
  Order order_;
};

enum class PuiseuxOp { Add, Sub, Mul };
PuiseuxElement px_arith(PuiseuxOp op, const PuiseuxElement& a, const PuiseuxElement& b);

/// Product with all terms at or above `cap` discarded (order ≤ cap).
PuiseuxElement mul_truncated(const PuiseuxElement& a, const PuiseuxElement& b, const Order& cap);

/// The target order is relative to the leading exponent of the result:
/// inv(a) is returned modulo x^R with R = min(target − v(a), O_a − 2·v(a)), so
/// a·inv(a) ≡ 1 modulo x^(R + v(a)). Exact monomials invert exactly.
PuiseuxElement inv(const PuiseuxElement& a, const Dyadic& target_order);

/// Returned modulo x^R with R = min(v(a)/2 + target, O_a − v(a)/2), so
/// result² ≡ a modulo x^(R + v(a)/2). Exact monomials have exact roots.
/// Requires sign(a) = +1.
PuiseuxElement sqrt(const PuiseuxElement& a, const Dyadic& target_order);

inline Dyadic valuation(const PuiseuxElement& a) { return a.valuation(); }
inline Sign sign(const PuiseuxElement& a) { return a.sign(); }

struct Classification {
  bool infinitesimal;
  bool bounded;
};
Classification classify(const PuiseuxElement& a);

std::string to_string(const PuiseuxElement& a);

struct PrecisionPolicy {
  Dyadic default_order{16};
  Dyadic max_order{256};
};

/// Calls f(order) with order = default, 2·default, … up to max_order while it
/// throws PrecisionExhausted; rethrows at the last attempt.
template <class F>
auto with_precision_retry(const PrecisionPolicy& policy, F&& f) -> decltype(f(Dyadic{})) {
  Dyadic order = policy.default_order;
  for (;;) {
    try {
      return f(order);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::PrecisionExhausted || !(order < policy.max_order)) throw;
    }
    order = order + order;
    if (policy.max_order < order) order = policy.max_order;
  }
}

}  // namespace divalg
