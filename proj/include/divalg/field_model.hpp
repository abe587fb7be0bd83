#pragma once

#include <concepts>
#include <string>
#include <string_view>

#include "divalg/puiseux.hpp"
#include "divalg/tower.hpp"

namespace divalg {

/**
 * An ordered euclidean field as seen by the quaternion layer. Elements use
 * their own +, −, * operators; the model supplies everything that needs a
 * precision or a policy: inverses, square roots, the order-valuation ring
 * V and its maximal ideal M, and the verification predicate.
 */
template <class M>
concept FieldModel = requires(const M& m, const typename M::Elem& a, const Rational& q) {
  { m.from_rational(q) } -> std::same_as<typename M::Elem>;
  { m.inv(a) } -> std::same_as<typename M::Elem>;
  { m.sqrt(a) } -> std::same_as<typename M::Elem>;
  { m.sqrt_nonneg(a) } -> std::same_as<typename M::Elem>;
  { m.sign(a) } -> std::same_as<Sign>;
  { m.is_infinitesimal(a) } -> std::same_as<bool>;
  { m.is_bounded(a) } -> std::same_as<bool>;
  { m.residual_ok(a) } -> std::same_as<bool>;
  { m.rough(a) } -> std::same_as<Rational>;
  { m.to_string(a) } -> std::same_as<std::string>;
  { M::name() } -> std::convertible_to<std::string_view>;
};

/// The constructible reals: archimedean, so M = {0} and V = F.
struct ConstructibleModel {
  using Elem = TowerElement;

  static constexpr std::string_view name() { return "constructible"; }
  Elem from_rational(const Rational& q) const { return Elem(q); }
  Elem inv(const Elem& a) const { return Elem(1) / a; }
  Elem sqrt(const Elem& a) const { return divalg::sqrt(a); }
  Elem sqrt_nonneg(const Elem& a) const { return divalg::sqrt(a); }
  Sign sign(const Elem& a) const { return a.sign(); }
  bool is_infinitesimal(const Elem& a) const { return a.is_zero(); }
  bool is_bounded(const Elem&) const { return true; }
  /// Verification is exact: the residual must be zero.
  bool residual_ok(const Elem& a) const { return a.is_zero(); }
  /// A rational within 1/16 of a.
  Rational rough(const Elem& a) const { return approx(a, 4).lo; }
  std::string to_string(const Elem& a) const { return a.to_sexpr(); }
};

/// Puiseux series over the constructible reals with x > 0 infinitesimal.
struct PuiseuxModel {
  using Elem = PuiseuxElement;

  /// Relative order used for inverses and square roots.
  Dyadic order{16};
  /// Residuals must vanish to at least this order.
  Dyadic verification_order{8};

  static constexpr std::string_view name() { return "puiseux"; }
  Elem from_rational(const Rational& q) const { return Elem(q); }
  Elem inv(const Elem& a) const { return divalg::inv(a, order); }
  Elem sqrt(const Elem& a) const { return divalg::sqrt(a, order); }
  /// Like sqrt but accepts 0: an exact zero maps to 0, and a series that
  /// vanishes to order O maps to a zero known modulo x^(O/2).
  Elem sqrt_nonneg(const Elem& a) const {
    if (a.is_exact_zero()) return Elem();
    if (!a.is_certified_nonzero()) return Elem::from_terms({}, a.order()->half());
    return divalg::sqrt(a, order);
  }
  Sign sign(const Elem& a) const { return a.sign(); }
  bool is_infinitesimal(const Elem& a) const { return classify(a).infinitesimal; }
  bool is_bounded(const Elem& a) const { return classify(a).bounded; }
  bool residual_ok(const Elem& a) const {
    const Order v = a.lower_valuation();
    return !v || !(*v < verification_order);
  }
  /// The standard part (constant coefficient) of a bounded element, rounded.
  Rational rough(const Elem& a) const {
    if (!is_bounded(a)) throw Error(ErrorCode::PrecisionExhausted, "unbounded element has no standard part");
    for (const auto& t : a.terms()) {
      if (t.exp == Dyadic(0)) return approx(t.coeff, 4).lo;
    }
    return Rational(0);
  }
  std::string to_string(const Elem& a) const { return a.to_string(); }
};

template <FieldModel M>
bool is_zero(const M& m, const typename M::Elem& a) {
  return m.sign(a) == Sign::Zero;
}

/// Smallest integer n with a ≤ n, for a bounded element.
template <FieldModel M>
long ceil_of(const M& m, const typename M::Elem& a) {
  const Rational r = m.rough(a);
  Integer f;
  mpz_fdiv_q(f.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  for (long n = f.get_si() - 1;; ++n) {
    if (m.sign(a - m.from_rational(Rational(n))) != Sign::Positive) return n;
  }
}

}  // namespace divalg
