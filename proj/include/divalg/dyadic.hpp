#pragma once

#include <compare>
#include <optional>
#include <string>

#include "divalg/rational.hpp"

namespace divalg {

/// A rational number whose reduced denominator is a power of two: ℤ[1/2].
class Dyadic {
 public:
  Dyadic() = default;
  Dyadic(long v) : q_(v) {}  // NOLINT(google-explicit-constructor)
  /// num / 2^shift.
  Dyadic(const Integer& num, unsigned long shift);

  /// Throws ParseError unless the reduced denominator is a power of two.
  static Dyadic from_rational(const Rational& q);
  static Dyadic parse(std::string_view text);

  const Rational& value() const noexcept { return q_; }
  const Integer& numerator() const noexcept { return q_.get_num(); }
  /// Exponent k of the denominator 2^k.
  unsigned long shift() const;
  bool is_integer() const { return q_.get_den() == 1; }
  int sign() const { return sgn(q_); }

  Dyadic half() const { return Dyadic(Rational(q_ / 2)); }

  Dyadic operator-() const { return Dyadic(Rational(-q_)); }
  Dyadic& operator+=(const Dyadic& o) { q_ += o.q_; return *this; }
  Dyadic& operator-=(const Dyadic& o) { q_ -= o.q_; return *this; }

  friend Dyadic operator+(Dyadic a, const Dyadic& b) { return a += b; }
  friend Dyadic operator-(Dyadic a, const Dyadic& b) { return a -= b; }
  friend Dyadic operator*(const Dyadic& a, const Dyadic& b) { return Dyadic(Rational(a.q_ * b.q_)); }

  friend bool operator==(const Dyadic& a, const Dyadic& b) { return a.q_ == b.q_; }
  friend std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b) {
    const int c = cmp(a.q_, b.q_);
    return c < 0 ? std::strong_ordering::less : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  std::string to_string() const { return q_.get_str(); }

 private:
  explicit Dyadic(Rational q) : q_(std::move(q)) {}
  Rational q_;
};

/// A validity order: a Dyadic, or +∞ (std::nullopt) for exact values.
using Order = std::optional<Dyadic>;

inline bool order_less(const Order& a, const Order& b) {
  if (!a) return false;
  if (!b) return true;
  return *a < *b;
}
inline Order order_min(const Order& a, const Order& b) { return order_less(b, a) ? b : a; }
inline Order order_add(const Order& a, const Order& b) {
  if (!a || !b) return std::nullopt;
  return *a + *b;
}
inline std::string order_to_string(const Order& o) { return o ? o->to_string() : std::string("inf"); }

}  // namespace divalg
