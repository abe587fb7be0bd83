#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <string_view>

namespace divalg {

/// Exact rational number; GMP keeps it canonical (coprime, positive denominator).
using Rational = mpq_class;
using Integer = mpz_class;

/// Three-valued sign of an ordered-field element.
enum class Sign : int { Negative = -1, Zero = 0, Positive = 1 };

inline Sign sign_of(int s) noexcept {
  return s < 0 ? Sign::Negative : (s > 0 ? Sign::Positive : Sign::Zero);
}
inline Sign sign(const Rational& q) noexcept { return sign_of(sgn(q)); }
inline Sign negate(Sign s) noexcept { return static_cast<Sign>(-static_cast<int>(s)); }
inline int to_int(Sign s) noexcept { return static_cast<int>(s); }

Rational parse_rational(std::string_view text);
std::string to_string(const Rational& q);

/// Exact square root of q when q is the square of a rational.
std::optional<Rational> rational_sqrt(const Rational& q);

/// True when q = m^p for some rational m (exact integer root test).
bool is_rational_power(const Rational& q, unsigned long p);

}  // namespace divalg
