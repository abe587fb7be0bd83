#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "divalg/rational.hpp"

namespace divalg {

struct TowerLevel;
using LevelPtr = std::shared_ptr<const TowerLevel>;

/**
 * An ordered list of adjoined square roots √r₁, …, √r_k.
 *
 * Levels are ordered by creation id and the list is closed: the radicand of
 * every level only involves levels that appear earlier in the same list.
 * Contexts are values; extending or merging produces a new context.
 */
class TowerContext {
 public:
  TowerContext() = default;

  std::size_t size() const noexcept { return levels_.size(); }
  bool empty() const noexcept { return levels_.empty(); }
  const std::vector<LevelPtr>& levels() const noexcept { return levels_; }

  /// Union of both level lists. No redundancy check between radicands.
  static TowerContext merged(const TowerContext& a, const TowerContext& b);

  /// The first n levels (always closed).
  TowerContext prefix(std::size_t n) const;

  friend bool operator==(const TowerContext& a, const TowerContext& b) noexcept;

 private:
  friend class TowerElement;
  friend struct TowerAccess;
  explicit TowerContext(std::vector<LevelPtr> levels) : levels_(std::move(levels)) {}

  std::vector<LevelPtr> levels_;
};

/**
 * A constructible real number: an element of an iterated real quadratic
 * extension of ℚ in which every adjoined √rᵢ is the positive root.
 *
 * The representation is a dense binary tree stored flat: coefficient index
 * bit t selects the factor √r_t. It is not canonical; equality is decided by
 * the exact sign of the difference.
 */
class TowerElement {
 public:
  TowerElement() : coeffs_(1) {}
  TowerElement(long v) : coeffs_{Rational(v)} {}  // NOLINT(google-explicit-constructor)
  TowerElement(const Rational& q) : coeffs_{q} {}  // NOLINT(google-explicit-constructor)

  const TowerContext& context() const noexcept { return ctx_; }
  std::size_t depth() const noexcept { return ctx_.size(); }
  const std::vector<Rational>& coefficients() const noexcept { return coeffs_; }

  bool is_rational() const noexcept { return ctx_.empty(); }
  /// Precondition: is_rational().
  const Rational& rational_value() const { return coeffs_.front(); }
  bool is_syntactic_zero() const noexcept;

  Sign sign() const;
  bool is_zero() const { return sign() == Sign::Zero; }

  TowerElement operator-() const;
  TowerElement& operator+=(const TowerElement& o) { return *this = *this + o; }
  TowerElement& operator-=(const TowerElement& o) { return *this = *this - o; }
  TowerElement& operator*=(const TowerElement& o) { return *this = *this * o; }
  TowerElement& operator/=(const TowerElement& o) { return *this = *this / o; }

  friend TowerElement operator+(const TowerElement& a, const TowerElement& b);
  friend TowerElement operator-(const TowerElement& a, const TowerElement& b);
  friend TowerElement operator*(const TowerElement& a, const TowerElement& b);
  friend TowerElement operator/(const TowerElement& a, const TowerElement& b);

  friend bool operator==(const TowerElement& a, const TowerElement& b) { return (a - b).is_zero(); }
  friend bool operator<(const TowerElement& a, const TowerElement& b) { return (a - b).sign() == Sign::Negative; }
  friend bool operator>(const TowerElement& a, const TowerElement& b) { return b < a; }
  friend bool operator<=(const TowerElement& a, const TowerElement& b) { return !(b < a); }
  friend bool operator>=(const TowerElement& a, const TowerElement& b) { return !(a < b); }

  /// Nested s-expression, see docs/formats.md.
  std::string to_sexpr() const;
  static TowerElement from_sexpr(std::string_view text);

  double to_double() const;

 private:
  friend struct TowerAccess;
  TowerElement(TowerContext ctx, std::vector<Rational> coeffs);

  TowerContext ctx_;
  std::vector<Rational> coeffs_;  // size 2^depth
};

enum class ArithOp { Add, Sub, Mul, Div };

TowerElement arith(ArithOp op, const TowerElement& a, const TowerElement& b);

Sign sign(const TowerElement& a);
TowerElement abs(const TowerElement& a);

/// Nonnegative square root; adjoins a new level when the bounded square test
/// fails. Throws NegativeRadicand for a < 0.
TowerElement sqrt(const TowerElement& a);

/// Bounded-effort square test: returns s ≥ 0 with s² = a when one is found
/// inside a's own tower.
std::optional<TowerElement> exact_sqrt(const TowerElement& a);

struct RationalInterval {
  Rational lo;
  Rational hi;
};

/// Enclosure lo ≤ a ≤ hi with hi − lo ≤ 2^−k.
RationalInterval approx(const TowerElement& a, unsigned k);

std::string to_string(const TowerElement& a);

}  // namespace divalg
