#pragma once

#include <cctype>
#include <string>
#include <string_view>
#include <type_traits>

#include "divalg/error.hpp"
#include "divalg/field_model.hpp"
#include "divalg/quaternion.hpp"

namespace divalg {

/**
 * Parser for quaternion literals such as "1+j", "k", "1+(1+x)j",
 * "3/5*j - 4/5*k" or "sqrt(2)/2 + sqrt(1/2)*i" (EBNF in docs/formats.md).
 * Every subexpression is a quaternion of the standard algebra over the
 * model; juxtaposition multiplies. The symbol x is only available in the
 * Puiseux model, where x^e takes a dyadic exponent.
 */
template <FieldModel M>
class QuaternionLiteralParser {
 public:
  using Elem = typename M::Elem;
  using Q = Quaternion<Elem>;

  QuaternionLiteralParser(const QuaternionAlgebra<M>& alg, std::string_view text) : h_(alg), text_(text) {}

  Q parse() {
    Q v = sum();
    skip();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return v;
  }

 private:
  static constexpr bool kSeries = std::is_same_v<M, PuiseuxModel>;

  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorCode::ParseError, what + " at offset " + std::to_string(pos_) + " in \"" + std::string(text_) + "\"");
  }

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])) != 0) ++pos_;
  }
  bool peek(char c) {
    skip();
    return pos_ < text_.size() && text_[pos_] == c;
  }
  bool accept(char c) {
    if (!peek(c)) return false;
    ++pos_;
    return true;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }
  bool starts_atom() {
    skip();
    if (pos_ >= text_.size()) return false;
    const char c = text_[pos_];
    return std::isdigit(static_cast<unsigned char>(c)) != 0 || std::isalpha(static_cast<unsigned char>(c)) != 0 ||
           c == '(';
  }

  Q scalar(const Elem& e) const { return h_.scalar(e); }
  Q rational(const Rational& q) const { return scalar(h_.model().from_rational(q)); }

  Q sum() {
    bool negate = false;
    if (accept('-')) {
      negate = true;
    } else {
      (void)accept('+');
    }
    Q v = term();
    if (negate) v = h_.neg(v);
    for (;;) {
      if (accept('+')) {
        v = h_.add(v, term());
      } else if (accept('-')) {
        v = h_.sub(v, term());
      } else {
        return v;
      }
    }
  }

  Q term() {
    Q v = power();
    for (;;) {
      if (accept('*')) {
        v = h_.mul(v, power());
      } else if (accept('/')) {
        v = h_.mul(v, h_.inv(power()));
      } else if (starts_atom()) {
        v = h_.mul(v, power());
      } else {
        return v;
      }
    }
  }

  Q power() {
    skip();
    const bool is_x = kSeries && pos_ < text_.size() && text_[pos_] == 'x';
    if (is_x) {
      ++pos_;
      Dyadic e(1);
      if (accept('^')) e = exponent();
      if constexpr (kSeries) return scalar(PuiseuxElement::monomial(TowerElement(1), e));
    }
    Q base = atom();
    if (!accept('^')) return base;
    const Dyadic e = exponent();
    if (!e.is_integer()) fail("only x takes fractional exponents");
    long k = e.numerator().get_si();
    if (k < 0) {
      base = h_.inv(base);
      k = -k;
    }
    Q out = h_.unit_one();
    for (long n = 0; n < k; ++n) out = h_.mul(out, base);
    return out;
  }

  Dyadic exponent() {
    const bool paren = accept('(');
    const bool negative = accept('-');
    Rational q = integer();
    if (accept('/')) {
      const Rational d = integer();
      if (sgn(d) == 0) fail("zero denominator");
      q /= d;
    }
    if (paren) expect(')');
    if (negative) q = -q;
    try {
      return Dyadic::from_rational(q);
    } catch (const Error&) {
      fail("exponent must be dyadic");
    }
  }

  Rational integer() {
    skip();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])) != 0) ++pos_;
    if (start == pos_) fail("expected digits");
    return Rational(Integer(std::string(text_.substr(start, pos_ - start))));
  }

  /// Decimal literal: digits with an optional fractional part.
  Rational number() {
    Rational q = integer();
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])) != 0) ++pos_;
      if (start == pos_) fail("expected digits after '.'");
      Integer den = 1;
      for (std::size_t k = start; k < pos_; ++k) den *= 10;
      q += Rational(Integer(std::string(text_.substr(start, pos_ - start))), den);
      q.canonicalize();
    }
    return q;
  }

  Q atom() {
    skip();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Q v = sum();
      expect(')');
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) != 0) return rational(number());
    if (text_.substr(pos_, 4) == "sqrt") {
      pos_ += 4;
      expect('(');
      const Q v = sum();
      expect(')');
      const auto& m = h_.model();
      if (!(m.sign(v.s) == Sign::Zero && m.sign(v.t) == Sign::Zero && m.sign(v.u) == Sign::Zero)) {
        fail("sqrt of a non-scalar");
      }
      if (m.sign(v.r) == Sign::Negative) fail("sqrt of a negative scalar");
      return scalar(m.sqrt_nonneg(v.r));
    }
    switch (c) {
      case 'i': ++pos_; return h_.unit_i();
      case 'j': ++pos_; return h_.unit_j();
      case 'k': ++pos_; return h_.unit_k();
      case 'x': fail("x is only available in the Puiseux model");
      default: fail("unknown symbol");
    }
  }

  const QuaternionAlgebra<M>& h_;
  std::string_view text_;
  std::size_t pos_ = 0;
};

template <FieldModel M>
Quaternion<typename M::Elem> parse_quaternion(const QuaternionAlgebra<M>& alg, std::string_view text) {
  return QuaternionLiteralParser<M>(alg, text).parse();
}

/// A pure literal scaled onto the unit sphere. Raises ParseError for a
/// nonzero real part or a zero vector.
template <FieldModel M>
PureQuaternion<typename M::Elem> parse_unit_pure(const QuaternionAlgebra<M>& alg, std::string_view text) {
  const auto q = parse_quaternion(alg, text);
  const auto& m = alg.model();
  if (!m.residual_ok(q.r)) throw Error(ErrorCode::ParseError, "\"" + std::string(text) + "\" is not pure");
  const PureQuaternion<typename M::Elem> p{q.s, q.t, q.u};
  if (m.sign(alg.norm2(p)) == Sign::Zero) throw Error(ErrorCode::ParseError, "zero direction");
  return alg.is_unit(p) ? p : alg.normalize(p);
}

}  // namespace divalg
