#include "divalg/rational.hpp"

#include "divalg/error.hpp"

namespace divalg {

std::string_view error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::NegativeRadicand: return "NegativeRadicand";
    case ErrorCode::NonPositiveRadicand: return "NonPositiveRadicand";
    case ErrorCode::ZeroInverse: return "ZeroInverse";
    case ErrorCode::ZeroValuation: return "ZeroValuation";
    case ErrorCode::PrecisionExhausted: return "PrecisionExhausted";
    case ErrorCode::NotInvertible: return "NotInvertible";
    case ErrorCode::NotDivision: return "NotDivision";
    case ErrorCode::WrongAlgebra: return "WrongAlgebra";
    case ErrorCode::WrongModel: return "WrongModel";
    case ErrorCode::NotUnit: return "NotUnit";
    case ErrorCode::FrameMismatch: return "FrameMismatch";
    case ErrorCode::NotSpecialOrthogonal: return "NotSpecialOrthogonal";
    case ErrorCode::LatitudeMismatch: return "LatitudeMismatch";
    case ErrorCode::PoleDegenerate: return "PoleDegenerate";
    case ErrorCode::YInG: return "YInG";
    case ErrorCode::UnboundGenerator: return "UnboundGenerator";
    case ErrorCode::GroupTooLarge: return "GroupTooLarge";
    case ErrorCode::BadAction: return "BadAction";
    case ErrorCode::NotPrime: return "NotPrime";
    case ErrorCode::NoIrreducible: return "NoIrreducible";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw Error(ErrorCode::ParseError, "empty rational");
  auto slash = s.find('/');
  auto check_digits = [&](std::string_view part, bool allow_sign) {
    std::size_t start = 0;
    if (allow_sign && !part.empty() && (part[0] == '-' || part[0] == '+')) start = 1;
    if (start == part.size()) throw Error(ErrorCode::ParseError, "bad rational '" + s + "'");
    for (std::size_t i = start; i < part.size(); ++i) {
      if (part[i] < '0' || part[i] > '9') throw Error(ErrorCode::ParseError, "bad rational '" + s + "'");
    }
  };
  std::string num = s.substr(0, slash);
  if (!num.empty() && num[0] == '+') num.erase(0, 1);
  check_digits(num, true);
  Rational q;
  if (slash == std::string::npos) {
    q = Rational(Integer(num), 1);
  } else {
    std::string den = s.substr(slash + 1);
    check_digits(den, false);
    Integer d(den);
    if (d == 0) throw Error(ErrorCode::DivisionByZero, "zero denominator in '" + s + "'");
    q = Rational(Integer(num), d);
    q.canonicalize();
  }
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

std::optional<Rational> rational_sqrt(const Rational& q) {
  if (sgn(q) < 0) return std::nullopt;
  if (sgn(q) == 0) return Rational(0);
  const Integer& n = q.get_num();
  const Integer& d = q.get_den();
  if (mpz_perfect_square_p(n.get_mpz_t()) == 0 || mpz_perfect_square_p(d.get_mpz_t()) == 0) {
    return std::nullopt;
  }
  Integer rn = sqrt(n);
  Integer rd = sqrt(d);
  return Rational(rn, rd);
}

bool is_rational_power(const Rational& q, unsigned long p) {
  if (p == 0) return sgn(q) == 1 && q == 1;
  auto int_root = [p](const Integer& v) {
    Integer r;
    Integer abs_v = abs(v);
    int exact = mpz_root(r.get_mpz_t(), abs_v.get_mpz_t(), p);
    return exact != 0;
  };
  if (sgn(q) < 0 && p % 2 == 0) return false;
  return int_root(q.get_num()) && int_root(q.get_den());
}

}  // namespace divalg
