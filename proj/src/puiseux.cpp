#include "divalg/puiseux.hpp"

#include <algorithm>
#include <map>

namespace divalg {

Dyadic::Dyadic(const Integer& num, unsigned long shift) {
  Integer den = Integer(1) << shift;
  q_ = Rational(num, den);
  q_.canonicalize();
}

Dyadic Dyadic::from_rational(const Rational& q) {
  if (mpz_popcount(q.get_den_mpz_t()) != 1) throw Error(ErrorCode::ParseError, q.get_str() + " is not dyadic");
  return Dyadic(q);
}

Dyadic Dyadic::parse(std::string_view text) { return from_rational(parse_rational(text)); }

unsigned long Dyadic::shift() const { return mpz_scan1(q_.get_den_mpz_t(), 0); }

PuiseuxElement::PuiseuxElement(const TowerElement& c) {
  if (!c.is_zero()) terms_.push_back({Dyadic(0), c});
}

PuiseuxElement PuiseuxElement::monomial(const TowerElement& coeff, const Dyadic& exp) {
  PuiseuxElement out;
  if (!coeff.is_zero()) out.terms_.push_back({exp, coeff});
  return out;
}

PuiseuxElement PuiseuxElement::from_terms(std::vector<PuiseuxTerm> terms, Order order) {
  std::map<Dyadic, TowerElement> acc;
  for (auto& t : terms) {
    if (order && !(t.exp < *order)) continue;
    auto [it, inserted] = acc.try_emplace(t.exp, t.coeff);
    if (!inserted) it->second += t.coeff;
  }
  PuiseuxElement out;
  out.order_ = std::move(order);
  for (auto& [e, c] : acc) {
    if (!c.is_zero()) out.terms_.push_back({e, std::move(c)});
  }
  return out;
}

PuiseuxElement PuiseuxElement::truncated(const Order& o) const {
  if (!order_less(o, order_)) return *this;
  PuiseuxElement out;
  out.order_ = o;
  for (const auto& t : terms_) {
    if (t.exp < *o) out.terms_.push_back(t);
  }
  return out;
}

Dyadic PuiseuxElement::valuation() const {
  if (!terms_.empty()) return terms_.front().exp;
  if (!order_) throw Error(ErrorCode::ZeroValuation, "valuation of zero");
  throw Error(ErrorCode::PrecisionExhausted, "no term certified below order " + order_->to_string());
}

Order PuiseuxElement::lower_valuation() const {
  if (!terms_.empty()) return terms_.front().exp;
  return order_;
}

Sign PuiseuxElement::sign() const {
  if (!terms_.empty()) return terms_.front().coeff.sign();
  if (!order_) return Sign::Zero;
  throw Error(ErrorCode::PrecisionExhausted, "sign undetermined below order " + order_->to_string());
}

PuiseuxElement PuiseuxElement::operator-() const {
  PuiseuxElement out = *this;
  for (auto& t : out.terms_) t.coeff = -t.coeff;
  return out;
}

PuiseuxElement operator+(const PuiseuxElement& a, const PuiseuxElement& b) {
  std::vector<PuiseuxTerm> terms = a.terms_;
  terms.insert(terms.end(), b.terms_.begin(), b.terms_.end());
  return PuiseuxElement::from_terms(std::move(terms), order_min(a.order_, b.order_));
}

PuiseuxElement operator-(const PuiseuxElement& a, const PuiseuxElement& b) { return a + (-b); }

PuiseuxElement mul_truncated(const PuiseuxElement& a, const PuiseuxElement& b, const Order& cap) {
  if (a.is_exact_zero() || b.is_exact_zero()) return PuiseuxElement();
  Order order = order_min(order_add(a.order(), b.lower_valuation()), order_add(b.order(), a.lower_valuation()));
  order = order_min(order, cap);
  std::vector<PuiseuxTerm> terms;
  for (const auto& s : a.terms()) {
    for (const auto& t : b.terms()) {
      Dyadic e = s.exp + t.exp;
      if (order && !(e < *order)) break;
      terms.push_back({std::move(e), s.coeff * t.coeff});
    }
  }
  return PuiseuxElement::from_terms(std::move(terms), std::move(order));
}

PuiseuxElement operator*(const PuiseuxElement& a, const PuiseuxElement& b) { return mul_truncated(a, b, std::nullopt); }

PuiseuxElement px_arith(PuiseuxOp op, const PuiseuxElement& a, const PuiseuxElement& b) {
  switch (op) {
    case PuiseuxOp::Add: return a + b;
    case PuiseuxOp::Sub: return a - b;
    case PuiseuxOp::Mul: return a * b;
  }
  throw std::invalid_argument("unknown series op");
}

namespace {

struct UnitSplit {
  TowerElement lead;
  Dyadic v;
  PuiseuxElement u;  // a = lead·x^v·(1 + u), v(u) > 0
};

UnitSplit split_unit(const PuiseuxElement& a) {
  const auto& lead = a.terms().front();
  const TowerElement lead_inv = TowerElement(1) / lead.coeff;
  std::vector<PuiseuxTerm> rest;
  for (std::size_t i = 1; i < a.terms().size(); ++i) {
    rest.push_back({a.terms()[i].exp - lead.exp, a.terms()[i].coeff * lead_inv});
  }
  Order o = a.order() ? Order(*a.order() - lead.exp) : std::nullopt;
  return {lead.coeff, lead.exp, PuiseuxElement::from_terms(std::move(rest), std::move(o))};
}

// Σ coeff(n)·uⁿ modulo x^bound, where v(u) > 0.
template <class CoeffFn>
PuiseuxElement power_series(const PuiseuxElement& u, const Dyadic& bound, CoeffFn coeff) {
  PuiseuxElement sum = PuiseuxElement(1).truncated(bound);
  if (u.is_exact_zero()) return sum;
  PuiseuxElement power(1);
  for (long n = 1;; ++n) {
    power = mul_truncated(power, u, Order(bound));
    if (power.terms().empty()) {
      sum = sum + power;
      break;
    }
    const Rational c = coeff(n);
    PuiseuxElement scaled = power;
    scaled = scaled * PuiseuxElement(c);
    sum = sum + scaled;
  }
  return sum.truncated(bound);
}

}  // namespace

PuiseuxElement inv(const PuiseuxElement& a, const Dyadic& target_order) {
  if (a.is_exact_zero()) throw Error(ErrorCode::ZeroInverse, "inverse of zero");
  if (!a.is_certified_nonzero()) {
    throw Error(ErrorCode::PrecisionExhausted, "cannot certify a nonzero leading term below order " +
                                                   order_to_string(a.order()));
  }
  UnitSplit s = split_unit(a);
  const TowerElement c_inv = TowerElement(1) / s.lead;
  if (s.u.is_exact_zero()) return PuiseuxElement::monomial(c_inv, -s.v);

  Dyadic result_order = target_order - s.v;
  if (a.order() && *a.order() - s.v - s.v < result_order) result_order = *a.order() - s.v - s.v;
  // Series for (1 + u)⁻¹ is needed modulo x^(R + v).
  const Dyadic inner = result_order + s.v;
  PuiseuxElement series =
      power_series(s.u.truncated(inner), inner, [](long n) { return Rational(n % 2 == 0 ? 1 : -1); });
  PuiseuxElement out = series * PuiseuxElement::monomial(c_inv, -s.v);
  return out.truncated(result_order);
}

PuiseuxElement sqrt(const PuiseuxElement& a, const Dyadic& target_order) {
  if (a.is_exact_zero()) throw Error(ErrorCode::NonPositiveRadicand, "square root of zero series");
  if (a.sign() != Sign::Positive) throw Error(ErrorCode::NonPositiveRadicand, "square root of " + a.to_string());
  UnitSplit s = split_unit(a);
  const TowerElement root_c = divalg::sqrt(s.lead);
  const Dyadic half_v = s.v.half();
  if (s.u.is_exact_zero()) return PuiseuxElement::monomial(root_c, half_v);

  Dyadic result_order = target_order + half_v;
  if (a.order() && *a.order() - half_v < result_order) result_order = *a.order() - half_v;
  const Dyadic inner = result_order - half_v;
  // binom(1/2, n) by the ratio (1/2 − n + 1)/n.
  std::vector<Rational> binom{Rational(1)};
  PuiseuxElement series = power_series(s.u.truncated(inner), inner, [&binom](long n) {
    while (static_cast<long>(binom.size()) <= n) {
      const long k = static_cast<long>(binom.size());
      Rational next = binom.back() * (Rational(1, 2) - Rational(k - 1)) / Rational(k);
      binom.push_back(next);
    }
    return binom[static_cast<std::size_t>(n)];
  });
  PuiseuxElement out = series * PuiseuxElement::monomial(root_c, half_v);
  return out.truncated(result_order);
}

Classification classify(const PuiseuxElement& a) {
  if (a.is_exact_zero()) return {true, true};
  if (!a.is_certified_nonzero()) {
    if (a.order()->sign() > 0) return {true, true};
    throw Error(ErrorCode::PrecisionExhausted, "cannot classify below order " + a.order()->to_string());
  }
  const Dyadic v = a.valuation();
  return {v.sign() > 0, v.sign() >= 0};
}

std::string PuiseuxElement::to_string() const {
  std::string out;
  for (const auto& t : terms_) {
    if (!out.empty()) out += " + ";
    out += t.coeff.to_sexpr() + "*x^(" + t.exp.to_string() + ")";
  }
  if (out.empty()) out = "0";
  if (order_) out += " (mod x^(" + order_->to_string() + "))";
  return out;
}

std::string to_string(const PuiseuxElement& a) { return a.to_string(); }

}  // namespace divalg
