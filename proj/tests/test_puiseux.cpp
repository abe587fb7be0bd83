#include <vector>

#include "divalg/puiseux.hpp"
#include "doctest.h"
#include "divalg/generators.hpp"

using divalg::Dyadic;
using divalg::ErrorCode;
using divalg::Order;
using divalg::PuiseuxElement;
using divalg::PuiseuxTerm;
using divalg::Rational;
using divalg::Sign;
using divalg::TowerElement;

namespace {

PuiseuxElement mono(long c, const Dyadic& e) { return PuiseuxElement::monomial(TowerElement(c), e); }
Dyadic dy(long n, unsigned long shift = 0) { return Dyadic(divalg::Integer(n), shift); }
const PuiseuxElement X = PuiseuxElement::x();

bool vanishes_to(const PuiseuxElement& a, const Dyadic& order) {
  if (a.is_exact_zero()) return true;
  if (a.is_certified_nonzero()) return !(a.valuation() < order);
  return !(*a.order() < order);
}

/// Exact results must cancel exactly; truncated ones through order + shift.
bool vanishes_past(const PuiseuxElement& a, const divalg::Order& order, const Dyadic& shift) {
  if (!order) return a.is_exact_zero();
  return vanishes_to(a, *order + shift);
}

void check_error(ErrorCode want, auto&& fn) {
  try {
    fn();
    FAIL("expected an error");
  } catch (const divalg::Error& e) {
    CHECK(e.code() == want);
  }
}

}  // namespace

TEST_CASE("dyadic numbers") {
  CHECK(dy(3, 1).to_string() == "3/2");
  CHECK(dy(4, 2) == Dyadic(1));
  CHECK(dy(4, 2).shift() == 0);
  CHECK(dy(3, 3).shift() == 3);
  CHECK(dy(1, 1).half() == dy(1, 2));
  CHECK(Dyadic::parse("-5/8") == -dy(5, 3));
  check_error(ErrorCode::ParseError, [] { (void)Dyadic::parse("1/3"); });
}

TEST_CASE("series arithmetic") {
  const PuiseuxElement half = mono(1, dy(1, 1));
  const PuiseuxElement sum = X + half;
  REQUIRE(sum.terms().size() == 2);
  CHECK(sum.terms()[0].exp == dy(1, 1));
  CHECK(sum.terms()[1].exp == Dyadic(1));
  CHECK(sum.is_exact());

  const PuiseuxElement sq = half * half;
  REQUIRE(sq.terms().size() == 1);
  CHECK(sq.terms()[0].exp == Dyadic(1));
  CHECK(sq.is_exact());

  // (1 + x mod x²)·(1 − x) = 1 − x² ≡ 1 mod x².
  const PuiseuxElement a = (PuiseuxElement(1) + X).truncated(Dyadic(2));
  const PuiseuxElement b = PuiseuxElement(1) - X;
  const PuiseuxElement p = a * b;
  REQUIRE(p.order().has_value());
  CHECK(*p.order() == Dyadic(2));
  REQUIRE(p.terms().size() == 1);
  CHECK(p.terms()[0].exp == Dyadic(0));
  CHECK(p.terms()[0].coeff == TowerElement(1));
}

TEST_CASE("inverse") {
  const PuiseuxElement one_minus_x = PuiseuxElement(1) - X;
  const PuiseuxElement r = inv(one_minus_x, Dyadic(4));
  REQUIRE(r.terms().size() == 4);
  for (long e = 0; e < 4; ++e) {
    CHECK(r.terms()[static_cast<std::size_t>(e)].exp == Dyadic(e));
    CHECK(r.terms()[static_cast<std::size_t>(e)].coeff == TowerElement(1));
  }
  CHECK(*r.order() == Dyadic(4));
  // Multiply back: the product is 1 modulo x⁴.
  const PuiseuxElement back = one_minus_x * r - PuiseuxElement(1);
  CHECK(vanishes_to(back, Dyadic(4)));

  const PuiseuxElement ix = inv(X, Dyadic(4));
  CHECK(ix.is_exact());
  REQUIRE(ix.terms().size() == 1);
  CHECK(ix.terms()[0].exp == Dyadic(-1));

  const PuiseuxElement i2 = inv(PuiseuxElement(2), Dyadic(4));
  CHECK(i2.is_exact());
  CHECK(i2.terms()[0].coeff == TowerElement(Rational(1, 2)));

  check_error(ErrorCode::ZeroInverse, [] { (void)inv(PuiseuxElement(), Dyadic(4)); });
  check_error(ErrorCode::PrecisionExhausted,
              [] { (void)inv(PuiseuxElement::from_terms({}, Dyadic(3)), Dyadic(4)); });
}

TEST_CASE("square root") {
  const PuiseuxElement rx = sqrt(X, Dyadic(4));
  CHECK(rx.is_exact());
  CHECK(rx.terms()[0].exp == dy(1, 1));

  const PuiseuxElement s = sqrt(PuiseuxElement(1) - X, Dyadic(2));
  REQUIRE(s.terms().size() == 2);
  CHECK(s.terms()[0].coeff == TowerElement(1));
  CHECK(s.terms()[1].coeff == TowerElement(Rational(-1, 2)));
  CHECK(*s.order() == Dyadic(2));
  CHECK(vanishes_to(s * s - (PuiseuxElement(1) - X), Dyadic(2)));

  const PuiseuxElement four_x2 = mono(4, Dyadic(2));
  const PuiseuxElement r2 = sqrt(four_x2, Dyadic(4));
  CHECK(r2.is_exact());
  CHECK(r2.terms()[0].coeff == TowerElement(2));
  CHECK(r2.terms()[0].exp == Dyadic(1));

  check_error(ErrorCode::NonPositiveRadicand, [] { (void)sqrt(-X, Dyadic(4)); });
}

TEST_CASE("valuation, sign and classification") {
  CHECK((mono(1, dy(3, 1)) + mono(1, Dyadic(2))).valuation() == dy(3, 1));
  CHECK(PuiseuxElement(5).valuation() == Dyadic(0));
  const PuiseuxElement geo = inv(PuiseuxElement(1) - X, Dyadic(8)) - PuiseuxElement(1);
  CHECK(geo.valuation() == Dyadic(1));
  check_error(ErrorCode::ZeroValuation, [] { (void)PuiseuxElement().valuation(); });

  CHECK((PuiseuxElement(1) - X).sign() == Sign::Positive);
  CHECK((X - mono(1, dy(1, 1))).sign() == Sign::Negative);
  const TowerElement s2 = divalg::sqrt(TowerElement(2));
  CHECK((PuiseuxElement::monomial(s2, dy(1, 1)) - X).sign() == Sign::Positive);
  CHECK(PuiseuxElement().sign() == Sign::Zero);
  check_error(ErrorCode::PrecisionExhausted, [] { (void)PuiseuxElement::from_terms({}, Dyadic(2)).sign(); });

  auto c = classify(X);
  CHECK(c.infinitesimal);
  CHECK(c.bounded);
  c = classify(PuiseuxElement(1) + X);
  CHECK_FALSE(c.infinitesimal);
  CHECK(c.bounded);
  c = classify(mono(1, -dy(1, 1)));
  CHECK_FALSE(c.infinitesimal);
  CHECK_FALSE(c.bounded);
  c = classify(PuiseuxElement());
  CHECK(c.infinitesimal);
  CHECK(c.bounded);
  c = classify(PuiseuxElement::from_terms({}, Dyadic(3)));
  CHECK(c.infinitesimal);
  check_error(ErrorCode::PrecisionExhausted, [] { (void)classify(PuiseuxElement::from_terms({}, Dyadic(0))); });
}

TEST_CASE("rendering") {
  CHECK(PuiseuxElement().to_string() == "0");
  CHECK((PuiseuxElement(1) - X).to_string() == "1*x^(0) + -1*x^(1)");
  CHECK(sqrt(PuiseuxElement(1) - X, Dyadic(2)).to_string() == "1*x^(0) + -1/2*x^(1) (mod x^(2))");
}

TEST_CASE("precision retry") {
  divalg::PrecisionPolicy policy{Dyadic(2), Dyadic(16)};
  std::vector<Dyadic> seen;
  const int result = divalg::with_precision_retry(policy, [&](const Dyadic& o) {
    seen.push_back(o);
    if (o < Dyadic(8)) throw divalg::Error(ErrorCode::PrecisionExhausted, "retry");
    return 7;
  });
  CHECK(result == 7);
  CHECK(seen == std::vector<Dyadic>{Dyadic(2), Dyadic(4), Dyadic(8)});
  seen.clear();
  check_error(ErrorCode::PrecisionExhausted, [&] {
    divalg::with_precision_retry(policy, [&](const Dyadic& o) -> int {
      seen.push_back(o);
      throw divalg::Error(ErrorCode::PrecisionExhausted, "never");
    });
  });
  CHECK(seen.back() == Dyadic(16));
}

TEST_CASE("valuation axioms on random pairs") {
  gen::Rng rng(21);
  int failures = 0;
  for (int n = 0; n < 10000; ++n) {
    const PuiseuxElement a = gen::random_series(rng);
    const PuiseuxElement b = gen::random_series(rng);
    if ((a * b).valuation() != a.valuation() + b.valuation()) ++failures;
    const PuiseuxElement s = a + b;
    if (s.is_exact_zero()) continue;
    const Dyadic m = std::min(a.valuation(), b.valuation());
    if (s.valuation() < m) ++failures;
    if (a.valuation() != b.valuation() && s.valuation() != m) ++failures;
  }
  CHECK(failures == 0);
}

TEST_CASE("valuation ring and maximal ideal") {
  gen::Rng rng(22);
  for (int n = 0; n < 1000; ++n) {
    const PuiseuxElement a = gen::random_series(rng);
    const PuiseuxElement ai = inv(a, Dyadic(16));
    CHECK((classify(a).bounded || classify(ai).bounded));
    const PuiseuxElement b = gen::random_series(rng);
    if (classify(a).infinitesimal && classify(b).bounded) CHECK(classify(a * b).infinitesimal);
  }
}

TEST_CASE("ordering compatibility") {
  gen::Rng rng(23);
  for (int n = 0; n < 2000; ++n) {
    PuiseuxElement a = gen::random_series(rng);
    PuiseuxElement b = gen::random_series(rng);
    const PuiseuxElement c = gen::random_series(rng, true);
    const Sign s = (a - b).sign();
    if (s == Sign::Positive) std::swap(a, b);
    if (s != Sign::Zero) CHECK(((b + c) - (a + c)).sign() == Sign::Positive);
    if (a.sign() == Sign::Positive && b.sign() == Sign::Positive) CHECK((a * b).sign() == Sign::Positive);
    if (a.sign() == Sign::Negative && b.sign() == Sign::Negative) CHECK((a * b).sign() == Sign::Positive);
  }
}

TEST_CASE("inverse and square root round trips") {
  gen::Rng rng(24);
  const Dyadic target(12);
  for (int n = 0; n < 300; ++n) {
    PuiseuxElement a = gen::random_series(rng);
    const Dyadic v = a.valuation();
    const PuiseuxElement ai = inv(a, target);
    // a·inv(a) − 1 vanishes to the stated order (target adjusted by v(a)).
    CHECK(vanishes_past(a * ai - PuiseuxElement(1), ai.order(), v));
    if (a.sign() == Sign::Negative) a = -a;
    const PuiseuxElement r = sqrt(a, target);
    CHECK(r.valuation() == v.half());
    CHECK(vanishes_past(r * r - a, r.order(), v.half()));
  }
}

TEST_CASE("value group is dyadic and closed under halving") {
  gen::Rng rng(25);
  for (int n = 0; n < 500; ++n) {
    PuiseuxElement a = gen::random_series(rng);
    if (a.sign() == Sign::Negative) a = -a;
    Dyadic v = a.valuation();
    for (int k = 0; k < 3; ++k) {
      a = sqrt(a, Dyadic(4));
      CHECK(a.valuation() == v.half());
      v = v.half();
    }
    CHECK(mpz_popcount(a.valuation().value().get_den_mpz_t()) == 1);
  }
}
