#pragma once

// Hand-rolled random generators shared by the property tests, the
// acceptance runner and the verify suites. Everything is driven by a
// seeded std::mt19937_64.

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "divalg/puiseux.hpp"
#include "divalg/rational.hpp"
#include "divalg/quaternion.hpp"
#include "divalg/tower.hpp"

namespace gen {

using divalg::Integer;
using divalg::Rational;
using divalg::TowerElement;

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  long uniform(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(eng_); }
  bool coin() { return uniform(0, 1) == 1; }
  std::mt19937_64& engine() { return eng_; }

  /// n/d with |n| ≤ num_bound and 1 ≤ d ≤ den_bound.
  Rational rational(long num_bound = 20, long den_bound = 10) {
    Rational q(Integer(uniform(-num_bound, num_bound)), Integer(uniform(1, den_bound)));
    q.canonicalize();
    return q;
  }

  Rational nonzero_rational(long num_bound = 20, long den_bound = 10) {
    for (;;) {
      Rational q = rational(num_bound, den_bound);
      if (sgn(q) != 0) return q;
    }
  }

 private:
  std::mt19937_64 eng_;
};

/// A small fixed basis of constructible numbers: 1, √2, √3, √5, √(1+√2) and
/// some of their products. Random elements are rational combinations.
class TowerPool {
 public:
  TowerPool() {
    const TowerElement r2 = divalg::sqrt(TowerElement(2));
    const TowerElement r3 = divalg::sqrt(TowerElement(3));
    const TowerElement r5 = divalg::sqrt(TowerElement(5));
    const TowerElement nested = divalg::sqrt(TowerElement(1) + r2);
    basis_ = {TowerElement(1), r2, r3, r5, nested, r2 * r3, r3 * nested};
  }

  TowerElement element(Rng& rng, int max_terms = 3) {
    TowerElement out(0);
    const int terms = static_cast<int>(rng.uniform(1, max_terms));
    for (int t = 0; t < terms; ++t) {
      const auto& b = basis_[static_cast<std::size_t>(rng.uniform(0, static_cast<long>(basis_.size()) - 1))];
      out += TowerElement(rng.rational()) * b;
    }
    return out;
  }

  TowerElement nonzero(Rng& rng, int max_terms = 3) {
    for (;;) {
      TowerElement e = element(rng, max_terms);
      if (!e.is_zero()) return e;
    }
  }

  const std::vector<TowerElement>& basis() const { return basis_; }

 private:
  std::vector<TowerElement> basis_;
};

using Quat = divalg::Quaternion<TowerElement>;
using Pure = divalg::PureQuaternion<TowerElement>;

inline Quat rational_quaternion(Rng& rng, long num = 20, long den = 10) {
  return Quat{TowerElement(rng.rational(num, den)), TowerElement(rng.rational(num, den)),
              TowerElement(rng.rational(num, den)), TowerElement(rng.rational(num, den))};
}

inline Quat nonzero_quaternion(Rng& rng, long num = 20, long den = 10) {
  for (;;) {
    Quat q = rational_quaternion(rng, num, den);
    if (!(q.r.is_zero() && q.s.is_zero() && q.t.is_zero() && q.u.is_zero())) return q;
  }
}

inline Pure rational_pure(Rng& rng, long num = 20, long den = 10) {
  return Pure{TowerElement(rng.rational(num, den)), TowerElement(rng.rational(num, den)),
              TowerElement(rng.rational(num, den))};
}

/// A rational point on the unit sphere S² by inverse stereographic projection
/// from the north pole: (2u, 2v, u² + v² − 1)/(u² + v² + 1), cyclically shifted.
inline Pure rational_unit_pure(Rng& rng, long num = 20, long den = 10) {
  const Rational u = rng.rational(num, den);
  const Rational v = rng.rational(num, den);
  const Rational n = u * u + v * v + 1;
  Rational x = 2 * u / n, y = 2 * v / n, z = (u * u + v * v - 1) / n;
  switch (rng.uniform(0, 2)) {
    case 0: return Pure{TowerElement(x), TowerElement(y), TowerElement(z)};
    case 1: return Pure{TowerElement(z), TowerElement(x), TowerElement(y)};
    default: return Pure{TowerElement(y), TowerElement(z), TowerElement(x)};
  }
}

/// A rational point (c, s) on the unit circle: ((1 − t²), 2t)/(1 + t²), with
/// t = ∞ giving (−1, 0).
inline std::pair<Rational, Rational> rational_circle_point(Rng& rng, long num = 50, long den = 20) {
  if (rng.uniform(0, 40) == 0) return {Rational(-1), Rational(0)};
  const Rational t = rng.rational(num, den);
  const Rational n = 1 + t * t;
  return {(1 - t * t) / n, 2 * t / n};
}

/// A nonzero exact series with one to three terms, exponents in (1/4)ℤ
/// between −6 and 12.
inline divalg::PuiseuxElement random_series(Rng& rng, bool allow_zero = false) {
  for (;;) {
    std::vector<divalg::PuiseuxTerm> terms;
    const long count = rng.uniform(1, 3);
    for (long t = 0; t < count; ++t) {
      terms.push_back({divalg::Dyadic(Integer(rng.uniform(-6, 12)), static_cast<unsigned long>(rng.uniform(0, 2))),
                       TowerElement(rng.rational(9, 4))});
    }
    divalg::PuiseuxElement p = divalg::PuiseuxElement::from_terms(std::move(terms), std::nullopt);
    if (allow_zero || !p.is_exact_zero()) return p;
  }
}

}  // namespace gen
