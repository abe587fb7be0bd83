#include <set>

#include "divalg/cyclic_algebra.hpp"
#include "doctest.h"

using divalg::CyclicAlgebra;
using divalg::CyclicAlgElement;
using divalg::ErrorCode;
using divalg::LElem;

namespace {

/// Oracle: 𝔽_ℓ[t]/(f) has no zero divisors, by brute force over all pairs.
bool brute_irreducible(long ell, const std::vector<long>& f) {
  const std::size_t d = f.size() - 1;
  long size = 1;
  for (std::size_t k = 0; k < d; ++k) size *= ell;
  auto poly = [&](long idx) {
    std::vector<long> a(d);
    for (std::size_t k = 0; k < d; ++k) {
      a[k] = idx % ell;
      idx /= ell;
    }
    return a;
  };
  for (long x = 1; x < size; ++x) {
    for (long y = x; y < size; ++y) {
      const auto a = poly(x), b = poly(y);
      std::vector<long> prod(2 * d, 0);
      for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) prod[i + j] = (prod[i + j] + a[i] * b[j]) % ell;
      }
      for (std::size_t k = 2 * d; k-- > d;) {
        for (std::size_t j = 0; j < d; ++j) prod[k - d + j] = ((prod[k - d + j] - prod[k] * f[j]) % ell + ell) % ell;
        prod[k] = 0;
      }
      bool zero = true;
      for (std::size_t k = 0; k < d; ++k) zero = zero && prod[k] == 0;
      if (zero) return false;
    }
  }
  return true;
}

struct Seeded : gmp_randclass {
  explicit Seeded(unsigned long s) : gmp_randclass(gmp_randinit_mt) { seed(s); }
};

const std::tuple<long, long, long> kConfigs[] = {{2, 1, 2}, {3, 1, 2}, {2, 2, 2}, {2, 1, 3}, {2, 2, 3}, {5, 1, 2}};

}  // namespace

TEST_CASE("primitive moduli") {
  CHECK(divalg::primitive_modulus(2, 2) == std::vector<long>{1, 1, 1});
  CHECK(divalg::primitive_modulus(2, 3) == std::vector<long>{1, 1, 0, 1});
  CHECK(divalg::primitive_modulus(2, 1) == std::vector<long>{1, 1});
  CHECK(divalg::primitive_modulus(3, 1) == std::vector<long>{1, 1});
  for (auto [ell, d] : {std::pair{2L, 2L}, {2L, 3L}, {2L, 4L}, {2L, 6L}, {3L, 2L}, {3L, 4L}, {5L, 2L}, {7L, 2L}}) {
    CHECK(brute_irreducible(ell, divalg::primitive_modulus(ell, d)));
  }
  CHECK_THROWS_AS(divalg::ca_make(4, 1, 2), divalg::Error);
}

TEST_CASE("Frobenius lifting") {
  for (auto [ell, m, n] : kConfigs) {
    CAPTURE(ell);
    CAPTURE(m);
    CAPTURE(n);
    const CyclicAlgebra ca = divalg::ca_make(ell, m, n, 20);
    CHECK(ca.q() == (m == 1 ? ell : ell * ell));
    // σⁿ = id on the generator and hence everywhere.
    CHECK(ca.sigma_pow(ca.l_gen(), n) == ca.l_gen());
    CHECK(ca.sigma_pow(ca.l_gen(), 1) != ca.l_gen());
    Seeded rng(7);
    for (int k = 0; k < 100; ++k) {
      const LElem a = ca.random_l(rng), b = ca.random_l(rng);
      CHECK(ca.sigma(ca.l_mul(a, b)) == ca.l_mul(ca.sigma(a), ca.sigma(b)));
      CHECK(ca.sigma(ca.l_add(a, b)) == ca.l_add(ca.sigma(a), ca.sigma(b)));
      // Residue action is the q-power map.
      CHECK(ca.residue_index(ca.sigma(a)) == ca.residue_index(ca.l_pow(a, static_cast<unsigned long>(ca.q()))));
      // The trace lands in the fixed field F.
      const LElem tr = ca.trace_to_base(a);
      CHECK(ca.sigma(tr) == tr);
    }
  }
}

TEST_CASE("unit inverses") {
  const CyclicAlgebra ca = divalg::ca_make(3, 1, 2, 20);
  Seeded rng(8);
  for (int k = 0; k < 100; ++k) {
    const LElem a = ca.random_l(rng);
    if (ca.l_valuation(a) > 0) continue;
    CHECK(ca.l_mul(a, ca.l_inv(a)) == ca.l_from(1));
  }
  CHECK_THROWS_AS(ca.l_inv(ca.l_from(3)), divalg::Error);
}

TEST_CASE("twisted product") {
  for (auto [ell, m, n] : kConfigs) {
    const CyclicAlgebra ca = divalg::ca_make(ell, m, n, 20);
    Seeded rng(9);
    const CyclicAlgElement x = ca.x();
    for (int k = 0; k < 20; ++k) {
      const LElem c = ca.random_l(rng);
      CHECK(ca.equal(ca.mul(x, ca.from_l(c)), ca.mul(ca.from_l(ca.sigma(c)), x)));
    }
    CyclicAlgElement xn = ca.from_l(ca.l_from(1));
    for (long k = 0; k < n; ++k) xn = ca.mul(xn, x);
    CHECK(ca.equal(xn, ca.from_l(ca.l_from(ell))));
  }
}

TEST_CASE("associativity on random triples") {
  for (auto [ell, m, n] : kConfigs) {
    const CyclicAlgebra ca = divalg::ca_make(ell, m, n, 20);
    Seeded rng(10);
    int failures = 0;
    for (int k = 0; k < 1000 / 6 + 1; ++k) {
      const auto a = ca.random_element(rng), b = ca.random_element(rng), c = ca.random_element(rng);
      if (!ca.equal(ca.mul(ca.mul(a, b), c), ca.mul(a, ca.mul(b, c)))) ++failures;
    }
    CHECK(failures == 0);
  }
}

TEST_CASE("valuation") {
  for (auto [ell, m, n] : kConfigs) {
    const CyclicAlgebra ca = divalg::ca_make(ell, m, n, 20);
    const auto vx = ca.valuation(ca.x());
    CHECK(vx.numerator == 1);
    CHECK(vx.denominator == n);
    const auto vl = ca.valuation(ca.from_l(ca.l_from(ell)));
    CHECK(vl.numerator == n);
    CyclicAlgElement zero = ca.from_l(ca.l_zero());
    try {
      (void)ca.valuation(zero);
      FAIL("expected PrecisionExhausted");
    } catch (const divalg::Error& e) {
      CHECK(e.code() == ErrorCode::PrecisionExhausted);
    }
    Seeded rng(11);
    for (int k = 0; k < 500; ++k) {
      const auto a = ca.random_element(rng), b = ca.random_element(rng);
      const long va = ca.valuation(a).numerator, vb = ca.valuation(b).numerator;
      CHECK(ca.valuation(ca.mul(a, b)).numerator == va + vb);
      const auto s = ca.add(a, b);
      bool s_zero = true;
      for (const auto& c : s.coeffs) s_zero = s_zero && ca.l_is_zero(c);
      if (!s_zero) CHECK(ca.valuation(s).numerator >= std::min(va, vb));
    }
  }
}

TEST_CASE("quotient image") {
  for (auto [ell, m, n] : kConfigs) {
    CAPTURE(ell);
    CAPTURE(m);
    CAPTURE(n);
    const CyclicAlgebra ca = divalg::ca_make(ell, m, n, 20);
    const divalg::SemidirectZnZm sd = ca.quotient_group();
    const divalg::FiniteGroup g = sd.group();
    CHECK(ca.quotient_image(ca.x()) == sd.encode(0, 1));
    CHECK(ca.quotient_image(ca.from_l(ca.l_from(ell))) == 0);

    Seeded rng(12);
    std::set<int> seen;
    for (int k = 0; k < 500; ++k) {
      const auto a = ca.random_element(rng), b = ca.random_element(rng);
      const int ia = ca.quotient_image(a), ib = ca.quotient_image(b);
      CHECK(ca.quotient_image(ca.mul(a, b)) == g.mul(ia, ib));
      seen.insert(ia);
    }
    // Elements of F* are trivial in the quotient.
    for (int k = 0; k < 100; ++k) {
      const LElem f = ca.trace_to_base(ca.random_l(rng));
      if (ca.l_valuation(f) >= 20) continue;
      CHECK(ca.quotient_image(ca.from_l(f)) == 0);
    }
    // Surjectivity, and exactness: the value component vanishes exactly on
    // the images of units of L, which cover the unit part.
    for (int k = 0; k < 2000; ++k) seen.insert(ca.quotient_image(ca.random_element(rng)));
    CHECK(static_cast<long>(seen.size()) == g.order());
    std::set<long> unit_part;
    for (int k = 0; k < 2000; ++k) {
      const int img = ca.quotient_image(ca.from_l(ca.random_l(rng)));
      CHECK(sd.decode(img).second == 0);
      unit_part.insert(sd.decode(img).first);
    }
    CHECK(static_cast<long>(unit_part.size()) == sd.m);
  }
}

TEST_CASE("quotient groups") {
  const auto a = divalg::ca_quotient_group(2, 2);
  CHECK(a.order() == 6);
  CHECK(divalg::fg_iso_dihedral(a.group(), 3));
  const auto b = divalg::ca_quotient_group(4, 2);
  CHECK(b.order() == 10);
  CHECK(divalg::fg_iso_dihedral(b.group(), 5));
  const auto c = divalg::ca_quotient_group(2, 3);
  CHECK(c.order() == 21);
  CHECK(c.m == 7);
  CHECK(c.q == 2);
  // For n = 2, multiplication by q is inversion on ℤ/(q + 1).
  for (long q : {2L, 3L, 4L, 5L, 7L, 8L, 9L, 11L}) {
    const auto s = divalg::ca_quotient_group(q, 2);
    CHECK(s.m == q + 1);
    CHECK((s.q + 1) % s.m == 0);
  }
  CHECK_THROWS_AS(divalg::ca_quotient_group(6, 2), divalg::Error);
}

TEST_CASE("reports") {
  const auto r2 = divalg::ca_report(2, 2, 20, 1, 400);
  CHECK(r2.ok());
  CHECK(r2.dihedral.value_or(false));
  CHECK(r2.count_maximal(3, false) == 3);
  const auto r4 = divalg::ca_report(4, 2, 20, 1, 400);
  CHECK(r4.ok());
  CHECK(r4.count_maximal(5, false) == 5);
  CHECK(r4.count_maximal(2, true) == 1);
  const auto r3 = divalg::ca_report(3, 2, 20, 1, 400);
  CHECK(r3.ok());
  for (const auto& s : r3.maximal) CHECK(s.normal);
  const auto r23 = divalg::ca_report(2, 3, 20, 1, 400);
  CHECK(r23.ok());
  CHECK_FALSE(r23.dihedral.has_value());
  CHECK(r23.order == 21);
  CHECK(r23.count_maximal(7, false) == 7);
  CHECK(r23.count_maximal(3, true) == 1);
  CHECK(r23.maximal.size() == 8);
}
