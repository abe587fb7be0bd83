#include <gmpxx.h>

#include <set>

#include "divalg/ck1.hpp"
#include "doctest.h"

using divalg::ErrorCode;
using divalg::FiniteAbelianGroup;
using divalg::Rational;
using divalg::TowerElement;

namespace {

/// Oracle: an abelian group has Σ_p (p^d − 1)/(p − 1) maximal subgroups,
/// d the number of cyclic factors divisible by p (hyperplanes of A/pA).
long maximal_count_oracle(const FiniteAbelianGroup& a) {
  long total = 0;
  for (long p = 2; p <= a.order(); ++p) {
    if (!divalg::is_prime(p)) continue;
    long d = 0;
    for (long o : a.cyclic_orders()) d += o % p == 0 ? 1 : 0;
    long pd = 1;
    for (long k = 0; k < d; ++k) pd *= p;
    total += (pd - 1) / (p - 1);
  }
  return total;
}

/// Oracle: the least d with q | p^d − 1, on big integers.
long order_oracle(long p, long q) {
  mpz_class pw = 1;
  for (long d = 1;; ++d) {
    pw *= p;
    if (mpz_divisible_ui_p(mpz_class(pw - 1).get_mpz_t(), static_cast<unsigned long>(q)) != 0) return d;
  }
}

}  // namespace

TEST_CASE("abelian group universe") {
  CHECK(divalg::abelian_groups_of_order(1).size() == 1);
  CHECK(divalg::abelian_groups_of_order(8).size() == 3);
  CHECK(divalg::abelian_groups_of_order(72).size() == 6);
  CHECK(divalg::abelian_groups_of_order(64).size() == 11);
  long total = 0;
  for (long n = 1; n <= 128; ++n) total += static_cast<long>(divalg::abelian_groups_of_order(n).size());
  // Partition counts of the prime exponents, summed over n ≤ 128.
  long oracle = 0;
  auto partitions = [](int e) {
    static const int p[] = {1, 1, 2, 3, 5, 7, 11, 15};
    return p[e];
  };
  for (long n = 1; n <= 128; ++n) {
    long m = n, prod = 1;
    for (long p = 2; p <= m; ++p) {
      int e = 0;
      while (m % p == 0) {
        m /= p;
        ++e;
      }
      prod *= partitions(e);
    }
    oracle += prod;
  }
  CHECK(total == oracle);
}

TEST_CASE("maximal subgroups of small abelian groups") {
  const auto z2 = divalg::ck_lemma2_finite(FiniteAbelianGroup({2}));
  REQUIRE(z2.maximal_subgroups.size() == 1);
  CHECK(z2.maximal_subgroups[0].order == 1);
  CHECK(z2.maximal_subgroups[0].index == 2);

  const auto z6 = divalg::ck_lemma2_finite(FiniteAbelianGroup({6}));
  std::multiset<long> idx6;
  for (const auto& r : z6.maximal_subgroups) idx6.insert(r.index);
  CHECK(idx6 == std::multiset<long>{2, 3});

  const auto v4 = divalg::ck_lemma2_finite(FiniteAbelianGroup({2, 2}));
  CHECK(v4.maximal_subgroups.size() == 3);
  for (const auto& r : v4.maximal_subgroups) CHECK(r.index == 2);

  const auto trivial = divalg::ck_lemma2_finite(FiniteAbelianGroup({}));
  CHECK(trivial.maximal_subgroups.empty());
  CHECK(trivial.holds);
}

TEST_CASE("maximal subgroups of abelian groups match the hyperplane count") {
  for (long n = 2; n <= 64; ++n) {
    for (const auto& a : divalg::abelian_groups_of_order(n)) {
      CAPTURE(a.to_string());
      const auto res = divalg::ck_lemma2_finite(a);
      CHECK(res.holds);
      CHECK(static_cast<long>(res.maximal_subgroups.size()) == maximal_count_oracle(a));
    }
  }
}

TEST_CASE("group size cap") {
  try {
    (void)FiniteAbelianGroup({100, 101});
    FAIL("expected GroupTooLarge");
  } catch (const divalg::Error& e) {
    CHECK(e.code() == ErrorCode::GroupTooLarge);
  }
  divalg::LatticeOptions opt;
  opt.max_subgroups = 100;
  try {
    (void)divalg::ck_lemma2_finite(FiniteAbelianGroup({2, 2, 2, 2, 2}), opt);
    FAIL("expected GroupTooLarge");
  } catch (const divalg::Error& e) {
    CHECK(e.code() == ErrorCode::GroupTooLarge);
  }
}

TEST_CASE("n-divisibility stabilization examples") {
  const auto a = divalg::ck_lemma11(FiniteAbelianGroup({4, 3}), 2);
  CHECK_FALSE(a.lhs);
  CHECK_FALSE(a.rhs);
  const auto b = divalg::ck_lemma11(FiniteAbelianGroup({2, 2}), 2);
  CHECK(b.lhs);
  CHECK(b.rhs);
  const auto c = divalg::ck_lemma11(FiniteAbelianGroup({3}), 2);
  CHECK_FALSE(c.lhs);
  CHECK_FALSE(c.rhs);
  const FiniteAbelianGroup z12({4, 3});
  CHECK(z12.multiple(2).count() == 6);
  CHECK(z12.multiple(4).count() == 3);
}

TEST_CASE("n-divisibility stabilization on small groups; the exponent decides every k") {
  long true_cases = 0;
  for (long order = 1; order <= 36; ++order) {
    for (const auto& a : divalg::abelian_groups_of_order(order)) {
      for (long n = 2; n <= 12; ++n) {
        const auto e = divalg::ck_lemma11(a, n);
        CHECK(e.equivalent());
        const auto wide = divalg::ck_lemma11(a, n, 3 * a.order() + 3);
        CHECK(wide.lhs == e.lhs);
        true_cases += e.lhs ? 1 : 0;
      }
    }
  }
  CHECK(true_cases > 0);
}

TEST_CASE("power classes of a cyclic group") {
  auto check = [](long m, long p, long r, bool expect) {
    const auto e = divalg::ck_lemma12(m, p, r);
    CHECK(e.lhs == expect);
    CHECK(e.rhs == expect);
  };
  check(8, 2, 1, false);
  check(9, 2, 1, true);
  check(2, 2, 1, true);
  for (long m = 2; m <= 200; ++m) {
    for (long p : {2L, 3L, 5L, 7L}) {
      for (long r = 1; r <= 3; ++r) CHECK(divalg::ck_lemma12(m, p, r).equivalent());
    }
  }
  CHECK_THROWS_AS(divalg::ck_lemma12(10, 4, 1), divalg::Error);
}

TEST_CASE("roots of unity in the limit field") {
  const auto a = divalg::ck_mu_in_limit_field(3, 7);
  CHECK(a.degree == 6);
  CHECK_FALSE(a.mu_in_F);
  const auto b = divalg::ck_mu_in_limit_field(3, 5);
  CHECK(b.degree == 4);
  CHECK(b.mu_in_F);
  const auto c = divalg::ck_mu_in_limit_field(5, 11);
  CHECK(c.degree == 5);
  CHECK_FALSE(c.mu_in_F);
  for (long p = 2; p <= 50; ++p) {
    for (long q = 2; q <= 50; ++q) {
      if (!divalg::is_prime(p) || !divalg::is_prime(q) || p == q) continue;
      const auto r = divalg::ck_mu_in_limit_field(p, q);
      CHECK(r.degree == order_oracle(p, q));
      CHECK(r.mu_in_F == (order_oracle(p, q) % p != 0));
    }
  }
}

TEST_CASE("CK1 orders over the series field") {
  const long expect[] = {1, 1, 3, 1, 5, 3};
  for (long t = 1; t <= 6; ++t) CHECK(divalg::ck_mt_order(t).order_lower_bound == expect[t - 1]);
  for (long t = 1; t <= 500; ++t) {
    CHECK(divalg::ck_mt_order(2 * t).order_lower_bound == divalg::ck_mt_order(t).order_lower_bound);
    CHECK(t % divalg::ck_mt_order(t).order_lower_bound == 0);
    CHECK(divalg::ck_mt_order(t).order_lower_bound % 2 == 1);
  }
  CHECK(divalg::ck_mt_order(3).exact_for_ideal_residue);
}

TEST_CASE("Z[1/2]/tZ[1/2] by counting classes") {
  // Oracle: dyadics a/2^k with |a| ≤ 60, k ≤ 3, grouped by the relation
  // x ~ y iff (x − y)/t ∈ Z[1/2], i.e. (x − y)/t has a power-of-2 denominator.
  for (long t = 1; t <= 12; ++t) {
    std::vector<Rational> reps;
    for (long k = 0; k <= 3; ++k) {
      for (long a = -60; a <= 60; ++a) {
        const Rational x(a, 1L << k);
        bool fresh = true;
        for (const Rational& r : reps) {
          Rational d = (x - r) / t;
          d.canonicalize();
          mpz_class den = d.get_den();
          while (den % 2 == 0) den /= 2;
          if (den == 1) fresh = false;
        }
        if (fresh) reps.emplace_back(x);
      }
    }
    CHECK(static_cast<long>(reps.size()) == divalg::ck_mt_order(t).order_lower_bound);
  }
}

TEST_CASE("normal maximal subgroups of odd prime index") {
  const auto pu = divalg::ck_normal_primes(divalg::ModelKind::Puiseux);
  const auto co = divalg::ck_normal_primes(divalg::ModelKind::Constructible);
  std::set<long> odd_primes;
  for (long p = 3; p <= 97; ++p) {
    if (divalg::is_prime(p)) odd_primes.insert(p);
  }
  std::set<long> pu_set, co_set, nontrivial;
  for (const auto& np : pu) pu_set.insert(np.p);
  for (const auto& np : co) co_set.insert(np.p);
  for (long p = 2; p <= 97; ++p) {
    if (divalg::is_prime(p) && divalg::ck_mt_order(p).order_lower_bound > 1) nontrivial.insert(p);
  }
  CHECK(pu_set == odd_primes);
  CHECK(co_set == odd_primes);
  CHECK(nontrivial == odd_primes);
  CHECK(pu_set.count(2) == 0);
  REQUIRE_FALSE(pu.empty());
  CHECK(pu.front().p == 3);
  CHECK(pu.front().witness == "x");
  CHECK(co.front().witness == "2");
}

TEST_CASE("quaternion CK1 triviality") {
  const divalg::ConstructibleModel cm;
  CHECK(divalg::ck_quaternion_trivial(cm, TowerElement(-1), TowerElement(-1), 2));
  CHECK(divalg::ck_quaternion_trivial(cm, TowerElement(-1), TowerElement(-2), 2));
  CHECK(divalg::ck_quaternion_trivial(cm, -divalg::sqrt(TowerElement(2)), TowerElement(-3), 1));
  try {
    (void)divalg::ck_quaternion_trivial(cm, TowerElement(1), TowerElement(-1), 2);
    FAIL("expected NotDivision");
  } catch (const divalg::Error& e) {
    CHECK(e.code() == ErrorCode::NotDivision);
  }
  const divalg::PuiseuxModel pm;
  const divalg::PuiseuxElement x = divalg::PuiseuxElement::x();
  CHECK(divalg::ck_quaternion_trivial(pm, -x, divalg::PuiseuxElement(-1), 2));
  CHECK_THROWS_AS(divalg::ck_quaternion_trivial(cm, TowerElement(-1), TowerElement(-1), 3), std::invalid_argument);
}
