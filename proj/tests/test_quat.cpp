#include "divalg/quaternion.hpp"
#include "doctest.h"
#include "divalg/generators.hpp"

using divalg::ConstructibleModel;
using divalg::ErrorCode;
using divalg::Rational;
using divalg::Sign;
using divalg::TowerElement;
using Alg = divalg::QuaternionAlgebra<ConstructibleModel>;
using gen::Pure;
using gen::Quat;

namespace {

TowerElement r(long n, long d = 1) { return TowerElement(Rational(n, d)); }
const Alg H = Alg::standard();

bool same(const Quat& x, const Quat& y) { return H.same(x, y); }

// Independent oracle: Hamilton product written out over the standard basis
// table (i² = j² = k² = ijk = −1), not via the symbol-algebra formula.
Quat hamilton(const Quat& x, const Quat& y) {
  return Quat{x.r * y.r - x.s * y.s - x.t * y.t - x.u * y.u, x.r * y.s + x.s * y.r + x.t * y.u - x.u * y.t,
              x.r * y.t - x.s * y.u + x.t * y.r + x.u * y.s, x.r * y.u + x.s * y.t - x.t * y.s + x.u * y.r};
}

}  // namespace

TEST_CASE("basis relations") {
  CHECK(same(H.mul(H.unit_i(), H.unit_j()), H.unit_k()));
  CHECK(same(H.mul(H.unit_j(), H.unit_i()), H.neg(H.unit_k())));
  CHECK(same(H.mul(H.unit_i(), H.unit_i()), H.scalar(r(-1))));

  const Alg A23(ConstructibleModel{}, r(2), r(3));
  CHECK(same(A23.mul(A23.unit_i(), A23.unit_i()), A23.scalar(r(2))));
  CHECK(same(A23.mul(A23.unit_j(), A23.unit_j()), A23.scalar(r(3))));
  CHECK(same(A23.mul(A23.unit_k(), A23.unit_k()), A23.scalar(r(-6))));
  CHECK(A23.nrd(A23.unit_i()) == r(-2));
  CHECK_FALSE(A23.is_division());
  CHECK_FALSE(A23.is_standard());
  CHECK(H.is_division());
}

TEST_CASE("inverse and reduced norm") {
  const Quat x = H.make(r(1), r(1), r(0), r(0));
  const Quat xi = H.inv(x);
  CHECK(same(xi, H.make(r(1, 2), r(-1, 2), r(0), r(0))));
  CHECK(same(H.mul(x, xi), H.unit_one()));
  CHECK(H.nrd(H.make(r(1), r(1), r(1), r(1))) == r(4));

  const Alg split(ConstructibleModel{}, r(1), r(-1));
  try {
    (void)split.inv(split.make(r(1), r(1), r(0), r(0)));
    FAIL("expected NotInvertible");
  } catch (const divalg::Error& e) {
    CHECK(e.code() == ErrorCode::NotInvertible);
  }
}

TEST_CASE("trace and pure part") {
  auto t1 = H.trd_pure(H.make(r(3), r(1), r(0), r(0)));
  CHECK(t1.trd == r(6));
  CHECK(t1.pure.b == r(1));
  CHECK_FALSE(t1.in_P);
  auto t2 = H.trd_pure(H.make(r(0), r(0), r(1), r(1)));
  CHECK(t2.trd == r(0));
  CHECK(t2.in_P);
}

TEST_CASE("dot and cross") {
  CHECK(H.dot(H.pure_i(), H.pure_j()) == r(0));
  CHECK(H.same(H.cross(H.pure_i(), H.pure_j()), H.pure_k()));
  const Alg A23(ConstructibleModel{}, r(2), r(3));
  try {
    (void)A23.dot(A23.pure_i(), A23.pure_j());
    FAIL("expected WrongAlgebra");
  } catch (const divalg::Error& e) {
    CHECK(e.code() == ErrorCode::WrongAlgebra);
  }
}

TEST_CASE("conjugation action") {
  CHECK(same(H.conj_action(H.unit_j(), H.unit_i()), H.neg(H.unit_i())));
  const Quat y = H.make(r(2), r(-1), r(3), r(1, 2));
  CHECK(same(H.conj_action(H.unit_one(), y), y));
}

TEST_CASE("frame completion") {
  auto f = H.frame_complete(H.pure_i());
  CHECK(H.same(f.p, H.pure_i()));
  CHECK(H.same(f.q, H.pure_j()));
  CHECK(H.same(f.r, H.pure_k()));

  for (const Pure& p : {H.pure_j(), H.pure_k(), Pure{r(3, 5), r(0), r(4, 5)}}) {
    auto fr = H.frame_complete(p);
    CHECK(H.dot(fr.p, fr.q).is_zero());
    CHECK(H.dot(fr.p, fr.r).is_zero());
    CHECK(H.dot(fr.q, fr.r).is_zero());
    CHECK(H.norm2(fr.q) == r(1));
    CHECK(H.norm2(fr.r) == r(1));
    CHECK(H.same(fr.r, H.pmul_pure(fr.p, fr.q)));
  }
  // complete(j): the first candidate j is parallel, so q comes from k.
  auto fj = H.frame_complete(H.pure_j());
  CHECK(H.same(fj.q, H.pure_k()));
  CHECK(H.same(fj.r, H.pure_i()));

  try {
    (void)H.frame_complete(Pure{r(1), r(1), r(0)});
    FAIL("expected NotUnit");
  } catch (const divalg::Error& e) {
    CHECK(e.code() == ErrorCode::NotUnit);
  }
}

TEST_CASE("rotate_to") {
  CHECK(same(H.rotate_to(H.pure_i()), H.unit_one()));
  CHECK(same(H.rotate_to(H.pneg(H.pure_i())), H.unit_j()));
  for (const Pure& g : {H.pure_j(), H.pure_k(), H.pneg(H.pure_k()), Pure{r(3, 5), r(0), r(4, 5)},
                        Pure{r(-2, 3), r(1, 3), r(2, 3)}}) {
    const Quat x = H.rotate_to(g);
    CHECK(H.nrd(x) == r(1));
    CHECK(H.same(H.act(x, H.pure_i()), g));
  }
  gen::Rng rng(31);
  for (int n = 0; n < 100; ++n) {
    const Pure g = gen::rational_unit_pure(rng);
    const Quat x = H.rotate_to(g);
    CHECK(H.nrd(x) == r(1));
    CHECK(H.same(H.act(x, H.pure_i()), g));
  }
}

TEST_CASE("product agrees with the Hamilton table") {
  gen::Rng rng(32);
  for (int n = 0; n < 2000; ++n) {
    const Quat x = gen::rational_quaternion(rng);
    const Quat y = gen::rational_quaternion(rng);
    CHECK(same(H.mul(x, y), hamilton(x, y)));
  }
}

TEST_CASE("reduced norm is multiplicative") {
  gen::Rng rng(33);
  gen::TowerPool pool;
  int failures = 0;
  for (int n = 0; n < 10000; ++n) {
    const Quat x = gen::rational_quaternion(rng);
    const Quat y = gen::rational_quaternion(rng);
    if (!(H.nrd(H.mul(x, y)) == H.nrd(x) * H.nrd(y))) ++failures;
  }
  // Also over a non-standard algebra with irrational entries.
  const Alg A(ConstructibleModel{}, pool.basis()[1], r(-3));
  for (int n = 0; n < 500; ++n) {
    const Quat x{pool.element(rng), pool.element(rng), pool.element(rng), pool.element(rng)};
    const Quat y = gen::rational_quaternion(rng);
    if (!(A.nrd(A.mul(x, y)) == A.nrd(x) * A.nrd(y))) ++failures;
  }
  CHECK(failures == 0);
}

TEST_CASE("product of pure quaternions is -dot + cross") {
  gen::Rng rng(34);
  int failures = 0;
  int anticommute_mismatch = 0;
  for (int n = 0; n < 10000; ++n) {
    const Pure a = gen::rational_pure(rng, 5, 3);
    Pure b = gen::rational_pure(rng, 5, 3);
    if (n % 3 == 0) b = H.cross(a, b);  // force orthogonal pairs
    const Quat ab = H.mul(H.from_pure(a), H.from_pure(b));
    const Quat expect = H.add(H.scalar(-H.dot(a, b)), H.from_pure(H.cross(a, b)));
    if (!same(ab, expect)) ++failures;
    const bool orth = H.dot(a, b).is_zero();
    const bool anti = same(ab, H.neg(H.mul(H.from_pure(b), H.from_pure(a))));
    if (orth != anti) ++anticommute_mismatch;
  }
  CHECK(failures == 0);
  CHECK(anticommute_mismatch == 0);
}

TEST_CASE("conjugation preserves trace, norm and dot") {
  gen::Rng rng(35);
  for (int n = 0; n < 1000; ++n) {
    const Quat x = gen::nonzero_quaternion(rng);
    const Quat y = gen::rational_quaternion(rng);
    const Quat c = H.conj_action(x, y);
    CHECK(c.r + c.r == y.r + y.r);
    CHECK(H.nrd(c) == H.nrd(y));
    const Pure a = gen::rational_pure(rng);
    const Pure b = gen::rational_pure(rng);
    CHECK(H.dot(H.act(x, a), H.act(x, b)) == H.dot(a, b));
    CHECK(H.trd_pure(H.conj_action(x, H.from_pure(a))).in_P);
  }
}

TEST_CASE("unit conjugation with irrational coordinates") {
  gen::Rng rng(36);
  for (int n = 0; n < 200; ++n) {
    const Quat q = gen::nonzero_quaternion(rng);
    const Quat x = H.scale(q, TowerElement(1) / divalg::sqrt(H.nrd(q)));
    CHECK(H.nrd(x) == r(1));
    const Pure a = gen::rational_unit_pure(rng);
    CHECK(H.trd_pure(H.conj_action(x, H.from_pure(a))).trd.is_zero());
    CHECK(H.norm2(H.act(x, a)) == r(1));
  }
}

TEST_CASE("Cauchy-Schwarz and triangle inequality") {
  gen::Rng rng(37);
  for (int n = 0; n < 1000; ++n) {
    const Pure a = gen::rational_pure(rng);
    const Pure b = gen::rational_pure(rng);
    const TowerElement d = H.dot(a, b);
    CHECK(d * d <= H.norm2(a) * H.norm2(b));
    const TowerElement lhs = divalg::sqrt(H.norm2(H.padd(a, b)));
    CHECK(lhs <= divalg::sqrt(H.norm2(a)) + divalg::sqrt(H.norm2(b)));
  }
}

TEST_CASE("pure part characterized by scalar square") {
  gen::Rng rng(38);
  for (int n = 0; n < 1000; ++n) {
    Quat x = gen::rational_quaternion(rng, 3, 2);
    if (n % 2 == 0) x.r = r(0);
    if (n % 7 == 0) x = H.scalar(x.r);
    const bool in_p = H.trd_pure(x).in_P;
    const Quat sq = H.mul(x, x);
    const bool scalar_square = sq.s.is_zero() && sq.t.is_zero() && sq.u.is_zero();
    const bool in_f = x.s.is_zero() && x.t.is_zero() && x.u.is_zero();
    const bool is_zero = in_f && x.r.is_zero();
    CHECK(in_p == ((scalar_square && !in_f) || is_zero));
  }
}
