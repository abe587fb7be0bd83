#include "divalg/rotations.hpp"
#include "doctest.h"
#include "divalg/generators.hpp"

using divalg::ConstructibleModel;
using divalg::ErrorCode;
using divalg::Rational;
using divalg::TowerElement;
using Alg = divalg::QuaternionAlgebra<ConstructibleModel>;
using Rot = divalg::Rotations<ConstructibleModel>;
using R2 = Rot::R2;
using M3 = Rot::M3;
using gen::Pure;
using gen::Quat;

namespace {

TowerElement r(long n, long d = 1) { return TowerElement(Rational(n, d)); }
const Alg H = Alg::standard();
const Rot R;

M3 mat(std::initializer_list<std::initializer_list<long>> rows) {
  M3 out = R.identity();
  std::size_t i = 0;
  for (const auto& row : rows) {
    std::size_t j = 0;
    for (long v : row) out[i][j++] = r(v);
    ++i;
  }
  return out;
}

const M3 quarter_turn = mat({{1, 0, 0}, {0, 0, -1}, {0, 1, 0}});
const M3 half_turn = mat({{1, 0, 0}, {0, -1, 0}, {0, 0, -1}});

Quat unit_about(const Pure& p, const Rational& c, const Rational& s) {
  return H.add(H.scalar(TowerElement(c)), H.scale(H.from_pure(p), TowerElement(s)));
}

}  // namespace

TEST_CASE("planar rotations") {
  CHECK(R.r2_same(R.r2_mul(R2{r(0), r(1)}, R2{r(0), r(1)}), R2{r(-1), r(0)}));
  CHECK(R.r2_same(R.r2_sqrt(R2{r(-1), r(0)}), R2{r(0), r(1)}));
  CHECK(R.r2_same(R.r2_sqrt(R2{r(1), r(0)}), R2{r(1), r(0)}));
  const TowerElement h = divalg::sqrt(r(1, 2));
  const R2 q = R.r2_sqrt(R2{r(0), r(1)});
  CHECK(R.r2_same(q, R2{h, h}));
  CHECK(R.r2_same(R.r2_mul(q, q), R2{r(0), r(1)}));

  CHECK(R.r2_same(R.r2_between({r(1), r(0)}, {r(0), r(1)}), R2{r(0), r(1)}));
  CHECK(R.r2_same(R.r2_between({r(3), r(4)}, {r(3), r(4)}), R.r2_identity()));
  CHECK(R.r2_same(R.r2_between({r(0), r(-1)}, {r(1), r(0)}), R2{r(0), r(1)}));
}

TEST_CASE("between maps u to w") {
  gen::Rng rng(41);
  for (int n = 0; n < 300; ++n) {
    const auto [c, s] = gen::rational_circle_point(rng);
    const TowerElement len(rng.nonzero_rational());
    const divalg::Vec2<TowerElement> u{len * TowerElement(rng.rational()), len * TowerElement(rng.rational())};
    if (u[0].is_zero() && u[1].is_zero()) continue;
    const auto w = R.r2_apply(R2{TowerElement(c), TowerElement(s)}, u);
    const R2 b = R.r2_between(u, w);
    CHECK(R.r2_same(b, R2{TowerElement(c), TowerElement(s)}));
  }
}

TEST_CASE("half angle squares back") {
  gen::Rng rng(42);
  bool saw_minus_one = false;
  bool saw_plus_one = false;
  for (int n = 0; n < 1000; ++n) {
    auto [c, s] = gen::rational_circle_point(rng);
    if (n == 0) c = 1, s = 0;
    saw_minus_one |= c == -1;
    saw_plus_one |= c == 1;
    const R2 a{TowerElement(c), TowerElement(s)};
    const R2 h = R.r2_sqrt(a);
    CHECK(R.r2_same(R.r2_mul(h, h), a));
    CHECK(h.c.sign() != divalg::Sign::Negative);
  }
  CHECK(saw_minus_one);
  CHECK(saw_plus_one);
}

TEST_CASE("reflections square to the identity") {
  gen::Rng rng(43);
  for (int n = 0; n < 200; ++n) {
    const auto [c0, s0] = gen::rational_circle_point(rng);
    const TowerElement c(c0), s(s0);
    // [[c, s], [s, −c]] lies in O₂ \ SO₂.
    const std::array<std::array<TowerElement, 2>, 2> f{{{c, s}, {s, -c}}};
    CHECK((f[0][0] * f[1][1] - f[0][1] * f[1][0]) == r(-1));
    for (std::size_t i = 0; i < 2; ++i) {
      for (std::size_t j = 0; j < 2; ++j) {
        const TowerElement e = f[i][0] * f[0][j] + f[i][1] * f[1][j];
        CHECK(e == r(i == j ? 1 : 0));
      }
    }
  }
}

TEST_CASE("conjugation matrix in the standard frame") {
  const auto f = H.frame_complete(H.pure_i());
  CHECK(R.mat_same(R.conj_matrix(H.unit_one(), f), R.identity()));
  CHECK(R.mat_same(R.conj_matrix(H.unit_i(), f), half_turn));
  const TowerElement h = divalg::sqrt(r(1, 2));
  const Quat x{h, h, r(0), r(0)};
  CHECK(R.mat_same(R.conj_matrix(x, f), quarter_turn));
  CHECK(R.mat_same(R.conj_matrix_std(x), quarter_turn));

  try {
    (void)R.conj_matrix(H.unit_j(), f);
    FAIL("expected FrameMismatch");
  } catch (const divalg::Error& e) {
    CHECK(e.code() == ErrorCode::FrameMismatch);
  }
  try {
    (void)R.conj_matrix(H.make(r(1), r(1), r(0), r(0)), f);
    FAIL("expected NotUnit");
  } catch (const divalg::Error& e) {
    CHECK(e.code() == ErrorCode::NotUnit);
  }
}

TEST_CASE("axis and square root examples") {
  const auto a1 = R.axis(R.identity());
  CHECK(a1[0] == r(1));
  CHECK(a1[1].is_zero());
  CHECK(a1[2].is_zero());
  const auto a2 = R.axis(half_turn);
  CHECK(a2[0] == r(1));
  CHECK(a2[1].is_zero());
  CHECK(a2[2].is_zero());
  CHECK(R.mat_same(R.r3_sqrt(half_turn), quarter_turn));
  CHECK(R.mat_same(R.r3_sqrt(R.identity()), R.identity()));
  try {
    (void)R.axis(mat({{-1, 0, 0}, {0, 1, 0}, {0, 0, 1}}));
    FAIL("expected NotSpecialOrthogonal");
  } catch (const divalg::Error& e) {
    CHECK(e.code() == ErrorCode::NotSpecialOrthogonal);
  }
}

TEST_CASE("conjugation matrices are rotations") {
  gen::Rng rng(44);
  for (int n = 0; n < 300; ++n) {
    const Quat x = gen::nonzero_quaternion(rng);
    const M3 a = R.conj_matrix_std(x);
    CHECK(R.is_special_orthogonal(a));
    const auto v = R.axis(a);
    const auto av = R.mat_apply(a, v);
    CHECK(((av[0] - v[0]).is_zero() && (av[1] - v[1]).is_zero() && (av[2] - v[2]).is_zero()));
  }
}

TEST_CASE("square roots of random rotations") {
  gen::Rng rng(45);
  for (int n = 0; n < 200; ++n) {
    const Quat x = gen::nonzero_quaternion(rng, 6, 4);
    const M3 a = R.conj_matrix_std(x);
    const M3 b = R.r3_sqrt(a);
    CHECK(R.is_special_orthogonal(b));
    CHECK(R.mat_same(R.mat_mul(b, b), a));
  }
}

TEST_CASE("same-axis conjugation is a homomorphism") {
  gen::Rng rng(46);
  for (int n = 0; n < 200; ++n) {
    const Pure p = gen::rational_unit_pure(rng, 6, 4);
    const auto f = H.frame_complete(p);
    const auto [c1, s1] = gen::rational_circle_point(rng, 6, 4);
    const auto [c2, s2] = gen::rational_circle_point(rng, 6, 4);
    const Quat x = unit_about(p, c1, s1);
    const Quat y = unit_about(p, c2, s2);
    const M3 lhs = R.conj_matrix(H.mul(x, y), f);
    CHECK(R.mat_same(lhs, R.mat_mul(R.conj_matrix(x, f), R.conj_matrix(y, f))));
  }
}

TEST_CASE("rotations preserve dot products") {
  gen::Rng rng(47);
  for (int n = 0; n < 300; ++n) {
    const M3 a = R.conj_matrix_std(gen::nonzero_quaternion(rng));
    const Pure u = gen::rational_pure(rng);
    const Pure w = gen::rational_pure(rng);
    const auto au = R.mat_apply(a, {u.b, u.c, u.d});
    const auto aw = R.mat_apply(a, {w.b, w.c, w.d});
    CHECK(H.dot(Pure{au[0], au[1], au[2]}, Pure{aw[0], aw[1], aw[2]}) == H.dot(u, w));
  }
}

TEST_CASE("Puiseux half angles") {
  using PM = divalg::PuiseuxModel;
  using PE = divalg::PuiseuxElement;
  const PM m;
  const divalg::Rotations<PM> RP(m);
  const PE x = PE::x();
  // ((1 − x²), 2x)/(1 + x²) lies on the circle over the series field.
  const PE n = m.inv(PE(1) + x * x);
  const divalg::Rot2<PE> a{(PE(1) - x * x) * n, (x + x) * n};
  const auto h = RP.r2_sqrt(a);
  CHECK(RP.r2_same(RP.r2_mul(h, h), a));
  const divalg::Rot2<PE> flip{-a.c, -a.s};
  const auto hf = RP.r2_sqrt(flip);
  CHECK(RP.r2_same(RP.r2_mul(hf, hf), flip));
}
