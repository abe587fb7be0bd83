#pragma once

#include <array>

#include "divalg/quaternion.hpp"

namespace divalg {

/// The rotation [[c, −s], [s, c]] with c² + s² = 1.
template <class E>
struct Rot2 {
  E c, s;
};

template <class E>
using Vec2 = std::array<E, 2>;
template <class E>
using Vec3 = std::array<E, 3>;
template <class E>
using Mat3 = std::array<std::array<E, 3>, 3>;

template <FieldModel M>
class Rotations {
 public:
  using Elem = typename M::Elem;
  using R2 = Rot2<Elem>;
  using V3 = Vec3<Elem>;
  using M3 = Mat3<Elem>;

  explicit Rotations(M model = M{}) : m_(std::move(model)) {}
  const M& model() const noexcept { return m_; }

  Elem zero() const { return m_.from_rational(Rational(0)); }
  Elem one() const { return m_.from_rational(Rational(1)); }

  R2 r2_identity() const { return R2{one(), zero()}; }

  R2 r2_mul(const R2& a, const R2& b) const { return R2{a.c * b.c - a.s * b.s, a.s * b.c + a.c * b.s}; }

  Vec2<Elem> r2_apply(const R2& a, const Vec2<Elem>& v) const {
    return {a.c * v[0] - a.s * v[1], a.s * v[0] + a.c * v[1]};
  }

  /// Half angle with the nonnegative cosine branch; (−1, 0) ↦ (0, 1).
  R2 r2_sqrt(const R2& a) const {
    const Elem c1 = a.c + one();
    if (m_.sign(c1) == Sign::Zero) return R2{zero(), one()};
    const Elem h = m_.sqrt(c1 * m_.from_rational(Rational(1, 2)));
    return R2{h, a.s * m_.inv(h + h)};
  }

  /// The rotation taking u to w, for vectors of equal (nonzero) length.
  R2 r2_between(const Vec2<Elem>& u, const Vec2<Elem>& w) const {
    const Elem n = u[0] * u[0] + u[1] * u[1];
    const Elem ni = m_.inv(n);
    return R2{(u[0] * w[0] + u[1] * w[1]) * ni, (u[0] * w[1] - u[1] * w[0]) * ni};
  }

  bool r2_same(const R2& a, const R2& b) const { return m_.residual_ok(a.c - b.c) && m_.residual_ok(a.s - b.s); }

  M3 identity() const {
    M3 out{{{zero(), zero(), zero()}, {zero(), zero(), zero()}, {zero(), zero(), zero()}}};
    for (std::size_t i = 0; i < 3; ++i) out[i][i] = one();
    return out;
  }

  M3 mat_mul(const M3& a, const M3& b) const {
    M3 out = identity();
    for (std::size_t i = 0; i < 3; ++i) {
      for (std::size_t j = 0; j < 3; ++j) {
        out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j] + a[i][2] * b[2][j];
      }
    }
    return out;
  }

  M3 transpose(const M3& a) const {
    M3 out = a;
    for (std::size_t i = 0; i < 3; ++i) {
      for (std::size_t j = 0; j < 3; ++j) out[i][j] = a[j][i];
    }
    return out;
  }

  V3 mat_apply(const M3& a, const V3& v) const {
    return {a[0][0] * v[0] + a[0][1] * v[1] + a[0][2] * v[2], a[1][0] * v[0] + a[1][1] * v[1] + a[1][2] * v[2],
            a[2][0] * v[0] + a[2][1] * v[1] + a[2][2] * v[2]};
  }

  Elem det(const M3& a) const {
    return a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
           a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
  }

  bool mat_same(const M3& a, const M3& b) const {
    for (std::size_t i = 0; i < 3; ++i) {
      for (std::size_t j = 0; j < 3; ++j) {
        if (!m_.residual_ok(a[i][j] - b[i][j])) return false;
      }
    }
    return true;
  }

  bool is_special_orthogonal(const M3& a) const {
    return mat_same(mat_mul(transpose(a), a), identity()) && m_.residual_ok(det(a) - one());
  }

  /// Conjugation by a unit x = c + s·p in the frame coordinates (p, q, r).
  M3 conj_matrix(const Quaternion<Elem>& x, const Frame<Elem>& frame) const {
    const auto alg = QuaternionAlgebra<M>::standard(m_);
    if (!m_.residual_ok(alg.nrd(x) - one())) throw Error(ErrorCode::NotUnit, "conjugating element is not a unit");
    const PureQuaternion<Elem> pure{x.s, x.t, x.u};
    const Elem s = alg.dot(pure, frame.p);
    if (!alg.same(pure, alg.pscale(frame.p, s))) {
      throw Error(ErrorCode::FrameMismatch, "pure part is not parallel to the frame axis");
    }
    const Elem& c = x.r;
    const Elem cc = c * c - s * s;
    const Elem cs = c * s + c * s;
    M3 out = identity();
    out[1][1] = cc;
    out[1][2] = -cs;
    out[2][1] = cs;
    out[2][2] = cc;
    return out;
  }

  /// Conjugation by any invertible x in the basis (i, j, k); column t is x∗eₜ.
  M3 conj_matrix_std(const Quaternion<Elem>& x) const {
    const auto alg = QuaternionAlgebra<M>::standard(m_);
    M3 out = identity();
    const std::array<PureQuaternion<Elem>, 3> basis{alg.pure_i(), alg.pure_j(), alg.pure_k()};
    for (std::size_t t = 0; t < 3; ++t) {
      const auto col = alg.act(x, basis[t]);
      out[0][t] = col.b;
      out[1][t] = col.c;
      out[2][t] = col.d;
    }
    return out;
  }

  /// Unit v with A·v = v. (A − I)v = 0 is solved by fraction-free
  /// elimination; the smallest-index free variable is set to 1.
  V3 axis(const M3& a) const {
    if (!is_special_orthogonal(a)) throw Error(ErrorCode::NotSpecialOrthogonal, "axis of a non-rotation");
    M3 e = a;
    for (std::size_t i = 0; i < 3; ++i) e[i][i] = e[i][i] - one();
    std::array<int, 3> pivot_col{-1, -1, -1};
    std::size_t row = 0;
    for (std::size_t col = 0; col < 3 && row < 3; ++col) {
      std::size_t p = row;
      while (p < 3 && m_.sign(e[p][col]) == Sign::Zero) ++p;
      if (p == 3) continue;
      std::swap(e[p], e[row]);
      for (std::size_t r = 0; r < 3; ++r) {
        if (r == row || m_.sign(e[r][col]) == Sign::Zero) continue;
        const Elem f = e[r][col];
        const Elem piv = e[row][col];
        for (std::size_t k = 0; k < 3; ++k) e[r][k] = piv * e[r][k] - f * e[row][k];
      }
      pivot_col[row] = static_cast<int>(col);
      ++row;
    }
    std::array<bool, 3> is_pivot{false, false, false};
    for (std::size_t r = 0; r < row; ++r) is_pivot[static_cast<std::size_t>(pivot_col[r])] = true;
    std::size_t free_col = 0;
    while (is_pivot[free_col]) ++free_col;
    V3 v{zero(), zero(), zero()};
    v[free_col] = one();
    // Row r reads e[r][pc]·v[pc] + e[r][free]·1 = 0 (other free variables are 0).
    for (std::size_t r = 0; r < row; ++r) {
      const auto pc = static_cast<std::size_t>(pivot_col[r]);
      v[pc] = -e[r][free_col] * m_.inv(e[r][pc]);
    }
    const Elem n = m_.sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
    const Elem ni = m_.inv(n);
    return {v[0] * ni, v[1] * ni, v[2] * ni};
  }

  /// B ∈ SO₃ with B·B = A: rotate into an axis-adapted frame, halve the
  /// angle of the 2×2 block, rotate back.
  M3 r3_sqrt(const M3& a) const {
    const V3 v = axis(a);
    const auto alg = QuaternionAlgebra<M>::standard(m_);
    const PureQuaternion<Elem> pv{v[0], v[1], v[2]};
    const Frame<Elem> f = alg.frame_complete(pv);
    // Columns of V: v, v2, v3 = v × v2.
    M3 vm = identity();
    const std::array<PureQuaternion<Elem>, 3> cols{f.p, f.q, alg.cross(f.p, f.q)};
    for (std::size_t t = 0; t < 3; ++t) {
      vm[0][t] = cols[t].b;
      vm[1][t] = cols[t].c;
      vm[2][t] = cols[t].d;
    }
    const M3 block = mat_mul(transpose(vm), mat_mul(a, vm));
    const R2 half = r2_sqrt(R2{block[1][1], block[2][1]});
    M3 hb = identity();
    hb[1][1] = half.c;
    hb[1][2] = -half.s;
    hb[2][1] = half.s;
    hb[2][2] = half.c;
    return mat_mul(vm, mat_mul(hb, transpose(vm)));
  }

 private:
  M m_;
};

}  // namespace divalg
