#pragma once

#include <string>

#include "divalg/error.hpp"
#include "divalg/field_model.hpp"

namespace divalg {

/// r + s·i + t·j + u·k.
template <class E>
struct Quaternion {
  E r, s, t, u;
};

/// The purely imaginary element b·i + c·j + d·k.
template <class E>
struct PureQuaternion {
  E b, c, d;
};

/// Orthonormal base (p, q, r) of the pure quaternions with r = p·q.
template <class E>
struct Frame {
  PureQuaternion<E> p, q, r;
};

enum class QuatOp { Add, Mul, Conj, Inv };

/**
 * The symbol algebra (a, b / F) with i² = a, j² = b, k = ij = −ji, over a
 * field model. Geometry (dot, cross, frames, rotations) is only defined for
 * the standard algebra (−1, −1), where Nrd is the squared euclidean norm.
 */
template <FieldModel M>
class QuaternionAlgebra {
 public:
  using Elem = typename M::Elem;
  using Q = Quaternion<Elem>;
  using P = PureQuaternion<Elem>;

  QuaternionAlgebra(M model, Elem a, Elem b) : m_(std::move(model)), a_(std::move(a)), b_(std::move(b)) {
    if (m_.sign(a_) == Sign::Zero || m_.sign(b_) == Sign::Zero) {
      throw Error(ErrorCode::WrongAlgebra, "symbol entries must be nonzero");
    }
    standard_ = m_.sign(a_ + one()) == Sign::Zero && m_.sign(b_ + one()) == Sign::Zero;
  }

  static QuaternionAlgebra standard(M model = M{}) {
    Elem minus_one = model.from_rational(Rational(-1));
    return QuaternionAlgebra(std::move(model), minus_one, minus_one);
  }

  const M& model() const noexcept { return m_; }
  const Elem& a() const noexcept { return a_; }
  const Elem& b() const noexcept { return b_; }
  bool is_standard() const noexcept { return standard_; }

  /// Over a euclidean field every nonzero entry is ± a square, so (a, b) is
  /// a division algebra exactly when both entries are negative.
  bool is_division() const { return m_.sign(a_) == Sign::Negative && m_.sign(b_) == Sign::Negative; }

  Elem zero() const { return m_.from_rational(Rational(0)); }
  Elem one() const { return m_.from_rational(Rational(1)); }

  Q make(const Elem& r, const Elem& s, const Elem& t, const Elem& u) const { return Q{r, s, t, u}; }
  Q scalar(const Elem& r) const { return Q{r, zero(), zero(), zero()}; }
  Q unit_one() const { return scalar(one()); }
  Q unit_i() const { return Q{zero(), one(), zero(), zero()}; }
  Q unit_j() const { return Q{zero(), zero(), one(), zero()}; }
  Q unit_k() const { return Q{zero(), zero(), zero(), one()}; }
  Q from_pure(const P& p) const { return Q{zero(), p.b, p.c, p.d}; }
  P pure_i() const { return P{one(), zero(), zero()}; }
  P pure_j() const { return P{zero(), one(), zero()}; }
  P pure_k() const { return P{zero(), zero(), one()}; }

  Q add(const Q& x, const Q& y) const { return Q{x.r + y.r, x.s + y.s, x.t + y.t, x.u + y.u}; }
  Q sub(const Q& x, const Q& y) const { return Q{x.r - y.r, x.s - y.s, x.t - y.t, x.u - y.u}; }
  Q neg(const Q& x) const { return Q{-x.r, -x.s, -x.t, -x.u}; }
  Q scale(const Q& x, const Elem& c) const { return Q{c * x.r, c * x.s, c * x.t, c * x.u}; }
  Q conj(const Q& x) const { return Q{x.r, -x.s, -x.t, -x.u}; }

  Q mul(const Q& x, const Q& y) const {
    const Elem ab = a_ * b_;
    return Q{
        x.r * y.r + a_ * x.s * y.s + b_ * x.t * y.t - ab * x.u * y.u,
        x.r * y.s + x.s * y.r - b_ * x.t * y.u + b_ * x.u * y.t,
        x.r * y.t + x.t * y.r + a_ * x.s * y.u - a_ * x.u * y.s,
        x.r * y.u + x.u * y.r + x.s * y.t - x.t * y.s,
    };
  }

  /// r² − a·s² − b·t² + a·b·u².
  Elem nrd(const Q& x) const {
    return x.r * x.r - a_ * x.s * x.s - b_ * x.t * x.t + a_ * b_ * x.u * x.u;
  }

  Q inv(const Q& x) const {
    const Elem n = nrd(x);
    if (m_.sign(n) == Sign::Zero) throw Error(ErrorCode::NotInvertible, "reduced norm is zero");
    return scale(conj(x), m_.inv(n));
  }

  Q arith(QuatOp op, const Q& x, const Q& y) const {
    switch (op) {
      case QuatOp::Add: return add(x, y);
      case QuatOp::Mul: return mul(x, y);
      case QuatOp::Conj: return conj(x);
      case QuatOp::Inv: return inv(x);
    }
    throw std::invalid_argument("unknown quaternion op");
  }

  struct TrdPure {
    Elem trd;
    P pure;
    bool in_P;
  };

  TrdPure trd_pure(const Q& x) const {
    Elem trd = x.r + x.r;
    const bool in_p = m_.sign(trd) == Sign::Zero;
    return {std::move(trd), P{x.s, x.t, x.u}, in_p};
  }

  /// x·y·x⁻¹.
  Q conj_action(const Q& x, const Q& y) const { return mul(mul(x, y), inv(x)); }

  /// x∗α for pure α, computed as x·α·x̄ / Nrd(x).
  P act(const Q& x, const P& alpha) const {
    const Q v = mul(mul(x, from_pure(alpha)), conj(x));
    const Elem n = nrd(x);
    if (m_.sign(n) == Sign::Zero) throw Error(ErrorCode::NotInvertible, "reduced norm is zero");
    const Elem ni = m_.inv(n);
    return P{v.s * ni, v.t * ni, v.u * ni};
  }

  // Geometry on the pure part of (−1, −1).

  Elem dot(const P& x, const P& y) const {
    require_standard();
    return x.b * y.b + x.c * y.c + x.d * y.d;
  }
  P cross(const P& x, const P& y) const {
    require_standard();
    return P{x.c * y.d - x.d * y.c, x.d * y.b - x.b * y.d, x.b * y.c - x.c * y.b};
  }
  Elem norm2(const P& x) const { return dot(x, x); }

  P padd(const P& x, const P& y) const { return P{x.b + y.b, x.c + y.c, x.d + y.d}; }
  P psub(const P& x, const P& y) const { return P{x.b - y.b, x.c - y.c, x.d - y.d}; }
  P pneg(const P& x) const { return P{-x.b, -x.c, -x.d}; }
  P pscale(const P& x, const Elem& c) const { return P{c * x.b, c * x.c, c * x.d}; }
  /// Pure part of the product of two pure quaternions (their product has
  /// scalar part −x·y).
  P pmul_pure(const P& x, const P& y) const {
    const Q v = mul(from_pure(x), from_pure(y));
    return P{v.s, v.t, v.u};
  }

  bool is_unit(const P& x) const { return m_.residual_ok(norm2(x) - one()); }
  P normalize(const P& x) const { return pscale(x, m_.inv(m_.sqrt(norm2(x)))); }

  /// Completes a unit p to a frame (p, q, p·q): q is the normalized
  /// projection of the first of j, k, i that is not parallel to p.
  Frame<Elem> frame_complete(const P& p) const {
    require_standard();
    if (!is_unit(p)) throw Error(ErrorCode::NotUnit, "frame axis is not a unit vector");
    for (const P& v : {pure_j(), pure_k(), pure_i()}) {
      const P w = psub(v, pscale(p, dot(v, p)));
      if (m_.sign(norm2(w)) == Sign::Zero) continue;
      const P q = normalize(w);
      return Frame<Elem>{p, q, pmul_pure(p, q)};
    }
    throw Error(ErrorCode::NotUnit, "no direction orthogonal to the frame axis");
  }

  /// A unit x with x∗i = γ: the half-angle rotation about i × γ.
  Q rotate_to(const P& gamma) const {
    require_standard();
    if (!is_unit(gamma)) throw Error(ErrorCode::NotUnit, "target is not a unit vector");
    if (m_.sign(gamma.c) == Sign::Zero && m_.sign(gamma.d) == Sign::Zero) {
      return m_.sign(gamma.b) == Sign::Positive ? unit_one() : unit_j();
    }
    const P p = normalize(cross(pure_i(), gamma));
    const P r = pmul_pure(p, pure_i());
    const Elem c1 = dot(gamma, pure_i());
    const Elem s1 = dot(gamma, r);
    // Half angle: c0 = √((1 + c1)/2), s0 = s1/(2·c0); c1 > −1 here.
    const Elem c0 = m_.sqrt((one() + c1) * m_.from_rational(Rational(1, 2)));
    const Elem s0 = s1 * m_.inv(c0 + c0);
    return add(scalar(c0), scale(from_pure(p), s0));
  }

  /// Componentwise verification: every coordinate of x − y passes residual_ok.
  bool same(const Q& x, const Q& y) const {
    const Q d = sub(x, y);
    return m_.residual_ok(d.r) && m_.residual_ok(d.s) && m_.residual_ok(d.t) && m_.residual_ok(d.u);
  }
  bool same(const P& x, const P& y) const {
    const P d = psub(x, y);
    return m_.residual_ok(d.b) && m_.residual_ok(d.c) && m_.residual_ok(d.d);
  }

  std::string to_string(const Q& x) const {
    return "(" + m_.to_string(x.r) + ", " + m_.to_string(x.s) + ", " + m_.to_string(x.t) + ", " +
           m_.to_string(x.u) + ")";
  }
  std::string to_string(const P& x) const {
    return "(" + m_.to_string(x.b) + ", " + m_.to_string(x.c) + ", " + m_.to_string(x.d) + ")";
  }

 private:
  void require_standard() const {
    if (!standard_) throw Error(ErrorCode::WrongAlgebra, "geometry requires the algebra (-1,-1)");
  }

  M m_;
  Elem a_;
  Elem b_;
  bool standard_ = false;
};

}  // namespace divalg
