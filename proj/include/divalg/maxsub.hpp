#pragma once

#include <gmpxx.h>

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

#include "divalg/error.hpp"
#include "divalg/field_model.hpp"
#include "divalg/quaternion.hpp"
#include "divalg/rotations.hpp"

namespace divalg {

enum class Generator { Y, Yinv, J, G0 };

template <class E>
struct WordToken {
  Generator gen;
  Quaternion<E> element{};  // only for G0
  unsigned count = 1;
};

/// A word in y, y⁻¹, j and elements of G₀ (the stabilizer of i). The word
/// is read left to right as a product; acting on i, the rightmost token
/// applies first.
template <class E>
struct GroupWord {
  std::vector<WordToken<E>> tokens;
  std::optional<Quaternion<E>> binding;

  long y_count() const {
    long n = 0;
    for (const auto& t : tokens) {
      if (t.gen == Generator::Y || t.gen == Generator::Yinv) n += t.count;
    }
    return n;
  }
};

template <class E>
struct ClimbStep {
  E latitude_from;
  E latitude_to;
  Quaternion<E> rotor;
  std::string generator;
};

template <class E>
struct ClimbTrace {
  E normalized_c;
  E normalized_s;
  Frame<E> frame;
  std::vector<ClimbStep<E>> steps;
  long step_bound = 0;
  /// False when intermediate descent latitudes are the planner's
  /// approximations rather than exact values (long descents only).
  bool exact_latitudes = true;
};

template <class E>
struct NormalizedY {
  E c, s;
  Frame<E> frame;
  GroupWord<E> pre_word;
  // Internal data of the reduced element ρ(1 + z·j).
  E z_re, z_im, w, sqrt_w;
  bool flipped = false;
};

template <class E>
struct ClimbResult {
  GroupWord<E> word;
  ClimbTrace<E> trace;
};

template <class E>
struct Decomposition {
  GroupWord<E> word;
  Quaternion<E> g0;
};

struct ClimbOptions {
  /// Descents longer than this are refused with PrecisionExhausted.
  long max_steps = 2'000'000;
  /// Traces of at most this many steps carry exact latitudes.
  long exact_trace_steps = 64;
};

namespace detail {

inline mpf_class approx_std(const ConstructibleModel&, const TowerElement& a, unsigned long bits) {
  return mpf_class(approx(a, static_cast<unsigned>(bits + 8)).lo, bits);
}

/// Approximation of the standard part (constant coefficient).
inline mpf_class approx_std(const PuiseuxModel&, const PuiseuxElement& a, unsigned long bits) {
  for (const auto& t : a.terms()) {
    if (t.exp.sign() < 0) throw Error(ErrorCode::PrecisionExhausted, "unbounded element has no standard part");
    if (t.exp.sign() == 0) return mpf_class(approx(t.coeff, static_cast<unsigned>(bits + 8)).lo, bits);
    break;
  }
  return mpf_class(0, bits);
}

inline bool is_odd_prime(long p) {
  if (p < 3 || p % 2 == 0) return false;
  for (long d = 3; d * d <= p; d += 2) {
    if (p % d == 0) return false;
  }
  return true;
}

}  // namespace detail

/**
 * The unit sphere of the standard quaternion algebra over an ordered
 * euclidean field, with the cap Δ of points infinitely near i, the
 * stabilizer G₀ = {α + β·i} of i, and G = {x : x∗i ∈ Δ ∪ −Δ}.
 */
template <FieldModel M>
class Sphere {
 public:
  using Elem = typename M::Elem;
  using Q = Quaternion<Elem>;
  using P = PureQuaternion<Elem>;
  using Word = GroupWord<Elem>;

  explicit Sphere(M model = M{}, ClimbOptions options = {})
      : m_(model), alg_(QuaternionAlgebra<M>::standard(model)), rot_(model), options_(options) {
    if (!alg_.is_division()) throw Error(ErrorCode::NotDivision, "sphere needs a division algebra");
  }

  const M& model() const noexcept { return m_; }
  const QuaternionAlgebra<M>& algebra() const noexcept { return alg_; }

  /// ‖α − i‖² is infinitesimal (no square root needed).
  bool in_delta(const P& alpha) const {
    if (!alg_.is_unit(alpha)) throw Error(ErrorCode::NotUnit, "point is not on the unit sphere");
    return m_.is_infinitesimal(alg_.norm2(alg_.psub(alpha, alg_.pure_i())));
  }

  bool in_g(const Q& x) const {
    const P xi = alg_.act(x, alg_.pure_i());
    return in_delta(xi) || in_delta(alg_.pneg(xi));
  }

  /// g = c₀ + s₀·i with g∗from = to, for points on a common latitude |a| < 1.
  Q g0_move(const P& from, const P& to) const {
    if (!alg_.is_unit(from) || !alg_.is_unit(to)) throw Error(ErrorCode::NotUnit, "points must be unit vectors");
    if (!m_.residual_ok(from.b - to.b)) throw Error(ErrorCode::LatitudeMismatch, "points lie on different latitudes");
    if (sign_or_zero(m_.from_rational(Rational(1)) - from.b * from.b) == Sign::Zero) {
      throw Error(ErrorCode::PoleDegenerate, "latitude is a pole");
    }
    const auto turn = rot_.r2_between({from.c, from.d}, {to.c, to.d});
    const auto half = rot_.r2_sqrt(turn);
    return Q{half.c, half.s, zero(), zero()};
  }

  /// Writes y = α + β·j with α, β ∈ F(i). The word ᾱ·y (or −β̄·y·j when
  /// |β| > |α|) is a scalar multiple of 1 + z·j with |z| ≤ 1; conjugation by
  /// it is the rotation about p = z·j/|z| by the angle with cosine c and
  /// sine s, so c ≥ 0 and s > 0.
  NormalizedY<Elem> normalize_y(const Q& y) const {
    if (in_g(y)) throw Error(ErrorCode::YInG, "y lies in G");
    const Elem na = y.r * y.r + y.s * y.s;
    const Elem nai = m_.inv(na);
    NormalizedY<Elem> out;
    out.z_re = (y.t * y.r + y.u * y.s) * nai;
    out.z_im = (y.u * y.r - y.t * y.s) * nai;
    out.w = (y.t * y.t + y.u * y.u) * nai;
    out.pre_word.binding = y;
    if (sign_or_zero(out.w - one()) == Sign::Positive) {
      const Elem wi = m_.inv(out.w);
      out.z_re = -out.z_re * wi;
      out.z_im = out.z_im * wi;
      out.w = wi;
      out.flipped = true;
      out.pre_word.tokens = {g0_token(Q{-y.t, y.u, zero(), zero()}), {Generator::Y}, {Generator::J}};
    } else {
      out.pre_word.tokens = {g0_token(Q{y.r, -y.s, zero(), zero()}), {Generator::Y}};
    }
    out.sqrt_w = m_.sqrt(out.w);
    const Elem d = m_.inv(one() + out.w);
    out.c = (one() - out.w) * d;
    out.s = (out.sqrt_w + out.sqrt_w) * d;
    const Elem swi = m_.inv(out.sqrt_w);
    const P p{zero(), out.z_re * swi, out.z_im * swi};
    out.frame = Frame<Elem>{p, alg_.pure_i(), alg_.pmul_pure(p, alg_.pure_i())};
    return out;
  }

  /// A word w over {y, y⁻¹, j, G₀} with evaluate(w)∗i = γ.
  ///
  /// Positions are tracked as (a, ẽ, d̃) with a the latitude and ẽ, d̃ the
  /// coordinates along p̃ = z·j and i·p̃ (|p̃|² = w). In these coordinates y'
  /// acts rationally: a ↦ c·a + σ·d̃, d̃ ↦ −σw·a + c·d̃ with σ = 2/(1 + w).
  ClimbResult<Elem> climb(const Q& y, const P& gamma) const {
    if (!alg_.is_unit(gamma)) throw Error(ErrorCode::NotUnit, "target is not a unit vector");
    const NormalizedY<Elem> ny = normalize_y(y);
    const Elem& c = ny.c;
    const Elem& s = ny.s;
    const Elem sigma = (one() + one()) * m_.inv(one() + ny.w);
    const Elem sigma_w = sigma * ny.w;

    const bool flip_target = sign_or_zero(gamma.b) == Sign::Negative;
    const P target = flip_target ? P{-gamma.b, gamma.c, -gamma.d} : gamma;
    const Elem& b = target.b;
    const auto [eg, dg] = tilde_coords(ny, target);

    ClimbResult<Elem> res;
    res.word.binding = y;
    auto& trace = res.trace;
    trace.normalized_c = c;
    trace.normalized_s = s;
    trace.frame = ny.frame;
    trace.step_bound = ceil_of(m_, c * (one() + ny.w) * (one() + ny.w) * m_.inv(m_.from_rational(Rational(4)) * ny.w)) + 3;

    // Rotors in application order; each is followed by one application of y'.
    std::vector<Q> rotors;
    std::vector<Elem> planned;  // latitude after each descent step (planner)
    // Position after the last y', scaled by `scale`.
    Elem scale = one();
    Elem e_end = zero(), d_end = -sigma_w;
    const Sign rel = sign_or_zero(b - c);
    const Q yp = eval_tokens(ny.pre_word.tokens, y);
    const Q yp_proj = projective(yp);
    Q prefix = yp_proj;

    if (rel == Sign::Positive) {
      // One more y' from latitude c reaches b.
      const Elem d = (b - c * c) * m_.inv(sigma);
      const Elem e = m_.sqrt_nonneg(ny.w * (one() - c * c) - d * d);
      rotors.push_back(rotor({zero(), -sigma_w}, {e, d}));
      planned.push_back(b);
      e_end = e;
      d_end = -sigma_w * c + c * d;
    } else if (rel == Sign::Negative) {
      plan_descent(c, s, b, rotors, planned);
      // Exact position after the planned steps, up to the positive scale N.
      std::vector<Q> chain;
      chain.reserve(2 * rotors.size() + 1);
      for (auto it = rotors.rbegin(); it != rotors.rend(); ++it) {
        chain.push_back(yp_proj);
        chain.push_back(*it);
      }
      chain.push_back(yp_proj);
      prefix = product(chain);
      const P x = image_of_i(prefix);
      scale = alg_.nrd(prefix);
      const auto [ex, dx] = tilde_coords(ny, x);
      // Final step lands exactly on b.
      const Elem d = (b * scale - c * x.b) * m_.inv(sigma);
      const Elem e = m_.sqrt_nonneg(ex * ex + dx * dx - d * d);
      rotors.push_back(rotor({ex, dx}, {e, d}));
      planned.push_back(b);
      e_end = e;
      d_end = -sigma_w * x.b + c * d;
    }

    // Positioning on the target latitude.
    std::optional<Q> final_rotor;
    if (sign_or_zero(e_end * e_end + d_end * d_end) != Sign::Zero) {
      const Q g = rotor({e_end, d_end}, {scale * eg, scale * dg});
      if (!is_scalar(g)) final_rotor = g;
    }

    // Assemble the word (left to right) and its value up to a scalar.
    std::vector<WordToken<Elem>> tokens;
    if (flip_target) tokens.push_back({Generator::J});
    if (final_rotor) tokens.push_back(g0_token(*final_rotor));
    for (auto it = rotors.rbegin(); it != rotors.rend(); ++it) {
      tokens.insert(tokens.end(), ny.pre_word.tokens.begin(), ny.pre_word.tokens.end());
      if (!is_scalar(*it)) tokens.push_back(g0_token(*it));
    }
    tokens.insert(tokens.end(), ny.pre_word.tokens.begin(), ny.pre_word.tokens.end());
    res.word.tokens = merge(std::move(tokens));

    Q value = prefix;
    if (rel != Sign::Zero) value = alg_.mul(yp_proj, alg_.mul(rotors.back(), prefix));
    if (final_rotor) value = alg_.mul(*final_rotor, value);
    if (flip_target) value = alg_.mul(alg_.unit_j(), value);
    if (!sends_i_to(value, gamma)) {
      if constexpr (std::is_same_v<M, PuiseuxModel>) {
        throw Error(ErrorCode::PrecisionExhausted, "climb could not be certified at the working order");
      } else {
        throw std::logic_error("climb verification failed");
      }
    }

    fill_trace(trace, ny, yp, rotors, planned);
    return res;
  }

  /// x∗i = γ, decided without inverting x.
  bool sends_i_to(const Q& x, const P& gamma) const {
    if constexpr (std::is_same_v<M, PuiseuxModel>) {
      return alg_.same(alg_.act(x, alg_.pure_i()), gamma);
    } else {
      const P v = image_of_i(x);
      const Elem n = alg_.nrd(x);
      return sign_or_zero(v.b - n * gamma.b) == Sign::Zero && sign_or_zero(v.c - n * gamma.c) == Sign::Zero &&
             sign_or_zero(v.d - n * gamma.d) == Sign::Zero;
    }
  }

  /// x·i·x̄ = Nrd(x)·(x∗i).
  P image_of_i(const Q& x) const {
    const Elem two = one() + one();
    return P{x.r * x.r + x.s * x.s - x.t * x.t - x.u * x.u, two * (x.s * x.t + x.r * x.u),
             two * (x.s * x.u - x.r * x.t)};
  }

  /// A nonzero scalar multiple of x with integral coefficients (constructible
  /// model); conjugation is unchanged.
  Q projective(const Q& x) const {
    if constexpr (std::is_same_v<M, PuiseuxModel>) {
      return x;
    } else {
      mpz_class l = 1;
      for (const Elem* e : {&x.r, &x.s, &x.t, &x.u}) {
        for (const Rational& q : e->coefficients()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
      }
      if (l == 1) return x;
      return alg_.scale(x, m_.from_rational(Rational(l)));
    }
  }

  /// evaluate(w) up to a nonzero scalar, with denominators cleared per token.
  Q word_eval_projective(const Word& w) const {
    std::vector<Q> factors;
    std::optional<Q> y_fwd, y_inv;
    for (const auto& t : w.tokens) {
      Q g;
      switch (t.gen) {
        case Generator::Y:
        case Generator::Yinv:
          if (!w.binding) throw Error(ErrorCode::UnboundGenerator, "word uses y without a binding");
          if (t.gen == Generator::Y) {
            if (!y_fwd) y_fwd = projective(*w.binding);
            g = *y_fwd;
          } else {
            // y⁻¹ is a scalar multiple of ȳ.
            if (!y_inv) y_inv = projective(alg_.conj(*w.binding));
            g = *y_inv;
          }
          break;
        case Generator::J: g = alg_.unit_j(); break;
        case Generator::G0: g = projective(t.element); break;
      }
      for (unsigned k = 0; k < t.count; ++k) factors.push_back(g);
    }
    return product(factors);
  }

  Decomposition<Elem> decompose(const Q& h, const Q& y) const {
    if (m_.sign(alg_.nrd(h)) == Sign::Zero) throw Error(ErrorCode::NotInvertible, "h is not invertible");
    const P hi = alg_.act(h, alg_.pure_i());
    if (alg_.same(hi, alg_.pure_i())) {
      Word empty;
      empty.binding = y;
      return {empty, h};
    }
    ClimbResult<Elem> c = climb(y, hi);
    const Q z = word_eval(c.word);
    return {std::move(c.word), alg_.mul(alg_.inv(z), h)};
  }

  /// Left-to-right product of the bound generators (balanced product tree).
  Q word_eval(const Word& w) const {
    std::vector<Q> factors;
    std::optional<Q> y_inv;
    for (const auto& t : w.tokens) {
      Q g;
      switch (t.gen) {
        case Generator::Y:
        case Generator::Yinv:
          if (!w.binding) throw Error(ErrorCode::UnboundGenerator, "word uses y without a binding");
          if (t.gen == Generator::Y) {
            g = *w.binding;
          } else {
            if (!y_inv) y_inv = alg_.inv(*w.binding);
            g = *y_inv;
          }
          break;
        case Generator::J: g = alg_.unit_j(); break;
        case Generator::G0: g = t.element; break;
      }
      for (unsigned k = 0; k < t.count; ++k) factors.push_back(g);
    }
    return product(factors);
  }

  /// Membership in the normal subgroup {a : v(a) ∈ p·Γ} of index p, with
  /// Γ = ℤ[1/2]; v(x) = v(Nrd x)/2 = n/2^k lies in pΓ exactly when p | n.
  bool normal_index_p_member(const Q& x, long p) const {
    if constexpr (!std::is_same_v<M, PuiseuxModel>) {
      (void)x;
      (void)p;
      throw Error(ErrorCode::WrongModel, "valuation subgroups need the puiseux model");
    } else {
      if (!detail::is_odd_prime(p)) throw Error(ErrorCode::NotPrime, std::to_string(p) + " is not an odd prime");
      const Dyadic v = alg_.nrd(x).valuation().half();
      const Integer n = v.numerator();
      return mpz_divisible_ui_p(n.get_mpz_t(), static_cast<unsigned long>(p)) != 0;
    }
  }

  Q product(const std::vector<Q>& factors) const {
    if (factors.empty()) return alg_.unit_one();
    std::vector<Q> level = factors;
    while (level.size() > 1) {
      std::vector<Q> next;
      next.reserve((level.size() + 1) / 2);
      for (std::size_t k = 0; k + 1 < level.size(); k += 2) next.push_back(alg_.mul(level[k], level[k + 1]));
      if (level.size() % 2 == 1) next.push_back(level.back());
      level = std::move(next);
    }
    return level.front();
  }

  /// Coordinates of a pure quaternion along p and i·p.
  std::pair<Elem, Elem> frame_coords(const NormalizedY<Elem>& ny, const P& x) const {
    const Elem swi = m_.inv(ny.sqrt_w);
    const auto [e, d] = tilde_coords(ny, x);
    return {e * swi, d * swi};
  }

  /// Coordinates along p̃ = z·j and i·p̃, i.e. √w times frame_coords.
  std::pair<Elem, Elem> tilde_coords(const NormalizedY<Elem>& ny, const P& x) const {
    return {x.c * ny.z_re + x.d * ny.z_im, x.d * ny.z_re - x.c * ny.z_im};
  }

 private:
  Elem zero() const { return m_.from_rational(Rational(0)); }
  Elem one() const { return m_.from_rational(Rational(1)); }

  Sign sign_or_zero(const Elem& a) const {
    try {
      return m_.sign(a);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::PrecisionExhausted) throw;
      return Sign::Zero;
    }
  }

  bool is_scalar(const Q& g) const { return sign_or_zero(g.s) == Sign::Zero && sign_or_zero(g.r) == Sign::Positive; }

  static WordToken<Elem> g0_token(Q g) { return WordToken<Elem>{Generator::G0, std::move(g), 1}; }

  static std::vector<WordToken<Elem>> merge(std::vector<WordToken<Elem>> in) {
    std::vector<WordToken<Elem>> out;
    for (auto& t : in) {
      if (!out.empty() && t.gen != Generator::G0 && out.back().gen == t.gen) {
        out.back().count += t.count;
      } else {
        out.push_back(std::move(t));
      }
    }
    return out;
  }

  Q eval_tokens(const std::vector<WordToken<Elem>>& tokens, const Q& y) const {
    Word w;
    w.tokens = tokens;
    w.binding = y;
    return word_eval(w);
  }

  /// The G₀ element (ρ² + P·Q) + (P×Q)·i turning P into Q (equal lengths);
  /// it is the half-angle rotor, unnormalized.
  Q rotor(const std::pair<Elem, Elem>& from, const std::pair<Elem, Elem>& to) const {
    const Elem rho2 = from.first * from.first + from.second * from.second;
    const Elem re = rho2 + from.first * to.first + from.second * to.second;
    const Elem im = from.first * to.second - from.second * to.first;
    if (sign_or_zero(re) == Sign::Zero && sign_or_zero(im) == Sign::Zero) return alg_.unit_i();
    return Q{re, im, zero(), zero()};
  }

  /// Plans the descent from latitude c toward b < c with floating-point
  /// tracking. Every step aims at a − s² + μ, and the loop stops once b lies
  /// in [a − s² + μ/2, a], leaving the exact final step to the caller. The
  /// rotors are dyadic G₀ elements so no radicals are introduced.
  void plan_descent(const Elem& c, const Elem& s, const Elem& b, std::vector<Q>& rotors,
                    std::vector<Elem>& planned) const {
    const mpf_class c0 = detail::approx_std(m_, c, 64);
    const mpf_class s0 = detail::approx_std(m_, s, 64);
    const double kd = std::ceil(mpf_class(c0 / (s0 * s0)).get_d());
    if (!(kd <= static_cast<double>(options_.max_steps))) {
      throw Error(ErrorCode::PrecisionExhausted, "descent needs more than " + std::to_string(options_.max_steps) +
                                                    " steps");
    }
    const long k = static_cast<long>(kd);
    const unsigned long prec = 128 + 4 * static_cast<unsigned long>(std::log2(static_cast<double>(k + 2)) + 1);
    const mpf_class ca = detail::approx_std(m_, c, prec);
    const mpf_class sa = detail::approx_std(m_, s, prec);
    const mpf_class ba = detail::approx_std(m_, b, prec);
    const mpf_class s2 = sa * sa;
    const mpf_class mu(s2 / (4 * (k + 2)), prec);
    const double bits = std::log2(32.0 * static_cast<double>(k + 2) / sa.get_d());
    const unsigned long shift = std::max(8UL, static_cast<unsigned long>(std::ceil(bits)) + 1);
    mpz_class scale_z = 1;
    scale_z <<= shift;
    const mpf_class scale(scale_z, prec);

    mpf_class a(ca, prec), e(0, prec), d(-sa, prec);
    const mpf_class half_mu(mu / 2, prec);
    while (a - s2 + half_mu > ba) {
      if (static_cast<long>(rotors.size()) >= options_.max_steps) {
        throw Error(ErrorCode::PrecisionExhausted, "descent exceeded the step limit");
      }
      const mpf_class next(a - s2 + mu, prec);
      const mpf_class dt((next - ca * a) / sa, prec);
      const mpf_class rho2(e * e + d * d, prec);
      mpf_class et2(rho2 - dt * dt, prec);
      if (et2 < 0) et2 = 0;
      const mpf_class et = sqrt(et2);
      const mpf_class dot(e * et + d * dt, prec);
      const mpf_class cross(e * dt - d * et, prec);
      mpz_class alpha, beta;
      if (dot >= 0) {
        const mpf_class t(cross / (rho2 + dot), prec);
        alpha = scale_z;
        beta = mpz_class(floor(t * scale + 0.5));
      } else {
        const mpf_class t = cross == 0 ? mpf_class(0, prec) : mpf_class((rho2 + dot) / cross, prec);
        alpha = mpz_class(floor(t * scale + 0.5));
        beta = scale_z;
      }
      const mpz_class g = gcd(alpha, beta);
      if (g > 1) {
        alpha /= g;
        beta /= g;
      }
      // Apply the exact rotor to the tracked point, then y'.
      const mpf_class af(alpha, prec), bf(beta, prec);
      const mpf_class n(af * af + bf * bf, prec);
      const mpf_class cr((af * af - bf * bf) / n, prec), sr(2 * af * bf / n, prec);
      const mpf_class e1(e * cr - d * sr, prec), d1(e * sr + d * cr, prec);
      const mpf_class a2(ca * a + sa * d1, prec), d2(-sa * a + ca * d1, prec);
      a = a2;
      e = e1;
      d = d2;
      rotors.push_back(Q{m_.from_rational(Rational(alpha)), m_.from_rational(Rational(beta)), zero(), zero()});
      planned.push_back(m_.from_rational(Rational(mpq_class(a))));
    }
  }

  void fill_trace(ClimbTrace<Elem>& trace, const NormalizedY<Elem>& ny, const Q& yp, const std::vector<Q>& rotors,
                  const std::vector<Elem>& planned) const {
    const std::string label = ny.flipped ? "y'=g0*y*j" : "y'=g0*y";
    trace.steps.push_back({one(), ny.c, alg_.unit_one(), label});
    const bool exact = static_cast<long>(rotors.size()) <= options_.exact_trace_steps;
    trace.exact_latitudes = exact || rotors.size() <= 1;
    Q w = yp;
    Elem from = ny.c;
    for (std::size_t k = 0; k < rotors.size(); ++k) {
      Elem to = planned[k];
      if (exact && k + 1 < rotors.size()) {
        w = alg_.mul(yp, alg_.mul(rotors[k], w));
        to = alg_.act(w, alg_.pure_i()).b;
      }
      trace.steps.push_back({from, to, rotors[k], label});
      from = to;
    }
  }

  M m_;
  QuaternionAlgebra<M> alg_;
  Rotations<M> rot_;
  ClimbOptions options_;
};

/// Token list such as "J G0(r,s,t,u) Y^2"; coordinates use the model's
/// rendering.
template <FieldModel M>
std::string word_to_string(const M& m, const GroupWord<typename M::Elem>& w) {
  std::string out;
  for (const auto& t : w.tokens) {
    if (!out.empty()) out += ' ';
    switch (t.gen) {
      case Generator::Y: out += "Y"; break;
      case Generator::Yinv: out += "Yinv"; break;
      case Generator::J: out += "J"; break;
      case Generator::G0:
        out += "G0(" + m.to_string(t.element.r) + "," + m.to_string(t.element.s) + "," + m.to_string(t.element.t) +
               "," + m.to_string(t.element.u) + ")";
        break;
    }
    if (t.count > 1) out += "^" + std::to_string(t.count);
  }
  return out;
}

}  // namespace divalg
