#include "divalg/verify.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <stdexcept>
#include <thread>

#include "divalg/ck1.hpp"
#include "divalg/cyclic_algebra.hpp"
#include "divalg/generators.hpp"
#include "divalg/maxsub.hpp"
#include "divalg/rotations.hpp"

namespace divalg {
namespace {

class Tally {
 public:
  /// Records one sample; `describe` is only called for the first failure.
  template <class Describe>
  void record(bool ok, Describe&& describe) {
    ++total_;
    if (ok) {
      ++passed_;
    } else if (first_.empty()) {
      first_ = describe();
      if (first_.empty()) first_ = "(no description)";
    }
  }

  /// Runs f, counting a library error as a failed sample.
  template <class F, class Describe>
  void guard(F&& f, Describe&& describe) {
    try {
      const bool ok = f();
      record(ok, describe);
    } catch (const std::exception& e) {
      record(false, [&] { return describe() + ": " + e.what(); });
    }
  }

  long passed() const { return passed_; }
  long total() const { return total_; }
  const std::string& first() const { return first_; }

 private:
  long passed_ = 0, total_ = 0;
  std::string first_;
};

struct Ctx {
  gen::Rng& rng;
  const SuiteOptions& opt;

  /// n scaled by the sample factor, at least 1.
  long count(long n) const { return std::max(1L, std::lround(static_cast<double>(n) * opt.scale)); }
};

using CheckFn = std::function<void(Tally&, Ctx&)>;

struct CheckDef {
  std::string name;
  CheckFn run;
};

using CModel = ConstructibleModel;
using PModel = PuiseuxModel;
using TE = TowerElement;
using PE = PuiseuxElement;
using CQ = Quaternion<TE>;
using CP = PureQuaternion<TE>;
using PQ = Quaternion<PE>;
using PP = PureQuaternion<PE>;

TE r(long n, long d = 1) { return TE(Rational(n, d)); }

const QuaternionAlgebra<CModel>& std_alg() {
  static const QuaternionAlgebra<CModel> h = QuaternionAlgebra<CModel>::standard();
  return h;
}

bool is_zero_q(const CQ& x) { return x.r.is_zero() && x.s.is_zero() && x.t.is_zero() && x.u.is_zero(); }

// Independent oracle for x∗i = γ: x·i·x̄ computed by quaternion products and
// compared with Nrd(x)·γ coordinate by coordinate.
template <FieldModel M>
bool oracle_sends_i_to(const QuaternionAlgebra<M>& h, const Quaternion<typename M::Elem>& x,
                       const PureQuaternion<typename M::Elem>& gamma) {
  const auto xi = h.mul(h.mul(x, h.unit_i()), h.conj(x));
  const auto n = h.nrd(x);
  const auto& m = h.model();
  return m.residual_ok(xi.r) && m.residual_ok(xi.s - n * gamma.b) && m.residual_ok(xi.t - n * gamma.c) &&
         m.residual_ok(xi.u - n * gamma.d);
}

// ---------------------------------------------------------------- fields

std::vector<CheckDef> fields_checks() {
  std::vector<CheckDef> out;
  out.push_back({"field axioms", [](Tally& t, Ctx& c) {
                   gen::TowerPool pool;
                   for (long n = 0, N = c.count(10000); n < N; ++n) {
                     const TE a = pool.element(c.rng), b = pool.element(c.rng), d = pool.element(c.rng);
                     t.guard(
                         [&] {
                           bool ok = (((a + b) + d) - (a + (b + d))).is_zero() &&
                                     (((a * b) * d) - (a * (b * d))).is_zero() &&
                                     ((a * (b + d)) - (a * b + a * d)).is_zero();
                           if (ok && n % 10 == 0 && !a.is_zero()) ok = (a * (TE(1) / a) - TE(1)).is_zero();
                           return ok;
                         },
                         [&] { return "a = " + a.to_sexpr() + ", b = " + b.to_sexpr() + ", c = " + d.to_sexpr(); });
                   }
                 }});
  out.push_back({"order compatibility", [](Tally& t, Ctx& c) {
                   gen::TowerPool pool;
                   for (long n = 0, N = c.count(1000); n < N; ++n) {
                     TE a = pool.element(c.rng), b = pool.element(c.rng);
                     const TE d = pool.element(c.rng);
                     t.guard(
                         [&] {
                           if (a > b) std::swap(a, b);
                           bool ok = a == b || a + d < b + d;
                           const TE pa = abs(a), pb = abs(b);
                           if (!pa.is_zero() && !pb.is_zero()) ok = ok && (pa * pb).sign() == Sign::Positive;
                           return ok;
                         },
                         [&] { return "a = " + a.to_sexpr() + ", b = " + b.to_sexpr(); });
                   }
                 }});
  out.push_back({"trichotomy and approximation brackets", [](Tally& t, Ctx& c) {
                   gen::TowerPool pool;
                   for (long n = 0, N = c.count(1000); n < N; ++n) {
                     const TE a = pool.element(c.rng), b = pool.element(c.rng);
                     t.guard(
                         [&] {
                           const Sign s = (a - b).sign();
                           const int relations = int(a < b) + int(a == b) + int(a > b);
                           const auto iv = approx(a - b, 20);
                           bool ok = relations == 1;
                           if (sgn(iv.lo) > 0) ok = ok && s == Sign::Positive;
                           if (sgn(iv.hi) < 0) ok = ok && s == Sign::Negative;
                           return ok;
                         },
                         [&] { return "a = " + a.to_sexpr() + ", b = " + b.to_sexpr(); });
                   }
                 }});
  out.push_back({"sqrt soundness", [](Tally& t, Ctx& c) {
                   gen::TowerPool pool;
                   for (long n = 0, N = c.count(1000); n < N; ++n) {
                     const TE a = abs(pool.element(c.rng, 2));
                     t.guard(
                         [&] {
                           const TE s = sqrt(a);
                           return (s * s - a).is_zero() && s.sign() != Sign::Negative;
                         },
                         [&] { return "a = " + a.to_sexpr(); });
                   }
                 }});
  out.push_back({"square classes", [](Tally& t, Ctx& c) {
                   gen::TowerPool pool;
                   for (long n = 0, N = c.count(1000); n < N; ++n) {
                     const TE a = pool.nonzero(c.rng, 2);
                     t.guard(
                         [&] {
                           int admits = 0;
                           for (const TE& v : {a, -a}) {
                             try {
                               (void)sqrt(v);
                               ++admits;
                             } catch (const Error& e) {
                               if (e.code() != ErrorCode::NegativeRadicand) throw;
                             }
                           }
                           return admits == 1;
                         },
                         [&] { return "a = " + a.to_sexpr(); });
                   }
                 }});
  out.push_back({"s-expression round trip", [](Tally& t, Ctx& c) {
                   gen::TowerPool pool;
                   for (long n = 0, N = c.count(1000); n < N; ++n) {
                     const TE a = pool.element(c.rng);
                     t.guard([&] { return TE::from_sexpr(a.to_sexpr()) == a; }, [&] { return a.to_sexpr(); });
                   }
                 }});
  out.push_back({"series valuation axioms", [](Tally& t, Ctx& c) {
                   for (long n = 0, N = c.count(10000); n < N; ++n) {
                     const PE a = gen::random_series(c.rng), b = gen::random_series(c.rng);
                     t.guard(
                         [&] {
                           bool ok = (a * b).valuation() == a.valuation() + b.valuation();
                           const PE s = a + b;
                           if (!s.is_exact_zero()) {
                             const Dyadic m = std::min(a.valuation(), b.valuation());
                             ok = ok && !(s.valuation() < m);
                             if (a.valuation() != b.valuation()) ok = ok && s.valuation() == m;
                           }
                           return ok;
                         },
                         [&] { return "a = " + a.to_string() + ", b = " + b.to_string(); });
                   }
                 }});
  out.push_back({"valuation ring and maximal ideal", [](Tally& t, Ctx& c) {
                   for (long n = 0, N = c.count(1000); n < N; ++n) {
                     const PE a = gen::random_series(c.rng), b = gen::random_series(c.rng);
                     t.guard(
                         [&] {
                           bool ok = classify(a).bounded || classify(inv(a, Dyadic(16))).bounded;
                           if (classify(a).infinitesimal && classify(b).bounded) {
                             ok = ok && classify(a * b).infinitesimal;
                           }
                           return ok;
                         },
                         [&] { return "a = " + a.to_string() + ", b = " + b.to_string(); });
                   }
                 }});
  out.push_back({"series ordering compatibility", [](Tally& t, Ctx& c) {
                   for (long n = 0, N = c.count(1000); n < N; ++n) {
                     PE a = gen::random_series(c.rng), b = gen::random_series(c.rng);
                     const PE d = gen::random_series(c.rng, true);
                     t.guard(
                         [&] {
                           const Sign s = (a - b).sign();
                           if (s == Sign::Positive) std::swap(a, b);
                           bool ok = s == Sign::Zero || ((b + d) - (a + d)).sign() == Sign::Positive;
                           if (a.sign() == b.sign() && a.sign() != Sign::Zero) {
                             ok = ok && (a * b).sign() == Sign::Positive;
                           }
                           return ok;
                         },
                         [&] { return "a = " + a.to_string() + ", b = " + b.to_string(); });
                   }
                 }});
  out.push_back({"series inverse and square root round trips", [](Tally& t, Ctx& c) {
                   // a vanishes through order + shift; exact results must vanish exactly.
                   auto vanishes_to = [](const PE& a, const Order& order, const Dyadic& shift) {
                     if (a.is_exact_zero()) return true;
                     if (!order) return false;
                     const Dyadic bound = *order + shift;
                     if (a.is_certified_nonzero()) return !(a.valuation() < bound);
                     return !(*a.order() < bound);
                   };
                   for (long n = 0, N = c.count(1000); n < N; ++n) {
                     PE a = gen::random_series(c.rng);
                     t.guard(
                         [&] {
                           const Dyadic v = a.valuation();
                           const PE ai = inv(a, Dyadic(12));
                           bool ok = vanishes_to(a * ai - PE(1), ai.order(), v);
                           if (a.sign() == Sign::Negative) a = -a;
                           const PE s = sqrt(a, Dyadic(12));
                           ok = ok && s.valuation() == v.half() && vanishes_to(s * s - a, s.order(), v.half());
                           return ok;
                         },
                         [&] { return "a = " + a.to_string(); });
                   }
                 }});
  out.push_back({"value group closed under halving", [](Tally& t, Ctx& c) {
                   for (long n = 0, N = c.count(500); n < N; ++n) {
                     PE a = gen::random_series(c.rng);
                     t.guard(
                         [&] {
                           if (a.sign() == Sign::Negative) a = -a;
                           Dyadic v = a.valuation();
                           PE s = a;
                           for (int k = 0; k < 3; ++k) {
                             s = sqrt(s, Dyadic(4));
                             if (s.valuation() != v.half()) return false;
                             v = v.half();
                           }
                           return mpz_popcount(s.valuation().value().get_den_mpz_t()) == 1;
                         },
                         [&] { return "a = " + a.to_string(); });
                   }
                 }});
  return out;
}

// ---------------------------------------------------------------- quat

std::vector<CheckDef> quat_checks() {
  std::vector<CheckDef> out;
  out.push_back({"reduced norm is multiplicative", [](Tally& t, Ctx& c) {
                   const auto& h = std_alg();
                   for (long n = 0, N = c.count(10000); n < N; ++n) {
                     const CQ x = gen::rational_quaternion(c.rng), y = gen::rational_quaternion(c.rng);
                     t.guard([&] { return h.nrd(h.mul(x, y)) == h.nrd(x) * h.nrd(y); },
                             [&] { return "x = " + h.to_string(x) + ", y = " + h.to_string(y); });
                   }
                 }});
  out.push_back({"pure product is minus dot plus cross", [](Tally& t, Ctx& c) {
                   const auto& h = std_alg();
                   for (long n = 0, N = c.count(10000); n < N; ++n) {
                     const CP a = gen::rational_pure(c.rng), b = gen::rational_pure(c.rng);
                     t.guard(
                         [&] {
                           const CQ ab = h.mul(h.from_pure(a), h.from_pure(b));
                           const CQ expect = h.add(h.scalar(-h.dot(a, b)), h.from_pure(h.cross(a, b)));
                           return is_zero_q(h.sub(ab, expect));
                         },
                         [&] { return "a = " + h.to_string(a) + ", b = " + h.to_string(b); });
                   }
                 }});
  out.push_back({"anticommute iff orthogonal", [](Tally& t, Ctx& c) {
                   const auto& h = std_alg();
                   for (long n = 0, N = c.count(10000); n < N; ++n) {
                     const CP a = gen::rational_pure(c.rng, 5, 3);
                     CP b = gen::rational_pure(c.rng, 5, 3);
                     if (n % 3 == 0) b = h.cross(a, b);
                     t.guard(
                         [&] {
                           const CQ ab = h.mul(h.from_pure(a), h.from_pure(b));
                           const CQ ba = h.mul(h.from_pure(b), h.from_pure(a));
                           return h.dot(a, b).is_zero() == is_zero_q(h.add(ab, ba));
                         },
                         [&] { return "a = " + h.to_string(a) + ", b = " + h.to_string(b); });
                   }
                 }});
  out.push_back({"conjugation preserves Trd and Nrd", [](Tally& t, Ctx& c) {
                   const auto& h = std_alg();
                   for (long n = 0, N = c.count(10000); n < N; ++n) {
                     const CQ x = gen::nonzero_quaternion(c.rng), y = gen::rational_quaternion(c.rng);
                     t.guard(
                         [&] {
                           const CQ z = h.conj_action(x, y);
                           return z.r == y.r && h.nrd(z) == h.nrd(y);
                         },
                         [&] { return "x = " + h.to_string(x) + ", y = " + h.to_string(y); });
                   }
                 }});
  out.push_back({"conjugation preserves dot products", [](Tally& t, Ctx& c) {
                   const auto& h = std_alg();
                   for (long n = 0, N = c.count(1000); n < N; ++n) {
                     const CQ x = gen::nonzero_quaternion(c.rng);
                     const CP a = gen::rational_pure(c.rng), b = gen::rational_pure(c.rng);
                     t.guard([&] { return h.dot(h.act(x, a), h.act(x, b)) == h.dot(a, b); },
                             [&] { return "x = " + h.to_string(x) + ", a = " + h.to_string(a); });
                   }
                 }});
  out.push_back({"Cauchy-Schwarz and triangle inequality", [](Tally& t, Ctx& c) {
                   const auto& h = std_alg();
                   for (long n = 0, N = c.count(10000); n < N; ++n) {
                     const CP a = gen::rational_pure(c.rng), b = gen::rational_pure(c.rng);
                     t.guard(
                         [&] {
                           const TE d = h.dot(a, b);
                           const TE na = h.norm2(a), nb = h.norm2(b);
                           if (!(d * d <= na * nb)) return false;
                           return sqrt(h.norm2(h.padd(a, b))) <= sqrt(na) + sqrt(nb);
                         },
                         [&] { return "a = " + h.to_string(a) + ", b = " + h.to_string(b); });
                   }
                 }});
  out.push_back({"trace-zero part is the square-scalar set", [](Tally& t, Ctx& c) {
                   const auto& h = std_alg();
                   for (long n = 0, N = c.count(1000); n < N; ++n) {
                     CQ x = gen::rational_quaternion(c.rng, 3, 2);
                     if (n % 2 == 0) x.r = r(0);
                     if (n % 7 == 0) x = h.scalar(x.r);
                     t.guard(
                         [&] {
                           const CQ sq = h.mul(x, x);
                           const bool scalar_square = sq.s.is_zero() && sq.t.is_zero() && sq.u.is_zero();
                           const bool in_f = x.s.is_zero() && x.t.is_zero() && x.u.is_zero();
                           return h.trd_pure(x).in_P == ((scalar_square && !in_f) || is_zero_q(x));
                         },
                         [&] { return "x = " + h.to_string(x); });
                   }
                 }});
  return out;
}

// ---------------------------------------------------------------- rotations

std::vector<CheckDef> rotation_checks() {
  using Rot = Rotations<CModel>;
  std::vector<CheckDef> out;
  out.push_back({"half angle squares back", [](Tally& t, Ctx& c) {
                   const Rot rot;
                   for (long n = 0, N = c.count(1000); n < N; ++n) {
                     auto [cc, ss] = gen::rational_circle_point(c.rng);
                     if (n == 0) cc = 1, ss = 0;
                     if (n == 1) cc = -1, ss = 0;
                     const Rot::R2 a{TE(cc), TE(ss)};
                     t.guard(
                         [&] {
                           const Rot::R2 b = rot.r2_sqrt(a);
                           return rot.r2_same(rot.r2_mul(b, b), a) && b.c.sign() != Sign::Negative;
                         },
                         [&] { return "c = " + cc.get_str() + ", s = " + ss.get_str(); });
                   }
                 }});
  out.push_back({"rotation square roots square back", [](Tally& t, Ctx& c) {
                   const Rot rot;
                   const auto& h = std_alg();
                   for (long n = 0, N = c.count(200); n < N; ++n) {
                     const CQ x = gen::nonzero_quaternion(c.rng, 6, 4);
                     t.guard(
                         [&] {
                           const Rot::M3 a = rot.conj_matrix_std(x);
                           const Rot::M3 b = rot.r3_sqrt(a);
                           return rot.is_special_orthogonal(b) && rot.mat_same(rot.mat_mul(b, b), a);
                         },
                         [&] { return "x = " + h.to_string(x); });
                   }
                 }});
  out.push_back({"same-axis conjugation is a homomorphism", [](Tally& t, Ctx& c) {
                   const Rot rot;
                   const auto& h = std_alg();
                   for (long n = 0, N = c.count(200); n < N; ++n) {
                     const CP p = gen::rational_unit_pure(c.rng, 6, 4);
                     const auto [c1, s1] = gen::rational_circle_point(c.rng, 6, 4);
                     const auto [c2, s2] = gen::rational_circle_point(c.rng, 6, 4);
                     t.guard(
                         [&] {
                           const auto f = h.frame_complete(p);
                           const CQ x = h.add(h.scalar(TE(c1)), h.scale(h.from_pure(p), TE(s1)));
                           const CQ y = h.add(h.scalar(TE(c2)), h.scale(h.from_pure(p), TE(s2)));
                           return rot.mat_same(rot.conj_matrix(h.mul(x, y), f),
                                               rot.mat_mul(rot.conj_matrix(x, f), rot.conj_matrix(y, f)));
                         },
                         [&] { return "p = " + h.to_string(p); });
                   }
                 }});
  out.push_back({"orthogonality under products and roots", [](Tally& t, Ctx& c) {
                   const Rot rot;
                   const auto& h = std_alg();
                   for (long n = 0, N = c.count(200); n < N; ++n) {
                     const CQ x = gen::nonzero_quaternion(c.rng, 6, 4), y = gen::nonzero_quaternion(c.rng, 6, 4);
                     t.guard(
                         [&] {
                           const Rot::M3 a = rot.conj_matrix_std(x), b = rot.conj_matrix_std(y);
                           const Rot::M3 ab = rot.mat_mul(a, b);
                           return rot.is_special_orthogonal(ab) && rot.is_special_orthogonal(rot.r3_sqrt(ab));
                         },
                         [&] { return "x = " + h.to_string(x) + ", y = " + h.to_string(y); });
                   }
                 }});
  out.push_back({"reflections square to the identity", [](Tally& t, Ctx& c) {
                   for (long n = 0, N = c.count(1000); n < N; ++n) {
                     const auto [c0, s0] = gen::rational_circle_point(c.rng);
                     t.guard(
                         [&] {
                           // [[c, s], [s, −c]] lies in O₂ \ SO₂.
                           const TE cc(c0), ss(s0);
                           const std::array<std::array<TE, 2>, 2> f{{{cc, ss}, {ss, -cc}}};
                           bool ok = f[0][0] * f[1][1] - f[0][1] * f[1][0] == r(-1);
                           for (std::size_t i = 0; i < 2; ++i) {
                             for (std::size_t j = 0; j < 2; ++j) {
                               ok = ok && f[i][0] * f[0][j] + f[i][1] * f[1][j] == r(i == j ? 1 : 0);
                             }
                           }
                           return ok;
                         },
                         [&] { return "c = " + c0.get_str() + ", s = " + s0.get_str(); });
                   }
                 }});
  return out;
}

// ---------------------------------------------------------------- maxsub

PE perturb(gen::Rng& rng, long degree) {
  return PE::monomial(TE(rng.nonzero_rational(9, 4)), Dyadic(degree));
}

std::vector<CheckDef> maxsub_checks() {
  std::vector<CheckDef> out;
  out.push_back({"climb soundness (constructible)", [](Tally& t, Ctx& c) {
                   const Sphere<CModel> sphere;
                   const auto& h = sphere.algebra();
                   const CModel m;
                   const long height = c.opt.climb_height;
                   for (long n = 0, N = c.count(100); n < N; ++n) {
                     CQ y;
                     do {
                       y = gen::rational_quaternion(c.rng, height, height);
                     } while (is_zero_q(y) || sphere.in_g(y));
                     CP v;
                     do {
                       v = gen::rational_pure(c.rng, height, height);
                     } while (h.norm2(v).is_zero());
                     const CP gamma = h.normalize(v);
                     t.guard(
                         [&] {
                           const auto res = sphere.climb(y, gamma);
                           const auto ny = sphere.normalize_y(y);
                           const TE ratio = ny.c * m.inv(ny.s * ny.s);
                           const long bound = ceil_of(m, ratio) + 3;
                           return res.word.y_count() <= bound &&
                                  oracle_sends_i_to(h, sphere.word_eval_projective(res.word), gamma);
                         },
                         [&] { return "y = " + h.to_string(y) + ", gamma = " + h.to_string(gamma); });
                   }
                 }});
  out.push_back({"climb soundness (Puiseux)", [](Tally& t, Ctx& c) {
                   const PrecisionPolicy policy;
                   const QuaternionAlgebra<PModel> ph = QuaternionAlgebra<PModel>::standard();
                   const Sphere<PModel> ps;
                   for (long n = 0, N = c.count(20); n < N; ++n) {
                     PQ y;
                     for (;;) {
                       const CQ b = gen::rational_quaternion(c.rng, 9, 5);
                       y = PQ{PE(b.r) + perturb(c.rng, 1), PE(b.s), PE(b.t) + perturb(c.rng, 2),
                              PE(b.u) + perturb(c.rng, 1)};
                       if (!ps.in_g(y)) break;
                     }
                     const CP g0 = gen::rational_unit_pure(c.rng, 9, 5);
                     const PP gamma = ph.normalize(PP{PE(g0.b) + perturb(c.rng, 1), PE(g0.c),
                                                      PE(g0.d) + perturb(c.rng, 2)});
                     t.guard(
                         [&] {
                           return with_precision_retry(policy, [&](const Dyadic& order) {
                             PModel m;
                             m.order = order;
                             const Sphere<PModel> sphere(m);
                             const auto res = sphere.climb(y, gamma);
                             const bool ok = oracle_sends_i_to(sphere.algebra(), sphere.word_eval(res.word), gamma);
                             if (!ok) throw Error(ErrorCode::PrecisionExhausted, "residual below order 8");
                             return res.word.y_count() <= res.trace.step_bound;
                           });
                         },
                         [&] { return "y = " + ph.to_string(y) + ", gamma = " + ph.to_string(gamma); });
                   }
                 }});
  out.push_back({"G is closed under products and inverses", [](Tally& t, Ctx& c) {
                   const Sphere<PModel> ps;
                   const auto& ph = ps.algebra();
                   auto sample = [&]() {
                     // A G₀ element, optionally times j, perturbed by an infinitesimal.
                     PQ g{PE(c.rng.nonzero_rational(9, 4)), PE(c.rng.rational(9, 4)), PE(0), PE(0)};
                     if (c.rng.coin()) g = ph.mul(g, ph.unit_j());
                     const PE eps = perturb(c.rng, c.rng.uniform(1, 6));
                     switch (c.rng.uniform(0, 3)) {
                       case 0: g.r = g.r + eps; break;
                       case 1: g.s = g.s + eps; break;
                       case 2: g.t = g.t + eps; break;
                       default: g.u = g.u + eps; break;
                     }
                     return g;
                   };
                   for (long n = 0, N = c.count(1000); n < N; ++n) {
                     const PQ x = sample(), y = sample();
                     t.guard([&] { return ps.in_g(x) && ps.in_g(y) && ps.in_g(ph.mul(x, y)) && ps.in_g(ph.inv(x)); },
                             [&] { return "x = " + ph.to_string(x) + ", y = " + ph.to_string(y); });
                   }
                 }});
  out.push_back({"absorption into the cap", [](Tally& t, Ctx& c) {
                   const Sphere<PModel> ps;
                   const auto& ph = ps.algebra();
                   auto cap_point = [&]() {
                     const PP v{PE(1), perturb(c.rng, 1), PE::monomial(TE(c.rng.rational()), Dyadic(1))};
                     return ph.normalize(v);
                   };
                   for (long n = 0, N = c.count(100); n < N; ++n) {
                     const PP xi = cap_point(), alpha = cap_point();
                     t.guard(
                         [&] {
                           const PQ x = ph.rotate_to(xi);
                           return ps.in_delta(ph.act(x, ph.pure_i())) && ps.in_delta(ph.act(x, alpha));
                         },
                         [&] { return "x*i = " + ph.to_string(xi) + ", alpha = " + ph.to_string(alpha); });
                   }
                 }});
  out.push_back({"properness witness 1 + j", [](Tally& t, Ctx&) {
                   const Sphere<CModel> cs;
                   const Sphere<PModel> ps;
                   t.guard([&] { return !cs.in_g(CQ{r(1), r(0), r(1), r(0)}); }, [] { return std::string("constructible"); });
                   t.guard([&] { return !ps.in_g(PQ{PE(1), PE(0), PE(1), PE(0)}); }, [] { return std::string("Puiseux"); });
                 }});
  out.push_back({"archimedean degeneration", [](Tally& t, Ctx&) {
                   // Over the constructible reals Δ = {i}, so G = G₀ ∪ G₀·j.
                   const Sphere<CModel> cs;
                   for (long a = -2; a <= 2; ++a) {
                     for (long b = -2; b <= 2; ++b) {
                       for (long d = -2; d <= 2; ++d) {
                         for (long e = -2; e <= 2; ++e) {
                           if (a == 0 && b == 0 && d == 0 && e == 0) continue;
                           const bool expect = (d == 0 && e == 0) || (a == 0 && b == 0);
                           t.guard([&] { return cs.in_g(CQ{r(a), r(b), r(d), r(e)}) == expect; },
                                   [&] {
                                     return "(" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(d) +
                                            "," + std::to_string(e) + ")";
                                   });
                         }
                       }
                     }
                   }
                 }});
  out.push_back({"latitude flip", [](Tally& t, Ctx& c) {
                   const auto& h = std_alg();
                   for (long n = 0, N = c.count(1000); n < N; ++n) {
                     const CP v = gen::rational_pure(c.rng);
                     t.guard(
                         [&] {
                           const CP img = h.act(h.unit_j(), v);
                           return img.b == -v.b && img.c == v.c && img.d == -v.d;
                         },
                         [&] { return "v = " + h.to_string(v); });
                   }
                 }});
  return out;
}

// ---------------------------------------------------------------- lemmas

long odd_part(long t) {
  while (t % 2 == 0) t /= 2;
  return t;
}

long multiplicative_order(long p, long q) {
  // Oracle on big integers: least d with q | p^d − 1.
  mpz_class pw = 1;
  for (long d = 1;; ++d) {
    pw *= p;
    if (mpz_divisible_ui_p(mpz_class(pw - 1).get_mpz_t(), static_cast<unsigned long>(q)) != 0) return d;
  }
}

long hyperplane_count(const FiniteAbelianGroup& a) {
  long total = 0;
  for (long p = 2; p <= a.order(); ++p) {
    if (!is_prime(p)) continue;
    long d = 0;
    for (long o : a.cyclic_orders()) d += o % p == 0 ? 1 : 0;
    long pd = 1;
    for (long k = 0; k < d; ++k) pd *= p;
    total += (pd - 1) / (p - 1);
  }
  return total;
}

std::vector<CheckDef> lemma_checks() {
  std::vector<CheckDef> out;
  out.push_back({"n-divisibility stabilization (|A| <= 72, n <= 12)", [](Tally& t, Ctx&) {
                   for (long order = 1; order <= 72; ++order) {
                     for (const auto& a : abelian_groups_of_order(order)) {
                       for (long n = 2; n <= 12; ++n) {
                         t.guard([&] { return ck_lemma11(a, n).equivalent(); },
                                 [&] { return a.to_string() + ", n = " + std::to_string(n); });
                       }
                     }
                   }
                 }});
  out.push_back({"power classes of cyclic groups (m <= 200)", [](Tally& t, Ctx&) {
                   for (long m = 2; m <= 200; ++m) {
                     for (long p : {2L, 3L, 5L, 7L}) {
                       for (long rr = 1; rr <= 3; ++rr) {
                         t.guard([&] { return ck_lemma12(m, p, rr).equivalent(); },
                                 [&] {
                                   return "m = " + std::to_string(m) + ", p = " + std::to_string(p) +
                                          ", r = " + std::to_string(rr);
                                 });
                       }
                     }
                   }
                 }});
  out.push_back({"maximal subgroups have prime index (|A| <= 128)", [](Tally& t, Ctx&) {
                   for (long order = 2; order <= 128; ++order) {
                     for (const auto& a : abelian_groups_of_order(order)) {
                       t.guard(
                           [&] {
                             const auto res = ck_lemma2_finite(a);
                             return res.holds && res.all_prime_index && !res.maximal_subgroups.empty() &&
                                    static_cast<long>(res.maximal_subgroups.size()) == hyperplane_count(a);
                           },
                           [&] { return a.to_string(); });
                     }
                   }
                 }});
  out.push_back({"roots of unity degree (p, q <= 50)", [](Tally& t, Ctx&) {
                   for (long p = 2; p <= 50; ++p) {
                     for (long q = 2; q <= 50; ++q) {
                       if (!is_prime(p) || !is_prime(q) || p == q) continue;
                       t.guard(
                           [&] {
                             const auto res = ck_mu_in_limit_field(p, q);
                             const long d = multiplicative_order(p, q);
                             return res.degree == d && res.mu_in_F == (d % p != 0);
                           },
                           [&] { return "p = " + std::to_string(p) + ", q = " + std::to_string(q); });
                     }
                   }
                 }});
  out.push_back({"series-field CK1 orders depend on the odd part", [](Tally& t, Ctx&) {
                   const long expect[] = {1, 1, 3, 1, 5, 3};
                   for (long tt = 1; tt <= 1000; ++tt) {
                     t.guard(
                         [&] {
                           const long o = ck_mt_order(tt).order_lower_bound;
                           return o == odd_part(tt) && (tt > 6 || o == expect[tt - 1]);
                         },
                         [&] { return "t = " + std::to_string(tt); });
                   }
                 }});
  out.push_back({"normal primes match nontrivial CK1 orders", [](Tally& t, Ctx&) {
                   std::set<long> odd_primes, nontrivial;
                   for (long p = 2; p <= 97; ++p) {
                     if (!is_prime(p)) continue;
                     if (p > 2) odd_primes.insert(p);
                     if (ck_mt_order(p).order_lower_bound > 1) nontrivial.insert(p);
                   }
                   for (ModelKind kind : {ModelKind::Puiseux, ModelKind::Constructible}) {
                     t.guard(
                         [&] {
                           std::set<long> found;
                           for (const auto& np : ck_normal_primes(kind)) found.insert(np.p);
                           return found == odd_primes && found == nontrivial;
                         },
                         [&] { return std::string(kind == ModelKind::Puiseux ? "puiseux" : "constructible"); });
                   }
                 }});
  return out;
}

// ---------------------------------------------------------------- cyclic

constexpr std::array<std::array<long, 3>, 4> kCaConfigs{{{2, 1, 2}, {3, 1, 2}, {2, 2, 2}, {2, 1, 3}}};
constexpr std::array<long, 8> kDihedralQs{2, 3, 4, 5, 7, 8, 9, 11};

std::string config_name(const std::array<long, 3>& cfg) {
  return "(l,m,n) = (" + std::to_string(cfg[0]) + "," + std::to_string(cfg[1]) + "," + std::to_string(cfg[2]) + ")";
}

struct GmpRng : gmp_randclass {
  explicit GmpRng(gen::Rng& rng) : gmp_randclass(gmp_randinit_mt) { seed(static_cast<unsigned long>(rng.engine()())); }
};

bool l_equal(const CyclicAlgebra& ca, const LElem& a, const LElem& b) { return ca.l_is_zero(ca.l_sub(a, b)); }

std::map<std::pair<long, bool>, long> tally_maximal(const std::vector<SubgroupRecord>& recs) {
  std::map<std::pair<long, bool>, long> out;
  for (const auto& rec : recs) ++out[{rec.index, rec.normal}];
  return out;
}

/// Closed form for 𝒟_k, k ≥ 3: the rotations (normal, index 2), two more
/// normal subgroups of index 2 for even k, and p non-normal subgroups of
/// index p for each odd prime p | k.
std::map<std::pair<long, bool>, long> dihedral_maximal(long k) {
  std::map<std::pair<long, bool>, long> out;
  out[{2, true}] = k % 2 == 0 ? 3 : 1;
  for (long p = 3; p <= k; p += 2) {
    if (is_prime(p) && k % p == 0) out[{p, false}] = p;
  }
  return out;
}

std::vector<CheckDef> cyclic_checks() {
  std::vector<CheckDef> out;
  out.push_back({"Frobenius is an automorphism of order n", [](Tally& t, Ctx& c) {
                   for (const auto& cfg : kCaConfigs) {
                     const CyclicAlgebra ca = ca_make(cfg[0], cfg[1], cfg[2], 20);
                     GmpRng g(c.rng);
                     t.guard([&] { return l_equal(ca, ca.sigma_pow(ca.l_gen(), cfg[2]), ca.l_gen()); },
                             [&] { return config_name(cfg) + ": sigma^n(t) != t"; });
                     for (long n = 0, N = c.count(100); n < N; ++n) {
                       const LElem a = ca.random_l(g), b = ca.random_l(g);
                       t.guard(
                           [&] {
                             return l_equal(ca, ca.sigma(ca.l_mul(a, b)), ca.l_mul(ca.sigma(a), ca.sigma(b))) &&
                                    l_equal(ca, ca.sigma(ca.l_add(a, b)), ca.l_add(ca.sigma(a), ca.sigma(b))) &&
                                    ca.residue_index(ca.sigma(a)) ==
                                        ca.residue_index(ca.l_pow(a, static_cast<unsigned long>(ca.q())));
                           },
                           [&] { return config_name(cfg) + ", sample " + std::to_string(n); });
                     }
                   }
                 }});
  out.push_back({"valuation is multiplicative and ultrametric", [](Tally& t, Ctx& c) {
                   for (const auto& cfg : kCaConfigs) {
                     const CyclicAlgebra ca = ca_make(cfg[0], cfg[1], cfg[2], 20);
                     GmpRng g(c.rng);
                     for (long n = 0, N = c.count(500); n < N; ++n) {
                       const auto a = ca.random_element(g), b = ca.random_element(g);
                       t.guard(
                           [&] {
                             const long va = ca.valuation(a).numerator, vb = ca.valuation(b).numerator;
                             bool ok = ca.valuation(ca.mul(a, b)).numerator == va + vb;
                             const auto s = ca.add(a, b);
                             const bool zero = std::all_of(s.coeffs.begin(), s.coeffs.end(),
                                                           [&](const LElem& e) { return ca.l_is_zero(e); });
                             if (!zero) ok = ok && ca.valuation(s).numerator >= std::min(va, vb);
                             return ok;
                           },
                           [&] { return config_name(cfg) + ", sample " + std::to_string(n); });
                     }
                   }
                 }});
  out.push_back({"quotient image is a homomorphism", [](Tally& t, Ctx& c) {
                   for (const auto& cfg : kCaConfigs) {
                     const CyclicAlgebra ca = ca_make(cfg[0], cfg[1], cfg[2], 20);
                     const FiniteGroup grp = ca.quotient_group().group();
                     GmpRng g(c.rng);
                     for (long n = 0, N = c.count(500); n < N; ++n) {
                       const auto a = ca.random_element(g), b = ca.random_element(g);
                       t.guard(
                           [&] {
                             return ca.quotient_image(ca.mul(a, b)) ==
                                    grp.mul(ca.quotient_image(a), ca.quotient_image(b));
                           },
                           [&] { return config_name(cfg) + ", sample " + std::to_string(n); });
                     }
                   }
                 }});
  out.push_back({"quotient image is surjective", [](Tally& t, Ctx& c) {
                   for (const auto& cfg : kCaConfigs) {
                     const CyclicAlgebra ca = ca_make(cfg[0], cfg[1], cfg[2], 20);
                     const FiniteGroup grp = ca.quotient_group().group();
                     GmpRng g(c.rng);
                     t.guard(
                         [&] {
                           std::vector<int> images;
                           for (long n = 0, N = c.count(2000); n < N; ++n) {
                             images.push_back(ca.quotient_image(ca.random_element(g)));
                           }
                           return grp.generated(images).count() == grp.order();
                         },
                         [&] { return config_name(cfg); });
                   }
                 }});
  out.push_back({"value kernel equals the unit part", [](Tally& t, Ctx& c) {
                   for (const auto& cfg : kCaConfigs) {
                     const CyclicAlgebra ca = ca_make(cfg[0], cfg[1], cfg[2], 20);
                     const SemidirectZnZm sd = ca.quotient_group();
                     GmpRng g(c.rng);
                     t.guard(
                         [&] {
                           // Units of L land in the kernel of the value map and cover it.
                           std::set<long> unit_part;
                           for (long n = 0, N = c.count(2000); n < N; ++n) {
                             const auto [u, i] = sd.decode(ca.quotient_image(ca.from_l(ca.random_l(g))));
                             if (i != 0) return false;
                             unit_part.insert(u);
                           }
                           return static_cast<long>(unit_part.size()) == sd.m;
                         },
                         [&] { return config_name(cfg); });
                   }
                 }});
  out.push_back({"n = 2 quotients are dihedral", [](Tally& t, Ctx&) {
                   for (long q : kDihedralQs) {
                     t.guard(
                         [&] {
                           const auto sd = ca_quotient_group(q, 2);
                           return sd.m == q + 1 && (sd.q + 1) % sd.m == 0 && fg_iso_dihedral(sd.group(), q + 1);
                         },
                         [&] { return "q = " + std::to_string(q); });
                   }
                 }});
  out.push_back({"maximal subgroups of the dihedral quotients", [](Tally& t, Ctx& c) {
                   for (long q : kDihedralQs) {
                     t.guard(
                         [&] {
                           const auto rep = ca_report(q, 2, 20, c.opt.seed, c.count(400));
                           return rep.ok() && tally_maximal(rep.maximal) == dihedral_maximal(q + 1);
                         },
                         [&] { return "q = " + std::to_string(q); });
                   }
                 }});
  out.push_back({"Lagrange and normality on every subgroup", [](Tally& t, Ctx&) {
                   for (const auto& [m, n, q] : {std::array<long, 3>{7, 3, 2}, {9, 2, 8}, {13, 3, 3}, {8, 2, 5}}) {
                     const FiniteGroup g = fg_semidirect(m, n, q).group();
                     for (const auto& rec : fg_subgroups(g)) {
                       t.guard(
                           [&] {
                             bool normal = true;
                             for (int x = 0; x < g.order(); ++x) {
                               for (int e : rec.members.elements()) {
                                 normal = normal && rec.members.test(g.mul(g.mul(x, e), g.inv(x)));
                               }
                             }
                             return rec.order * rec.index == g.order() && rec.members.count() == rec.order &&
                                    normal == rec.normal;
                           },
                           [&] { return "subgroup of order " + std::to_string(rec.order) + " in " + std::to_string(m) +
                                        "x" + std::to_string(n); });
                     }
                   }
                 }});
  out.push_back({"reflections invert rotations", [](Tally& t, Ctx&) {
                   for (long k = 3; k <= 30; ++k) {
                     t.guard(
                         [&] {
                           const auto s = fg_semidirect(k, 2, k - 1);
                           const FiniteGroup g = s.group();
                           if (!fg_iso_dihedral(g, k)) return false;
                           for (int e = 0; e < g.order(); ++e) {
                             if (g.element_order(e) != 2 || s.decode(e).second == 0) continue;
                             for (long u = 0; u < k; ++u) {
                               if (g.mul(g.mul(e, s.encode(u, 0)), g.inv(e)) != s.encode(-u, 0)) return false;
                             }
                           }
                           return true;
                         },
                         [&] { return "k = " + std::to_string(k); });
                   }
                 }});
  return out;
}

// ---------------------------------------------------------------- registry

const std::vector<std::pair<std::string, std::vector<CheckDef>>>& registry() {
  static const std::vector<std::pair<std::string, std::vector<CheckDef>>> reg{
      {"fields", fields_checks()}, {"quat", quat_checks()},     {"rotations", rotation_checks()},
      {"maxsub", maxsub_checks()}, {"lemmas", lemma_checks()}, {"cyclic", cyclic_checks()},
  };
  return reg;
}

struct Job {
  std::size_t suite_index;
  std::size_t check_index;
};

std::uint64_t derive_seed(std::uint64_t seed, std::size_t suite, std::size_t check) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(suite), static_cast<std::uint32_t>(check)};
  std::array<std::uint32_t, 2> words{};
  seq.generate(words.begin(), words.end());
  return (static_cast<std::uint64_t>(words[0]) << 32) | words[1];
}

CheckResult execute(const Job& job, const SuiteOptions& opt) {
  const auto& [suite, checks] = registry()[job.suite_index];
  const CheckDef& def = checks[job.check_index];
  CheckResult res;
  res.suite = suite;
  res.name = def.name;
  gen::Rng rng(derive_seed(opt.seed, job.suite_index, job.check_index));
  Ctx ctx{rng, opt};
  Tally tally;
  const auto start = std::chrono::steady_clock::now();
  try {
    def.run(tally, ctx);
  } catch (const std::exception& e) {
    tally.record(false, [&] { return std::string("aborted: ") + e.what(); });
  }
  res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  res.passed = tally.passed();
  res.total = tally.total();
  res.counterexample = tally.first();
  return res;
}

std::vector<CheckResult> run_jobs(const std::vector<Job>& jobs, const SuiteOptions& opt) {
  std::vector<CheckResult> results(jobs.size());
  unsigned threads = opt.threads != 0 ? opt.threads : std::max(1U, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(jobs.size()));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < jobs.size(); k = next++) results[k] = execute(jobs[k], opt);
  };
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < threads; ++w) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  return results;
}

std::size_t suite_index(std::string_view suite) {
  const auto& reg = registry();
  for (std::size_t k = 0; k < reg.size(); ++k) {
    if (reg[k].first == suite) return k;
  }
  throw std::invalid_argument("unknown suite '" + std::string(suite) + "'");
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& entry : registry()) out.push_back(entry.first);
    return out;
  }();
  return names;
}

std::vector<std::string> check_names(std::string_view suite) {
  std::vector<std::string> out;
  for (const auto& def : registry()[suite_index(suite)].second) out.push_back(def.name);
  return out;
}

std::vector<CheckResult> run_suite(std::string_view suite, const SuiteOptions& opt) {
  std::vector<Job> jobs;
  const auto& reg = registry();
  for (std::size_t s = 0; s < reg.size(); ++s) {
    if (suite != "all" && reg[s].first != suite) continue;
    for (std::size_t k = 0; k < reg[s].second.size(); ++k) jobs.push_back({s, k});
  }
  if (jobs.empty()) throw std::invalid_argument("unknown suite '" + std::string(suite) + "'");
  return run_jobs(jobs, opt);
}

CheckResult run_check(std::string_view suite, std::string_view name, const SuiteOptions& opt) {
  const std::size_t s = suite_index(suite);
  const auto& checks = registry()[s].second;
  for (std::size_t k = 0; k < checks.size(); ++k) {
    if (checks[k].name == name) return execute({s, k}, opt);
  }
  throw std::invalid_argument("unknown check '" + std::string(name) + "' in suite " + std::string(suite));
}

}  // namespace divalg
