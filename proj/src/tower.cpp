#include "divalg/tower.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cctype>
#include <map>
#include <mutex>
#include <span>
#include <stdexcept>
#include <unordered_map>

#include "divalg/error.hpp"

namespace divalg {

namespace {

struct Interval {
  Rational lo;
  Rational hi;
};

using Vec = std::vector<Rational>;
using CSpan = std::span<const Rational>;

constexpr std::size_t kMaxDepth = 22;
constexpr std::array<unsigned, 4> kSignSchedule{32, 64, 128, 256};

std::atomic<std::uint64_t> g_next_level_id{1};

bool all_zero(CSpan c) {
  return std::all_of(c.begin(), c.end(), [](const Rational& q) { return sgn(q) == 0; });
}

bool scalar_only(CSpan c) { return all_zero(c.subspan(1)); }

}  // namespace

struct TowerLevel {
  TowerLevel(std::uint64_t level_id, TowerElement r) : id(level_id), radicand(std::move(r)) {}

  std::uint64_t id;
  TowerElement radicand;
  mutable std::mutex mu;
  mutable std::map<unsigned, Interval> sqrt_enclosures;
};

struct TowerAccess {
  static TowerContext context(std::vector<LevelPtr> levels) { return TowerContext(std::move(levels)); }

  /// Position of each level of `from` inside `to`; `from` must be a subset.
  static std::vector<unsigned> positions(const TowerContext& from, const TowerContext& to) {
    std::vector<unsigned> pos(from.size());
    std::size_t j = 0;
    for (std::size_t i = 0; i < from.size(); ++i) {
      const auto id = from.levels_[i]->id;
      while (j < to.size() && to.levels_[j]->id < id) ++j;
      if (j == to.size() || to.levels_[j]->id != id) throw std::logic_error("tower context is not a subset");
      pos[i] = static_cast<unsigned>(j);
    }
    return pos;
  }

  static std::size_t map_index(std::size_t idx, const std::vector<unsigned>& pos) {
    std::size_t out = 0;
    for (std::size_t b = 0; idx != 0; ++b, idx >>= 1) {
      if (idx & 1U) out |= std::size_t{1} << pos[b];
    }
    return out;
  }

  static Vec embed(const Vec& coeffs, const TowerContext& from, const TowerContext& to) {
    if (from.size() == to.size()) return coeffs;
    const auto pos = positions(from, to);
    Vec out(std::size_t{1} << to.size());
    for (std::size_t idx = 0; idx < coeffs.size(); ++idx) {
      if (sgn(coeffs[idx]) != 0) out[map_index(idx, pos)] = coeffs[idx];
    }
    return out;
  }

  /// Drops levels that neither the coefficients nor a remaining radicand use.
  static TowerElement make(TowerContext ctx, Vec coeffs) {
    const std::size_t k = ctx.size();
    if (k == 0) return TowerElement(std::move(ctx), std::move(coeffs));
    std::size_t used = 0;
    for (std::size_t idx = 0; idx < coeffs.size(); ++idx) {
      if (sgn(coeffs[idx]) != 0) used |= idx;
    }
    for (std::size_t t = k; t-- > 0;) {
      if ((used >> t & 1U) == 0) continue;
      const auto& rctx = ctx.levels_[t]->radicand.context();
      for (unsigned p : positions(rctx, ctx)) used |= std::size_t{1} << p;
    }
    const std::size_t full = (std::size_t{1} << k) - 1;
    if (used == full) return TowerElement(std::move(ctx), std::move(coeffs));

    std::vector<LevelPtr> kept;
    std::vector<unsigned> new_pos(k, 0);
    for (std::size_t t = 0; t < k; ++t) {
      if (used >> t & 1U) {
        new_pos[t] = static_cast<unsigned>(kept.size());
        kept.push_back(ctx.levels_[t]);
      }
    }
    Vec out(std::size_t{1} << kept.size());
    for (std::size_t idx = 0; idx < coeffs.size(); ++idx) {
      if (sgn(coeffs[idx]) == 0) continue;
      std::size_t mapped = 0;
      for (std::size_t t = 0; t < k; ++t) {
        if (idx >> t & 1U) mapped |= std::size_t{1} << new_pos[t];
      }
      out[mapped] = std::move(coeffs[idx]);
    }
    return TowerElement(TowerContext(std::move(kept)), std::move(out));
  }

  static const Vec& coeffs(const TowerElement& a) { return a.coeffs_; }
  static const TowerContext& ctx(const TowerElement& a) { return a.ctx_; }
  static const TowerLevel& level(const TowerContext& c, std::size_t t) { return *c.levels_[t]; }

  /// a = A + B·√r with r the top radicand; A and B live in the prefix tower.
  struct Split {
    TowerElement lower;
    TowerElement upper;
    const TowerElement* radicand;
  };

  static Split split(const TowerElement& a) {
    const std::size_t k = a.ctx_.size();
    const std::size_t h = std::size_t{1} << (k - 1);
    TowerContext pre = a.ctx_.prefix(k - 1);
    Vec lo(a.coeffs_.begin(), a.coeffs_.begin() + static_cast<std::ptrdiff_t>(h));
    Vec hi(a.coeffs_.begin() + static_cast<std::ptrdiff_t>(h), a.coeffs_.end());
    return Split{make(pre, std::move(lo)), make(pre, std::move(hi)), &a.ctx_.levels_[k - 1]->radicand};
  }

  static TowerElement adjoin(const TowerElement& radicand) {
    if (radicand.depth() + 1 > kMaxDepth) throw std::length_error("constructible tower too deep");
    auto level = std::make_shared<TowerLevel>(g_next_level_id.fetch_add(1), radicand);
    std::vector<LevelPtr> levels = radicand.ctx_.levels_;
    levels.push_back(std::move(level));
    Vec coeffs(std::size_t{1} << levels.size());
    coeffs[std::size_t{1} << (levels.size() - 1)] = 1;
    return TowerElement(TowerContext(std::move(levels)), std::move(coeffs));
  }
};

TowerContext TowerContext::merged(const TowerContext& a, const TowerContext& b) {
  if (a.empty()) return b;
  if (b.empty()) return a;
  if (a == b) return a;
  std::vector<LevelPtr> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a.levels_[i]->id < b.levels_[j]->id)) {
      out.push_back(a.levels_[i++]);
    } else if (i == a.size() || b.levels_[j]->id < a.levels_[i]->id) {
      out.push_back(b.levels_[j++]);
    } else {
      out.push_back(a.levels_[i++]);
      ++j;
    }
  }
  if (out.size() > kMaxDepth) throw std::length_error("constructible tower too deep");
  return TowerContext(std::move(out));
}

TowerContext TowerContext::prefix(std::size_t n) const {
  return TowerContext(std::vector<LevelPtr>(levels_.begin(), levels_.begin() + static_cast<std::ptrdiff_t>(n)));
}

bool operator==(const TowerContext& a, const TowerContext& b) noexcept {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a.levels_[i]->id != b.levels_[i]->id) return false;
  }
  return true;
}

TowerElement::TowerElement(TowerContext ctx, std::vector<Rational> coeffs)
    : ctx_(std::move(ctx)), coeffs_(std::move(coeffs)) {}

bool TowerElement::is_syntactic_zero() const noexcept { return all_zero(coeffs_); }

namespace {

// Lazily embedded radicands for one multiplication in a fixed context.
class RadicandCache {
 public:
  explicit RadicandCache(const TowerContext& ctx) : ctx_(ctx), cache_(ctx.size()) {}

  const Vec& get(std::size_t t) {
    if (!cache_[t]) {
      const auto& r = TowerAccess::level(ctx_, t).radicand;
      cache_[t] = TowerAccess::embed(TowerAccess::coeffs(r), r.context(), ctx_.prefix(t));
    }
    return *cache_[t];
  }

 private:
  const TowerContext& ctx_;
  std::vector<std::optional<Vec>> cache_;
};

void add_into(std::span<Rational> out, const Vec& v) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (sgn(v[i]) != 0) out[i] += v[i];
  }
}

Vec mul_rec(CSpan a, CSpan b, std::size_t k, RadicandCache& rads) {
  if (k == 0) return Vec{a[0] * b[0]};
  if (scalar_only(a)) {
    Vec out(b.size());
    if (sgn(a[0]) != 0) {
      for (std::size_t i = 0; i < b.size(); ++i) {
        if (sgn(b[i]) != 0) out[i] = a[0] * b[i];
      }
    }
    return out;
  }
  if (scalar_only(b)) return mul_rec(b, a, k, rads);

  const std::size_t h = a.size() / 2;
  CSpan a0 = a.first(h), a1 = a.subspan(h);
  CSpan b0 = b.first(h), b1 = b.subspan(h);
  const bool za0 = all_zero(a0), za1 = all_zero(a1), zb0 = all_zero(b0), zb1 = all_zero(b1);
  Vec out(a.size());
  std::span<Rational> lo(out.data(), h);
  std::span<Rational> hi(out.data() + h, h);
  if (!za0 && !zb0) add_into(lo, mul_rec(a0, b0, k - 1, rads));
  if (!za1 && !zb1) {
    Vec t = mul_rec(a1, b1, k - 1, rads);
    add_into(lo, mul_rec(t, rads.get(k - 1), k - 1, rads));
  }
  if (!za0 && !zb1) add_into(hi, mul_rec(a0, b1, k - 1, rads));
  if (!za1 && !zb0) add_into(hi, mul_rec(a1, b0, k - 1, rads));
  return out;
}

Interval add(const Interval& x, const Interval& y) { return {x.lo + y.lo, x.hi + y.hi}; }

// y must be nonnegative (a square-root enclosure).
Interval mul_nonneg(const Interval& x, const Interval& y) {
  if (sgn(x.lo) >= 0) return {x.lo * y.lo, x.hi * y.hi};
  if (sgn(x.hi) <= 0) return {x.lo * y.hi, x.hi * y.lo};
  return {x.lo * y.hi, x.hi * y.hi};
}

Interval eval_interval(const TowerContext& ctx, CSpan coeffs, unsigned prec);

Interval sqrt_enclosure(const TowerLevel& level, unsigned prec) {
  {
    std::lock_guard lock(level.mu);
    auto it = level.sqrt_enclosures.find(prec);
    if (it != level.sqrt_enclosures.end()) return it->second;
  }
  const auto& r = level.radicand;
  Interval ri = eval_interval(r.context(), TowerAccess::coeffs(r), prec + 4);
  Integer scale = Integer(1) << (2 * prec);
  Integer denom = Integer(1) << prec;

  Rational lo_r = sgn(ri.lo) > 0 ? ri.lo : Rational(0);
  Rational hi_r = sgn(ri.hi) > 0 ? ri.hi : Rational(0);
  Integer lo_scaled;
  Integer lo_num = lo_r.get_num() * scale;
  mpz_fdiv_q(lo_scaled.get_mpz_t(), lo_num.get_mpz_t(), lo_r.get_den_mpz_t());
  Integer hi_scaled;
  Integer hi_num = hi_r.get_num() * scale;
  mpz_cdiv_q(hi_scaled.get_mpz_t(), hi_num.get_mpz_t(), hi_r.get_den_mpz_t());

  Integer s_lo = sqrt(lo_scaled);
  Integer s_hi = sqrt(hi_scaled);
  if (s_hi * s_hi < hi_scaled) s_hi += 1;

  Interval out{Rational(s_lo, denom), Rational(s_hi, denom)};
  out.lo.canonicalize();
  out.hi.canonicalize();
  std::lock_guard lock(level.mu);
  level.sqrt_enclosures.emplace(prec, out);
  return out;
}

Interval eval_rec(CSpan c, std::size_t k, const std::vector<Interval>& lv) {
  if (k == 0) return {c[0], c[0]};
  const std::size_t h = c.size() / 2;
  CSpan lo = c.first(h), hi = c.subspan(h);
  Interval out = all_zero(lo) ? Interval{Rational(0), Rational(0)} : eval_rec(lo, k - 1, lv);
  if (all_zero(hi)) return out;
  return add(out, mul_nonneg(eval_rec(hi, k - 1, lv), lv[k - 1]));
}

Interval eval_interval(const TowerContext& ctx, CSpan coeffs, unsigned prec) {
  std::vector<Interval> lv;
  lv.reserve(ctx.size());
  for (std::size_t t = 0; t < ctx.size(); ++t) lv.push_back(sqrt_enclosure(TowerAccess::level(ctx, t), prec));
  return eval_rec(coeffs, ctx.size(), lv);
}

Sign exact_sign(const TowerElement& a) {
  auto parts = TowerAccess::split(a);
  const Sign s_lower = parts.lower.sign();
  const Sign s_upper = parts.upper.sign();
  if (s_upper == Sign::Zero) return s_lower;
  if (s_lower == Sign::Zero || s_lower == s_upper) return s_upper;
  // Opposite signs: compare A² against B²·r.
  const TowerElement diff = parts.lower * parts.lower - parts.upper * parts.upper * *parts.radicand;
  const Sign d = diff.sign();
  if (d == Sign::Zero) return Sign::Zero;
  return d == Sign::Positive ? s_lower : s_upper;
}

TowerElement inverse(const TowerElement& a) {
  if (a.is_rational()) {
    if (sgn(a.rational_value()) == 0) throw Error(ErrorCode::DivisionByZero, "division by zero");
    return TowerElement(Rational(1) / a.rational_value());
  }
  auto parts = TowerAccess::split(a);
  if (parts.upper.is_syntactic_zero()) return inverse(parts.lower);
  const TowerElement norm = parts.lower * parts.lower - parts.upper * parts.upper * *parts.radicand;
  if (norm.sign() != Sign::Zero) {
    Vec conj = TowerAccess::coeffs(a);
    for (std::size_t i = conj.size() / 2; i < conj.size(); ++i) conj[i] = -conj[i];
    return TowerAccess::make(a.context(), std::move(conj)) * inverse(norm);
  }
  // Redundant radical: B·√r = ±A as reals, so a ∈ {0, 2A}.
  if (a.sign() == Sign::Zero) throw Error(ErrorCode::DivisionByZero, "division by zero");
  return inverse(parts.lower + parts.lower);
}

std::optional<TowerElement> exact_sqrt_rec(const TowerElement& a, int& budget) {
  if (--budget < 0) return std::nullopt;
  const Sign s = a.sign();
  if (s == Sign::Negative) return std::nullopt;
  if (s == Sign::Zero) return TowerElement(0);
  if (a.is_rational()) {
    auto r = rational_sqrt(a.rational_value());
    if (!r) return std::nullopt;
    return TowerElement(*r);
  }
  auto parts = TowerAccess::split(a);
  const TowerElement norm = parts.lower * parts.lower - parts.upper * parts.upper * *parts.radicand;
  auto n = exact_sqrt_rec(norm, budget);
  if (!n) return std::nullopt;
  const TowerElement half(Rational(1, 2));
  // √r itself, expressed in a's tower.
  Vec top(TowerAccess::coeffs(a).size());
  top[top.size() / 2] = 1;
  const TowerElement root_r = TowerAccess::make(a.context(), std::move(top));
  for (const TowerElement& x2 : {(parts.lower + *n) * half, (parts.lower - *n) * half}) {
    if (x2.sign() != Sign::Positive) continue;
    auto x = exact_sqrt_rec(x2, budget);
    if (!x) continue;
    const TowerElement y = parts.upper / (*x + *x);
    TowerElement candidate = *x + y * root_r;
    if (candidate.sign() == Sign::Negative) candidate = -candidate;
    if ((candidate * candidate - a).sign() == Sign::Zero) return candidate;
  }
  return std::nullopt;
}

}  // namespace

TowerElement operator+(const TowerElement& a, const TowerElement& b) {
  if (a.is_rational() && b.is_rational()) return TowerElement(a.rational_value() + b.rational_value());
  TowerContext ctx = TowerContext::merged(a.context(), b.context());
  Vec out = TowerAccess::embed(a.coeffs_, a.context(), ctx);
  Vec bb = TowerAccess::embed(b.coeffs_, b.context(), ctx);
  add_into(out, bb);
  return TowerAccess::make(std::move(ctx), std::move(out));
}

TowerElement operator-(const TowerElement& a, const TowerElement& b) { return a + (-b); }

TowerElement TowerElement::operator-() const {
  TowerElement out = *this;
  for (auto& c : out.coeffs_) c = -c;
  return out;
}

TowerElement operator*(const TowerElement& a, const TowerElement& b) {
  if (a.is_rational() && b.is_rational()) return TowerElement(a.rational_value() * b.rational_value());
  TowerContext ctx = TowerContext::merged(a.context(), b.context());
  Vec aa = TowerAccess::embed(a.coeffs_, a.context(), ctx);
  Vec bb = TowerAccess::embed(b.coeffs_, b.context(), ctx);
  RadicandCache rads(ctx);
  Vec out = mul_rec(aa, bb, ctx.size(), rads);
  return TowerAccess::make(std::move(ctx), std::move(out));
}

TowerElement operator/(const TowerElement& a, const TowerElement& b) { return a * inverse(b); }

TowerElement arith(ArithOp op, const TowerElement& a, const TowerElement& b) {
  switch (op) {
    case ArithOp::Add: return a + b;
    case ArithOp::Sub: return a - b;
    case ArithOp::Mul: return a * b;
    case ArithOp::Div: return a / b;
  }
  throw std::invalid_argument("unknown arithmetic op");
}

Sign TowerElement::sign() const {
  if (is_syntactic_zero()) return Sign::Zero;
  if (is_rational()) return divalg::sign(coeffs_.front());
  for (unsigned prec : kSignSchedule) {
    Interval iv = eval_interval(ctx_, coeffs_, prec);
    if (sgn(iv.lo) > 0) return Sign::Positive;
    if (sgn(iv.hi) < 0) return Sign::Negative;
  }
  return exact_sign(*this);
}

Sign sign(const TowerElement& a) { return a.sign(); }

TowerElement abs(const TowerElement& a) { return a.sign() == Sign::Negative ? -a : a; }

std::optional<TowerElement> exact_sqrt(const TowerElement& a) {
  int budget = 48;
  return exact_sqrt_rec(a, budget);
}

TowerElement sqrt(const TowerElement& a) {
  const Sign s = a.sign();
  if (s == Sign::Negative) throw Error(ErrorCode::NegativeRadicand, "square root of " + a.to_sexpr());
  if (s == Sign::Zero) return TowerElement(0);
  if (auto r = exact_sqrt(a)) return *r;
  return TowerAccess::adjoin(a);
}

RationalInterval approx(const TowerElement& a, unsigned k) {
  if (a.is_rational()) return {a.rational_value(), a.rational_value()};
  const Rational target(Integer(1), Integer(1) << (k + 1));
  const Integer grid = Integer(1) << (k + 2);
  for (unsigned prec = k + 16; prec < (1U << 20); prec *= 2) {
    Interval iv = eval_interval(a.context(), a.coefficients(), prec);
    if (iv.hi - iv.lo > target) continue;
    Integer lo_num = iv.lo.get_num() * grid;
    Integer hi_num = iv.hi.get_num() * grid;
    Integer lo_q, hi_q;
    mpz_fdiv_q(lo_q.get_mpz_t(), lo_num.get_mpz_t(), iv.lo.get_den_mpz_t());
    mpz_cdiv_q(hi_q.get_mpz_t(), hi_num.get_mpz_t(), iv.hi.get_den_mpz_t());
    Rational lo(lo_q, grid), hi(hi_q, grid);
    lo.canonicalize();
    hi.canonicalize();
    return {lo, hi};
  }
  throw Error(ErrorCode::PrecisionExhausted, "interval refinement did not converge");
}

double TowerElement::to_double() const {
  auto iv = approx(*this, 60);
  Rational mid = (iv.lo + iv.hi) / 2;
  return mid.get_d();
}

std::string TowerElement::to_sexpr() const {
  if (is_rational()) return to_string(coeffs_.front());
  auto parts = TowerAccess::split(*this);
  return "(ext " + parts.lower.to_sexpr() + " " + parts.upper.to_sexpr() + " (sqrt " + parts.radicand->to_sexpr() +
         "))";
}

std::string to_string(const TowerElement& a) { return a.to_sexpr(); }

namespace {

class SexprParser {
 public:
  explicit SexprParser(std::string_view text) : text_(text) {}

  TowerElement parse_all() {
    TowerElement e = element();
    skip_ws();
    if (pos_ != text_.size()) fail("trailing input");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorCode::ParseError, what + " at offset " + std::to_string(pos_));
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])) != 0) ++pos_;
  }

  void expect(char c) {
    skip_ws();
    if (pos_ >= text_.size() || text_[pos_] != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  std::string_view atom() {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && text_[pos_] != '(' && text_[pos_] != ')' &&
           std::isspace(static_cast<unsigned char>(text_[pos_])) == 0) {
      ++pos_;
    }
    if (start == pos_) fail("expected atom");
    return text_.substr(start, pos_ - start);
  }

  TowerElement element() {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == '(') {
      ++pos_;
      if (atom() != "ext") fail("expected 'ext'");
      TowerElement lower = element();
      TowerElement upper = element();
      expect('(');
      if (atom() != "sqrt") fail("expected 'sqrt'");
      TowerElement radicand = element();
      expect(')');
      expect(')');
      return lower + upper * root_of(radicand);
    }
    return TowerElement(parse_rational(atom()));
  }

  const TowerElement& root_of(const TowerElement& radicand) {
    std::string key = radicand.to_sexpr();
    auto it = roots_.find(key);
    if (it != roots_.end()) return it->second;
    if (radicand.sign() != Sign::Positive) fail("radicand must be positive");
    return roots_.emplace(std::move(key), TowerAccess::adjoin(radicand)).first->second;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::unordered_map<std::string, TowerElement> roots_;
};

}  // namespace

TowerElement TowerElement::from_sexpr(std::string_view text) { return SexprParser(text).parse_all(); }

}  // namespace divalg
