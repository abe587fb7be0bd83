#include "divalg/ck1.hpp"

#include <gmpxx.h>

#include <numeric>

#include "divalg/maxsub.hpp"

namespace divalg {

bool is_prime(long n) {
  if (n < 2) return false;
  for (long d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

namespace {

std::vector<std::pair<long, int>> factor(long n) {
  std::vector<std::pair<long, int>> out;
  for (long p = 2; p * p <= n; ++p) {
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e > 0) out.emplace_back(p, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

void partitions(int n, int max_part, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (n == 0) {
    out.push_back(cur);
    return;
  }
  for (int k = std::min(n, max_part); k >= 1; --k) {
    cur.push_back(k);
    partitions(n - k, k, cur, out);
    cur.pop_back();
  }
}

long ipow(long b, int e) {
  long r = 1;
  for (int k = 0; k < e; ++k) r *= b;
  return r;
}

}  // namespace

FiniteAbelianGroup::FiniteAbelianGroup(std::vector<long> cyclic_orders, long cap) : orders_(std::move(cyclic_orders)) {
  for (long o : orders_) {
    if (o < 2) throw std::invalid_argument("cyclic orders must be at least 2");
    if (size_ > cap / o) throw Error(ErrorCode::GroupTooLarge, "group order exceeds " + std::to_string(cap));
    size_ *= o;
  }
}

long FiniteAbelianGroup::exponent() const {
  long e = 1;
  for (long o : orders_) e = std::lcm(e, o);
  return e;
}

std::vector<int> FiniteAbelianGroup::digits(int a) const {
  std::vector<int> d(orders_.size());
  for (std::size_t k = 0; k < orders_.size(); ++k) {
    d[k] = static_cast<int>(a % orders_[k]);
    a /= static_cast<int>(orders_[k]);
  }
  return d;
}

int FiniteAbelianGroup::from_digits(const std::vector<int>& d) const {
  long a = 0;
  for (std::size_t k = orders_.size(); k-- > 0;) a = a * orders_[k] + d[k];
  return static_cast<int>(a);
}

int FiniteAbelianGroup::add(int a, int b) const {
  long out = 0, stride = 1;
  for (long o : orders_) {
    out += ((a % o + b % o) % o) * stride;
    a /= static_cast<int>(o);
    b /= static_cast<int>(o);
    stride *= o;
  }
  return static_cast<int>(out);
}

int FiniteAbelianGroup::neg(int a) const {
  auto d = digits(a);
  for (std::size_t k = 0; k < d.size(); ++k) d[k] = static_cast<int>((orders_[k] - d[k]) % orders_[k]);
  return from_digits(d);
}

int FiniteAbelianGroup::times(long k, int a) const {
  auto d = digits(a);
  for (std::size_t i = 0; i < d.size(); ++i) {
    const long o = orders_[i];
    d[i] = static_cast<int>((((k % o) + o) % o) * d[i] % o);
  }
  return from_digits(d);
}

ElementSet FiniteAbelianGroup::multiple(long k) const {
  ElementSet s(static_cast<int>(size_));
  for (int a = 0; a < size_; ++a) s.set(times(k, a));
  return s;
}

ElementSet FiniteAbelianGroup::torsion(long k) const {
  ElementSet s(static_cast<int>(size_));
  for (int a = 0; a < size_; ++a) {
    if (times(k, a) == 0) s.set(a);
  }
  return s;
}

ElementSet FiniteAbelianGroup::span(const ElementSet& gens) const {
  const std::vector<int> g = gens.elements();
  ElementSet s(static_cast<int>(size_));
  s.set(0);
  std::vector<int> queue{0};
  for (std::size_t k = 0; k < queue.size(); ++k) {
    for (int x : g) {
      const int y = add(queue[k], x);
      if (!s.test(y)) {
        s.set(y);
        queue.push_back(y);
      }
    }
  }
  return s;
}

std::string FiniteAbelianGroup::to_string() const {
  if (orders_.empty()) return "0";
  std::string out;
  for (long o : orders_) {
    if (!out.empty()) out += " x ";
    out += "Z/" + std::to_string(o);
  }
  return out;
}

std::vector<FiniteAbelianGroup> abelian_groups_of_order(long n) {
  if (n < 1) throw std::invalid_argument("order must be positive");
  std::vector<std::vector<long>> acc{{}};
  for (const auto& [p, e] : factor(n)) {
    std::vector<std::vector<int>> parts;
    std::vector<int> cur;
    partitions(e, e, cur, parts);
    std::vector<std::vector<long>> next;
    for (const auto& base : acc) {
      for (const auto& part : parts) {
        auto orders = base;
        for (int k : part) orders.push_back(ipow(p, k));
        next.push_back(std::move(orders));
      }
    }
    acc = std::move(next);
  }
  std::vector<FiniteAbelianGroup> out;
  for (auto& orders : acc) out.emplace_back(std::move(orders), std::max(n, FiniteAbelianGroup::kDefaultCap));
  return out;
}

Lemma2Result ck_lemma2_finite(const FiniteAbelianGroup& a, const LatticeOptions& opt) {
  LatticeOptions o = opt;
  o.normality = false;
  auto subs = enumerate_subgroups(
      static_cast<int>(a.order()), [&a](int x, int y) { return a.add(x, y); }, [&a](int x) { return a.neg(x); }, o);
  Lemma2Result res;
  for (auto& rec : subs) {
    if (!rec.maximal) continue;
    rec.normal = true;
    if (!is_prime(rec.index)) res.all_prime_index = false;
    res.maximal_subgroups.push_back(std::move(rec));
  }
  res.holds = res.all_prime_index && (a.order() == 1 || !res.maximal_subgroups.empty());
  return res;
}

Equivalence ck_lemma11(const FiniteAbelianGroup& a, long n, long k_max) {
  if (n < 2) throw std::invalid_argument("n must be at least 2");
  if (k_max <= 0) k_max = a.exponent();
  Equivalence out;
  const ElementSet na = a.multiple(n);
  out.lhs = true;
  for (long k = 2; k <= k_max && out.lhs; ++k) out.lhs = a.multiple(n * k) == na;

  out.rhs = true;
  const auto fac = factor(n);
  for (const auto& [p, r] : fac) {
    const long pr = ipow(p, r);
    if (!(a.multiple(pr) == a.multiple(pr * p))) out.rhs = false;
  }
  // Primes above |A| do not divide |A|, so they act bijectively.
  const ElementSet all = a.multiple(1);
  for (long q = 2; q <= a.order(); ++q) {
    if (!is_prime(q) || n % q == 0) continue;
    if (!(a.multiple(q) == all)) out.rhs = false;
  }
  return out;
}

Equivalence ck_lemma12(long m, long p, long r) {
  if (m < 2) throw std::invalid_argument("m must be at least 2");
  if (!is_prime(p)) throw Error(ErrorCode::NotPrime, std::to_string(p) + " is not prime");
  if (r < 1) throw std::invalid_argument("r must be positive");
  const FiniteAbelianGroup c({m}, m);
  long pr = 1;
  for (long k = 0; k < r; ++k) pr *= p;
  Equivalence out;
  out.lhs = c.multiple(pr) == c.multiple(pr * p);
  const ElementSet mu = c.torsion(pr);
  const ElementSet pth = c.multiple(p);
  ElementSet sum(static_cast<int>(m));
  for (int x : mu.elements()) {
    for (int y : pth.elements()) sum.set(c.add(x, y));
  }
  out.rhs = sum.count() == m;
  return out;
}

MuDegree ck_mu_in_limit_field(long p, long q) {
  if (!is_prime(p)) throw Error(ErrorCode::NotPrime, std::to_string(p) + " is not prime");
  if (!is_prime(q)) throw Error(ErrorCode::NotPrime, std::to_string(q) + " is not prime");
  if (p == q) throw std::invalid_argument("p and q must differ");
  MuDegree out;
  long x = p % q;
  out.degree = 1;
  while (x != 1) {
    x = x * (p % q) % q;
    ++out.degree;
  }
  out.mu_in_F = out.degree % p != 0;
  return out;
}

Ck1Report ck_mt_order(long t) {
  if (t < 1) throw std::invalid_argument("t must be positive");
  // 2 is a unit of ℤ[1/2], so tΓ = t'Γ with t' the odd part of t, and
  // ℤ → Γ/t'Γ is onto with kernel t'ℤ.
  long odd = t;
  while (odd % 2 == 0) odd /= 2;
  Ck1Report r;
  r.t = t;
  r.order_lower_bound = odd;
  r.exact_for_ideal_residue = true;
  r.basis_note =
      "CK1(M_t) = Nrd(Q*)/F*^(2t) maps onto Gamma/t*Gamma with Gamma = Z[1/2]; equal when positive units are "
      "divisible (real coefficients), a lower bound over constructible coefficients";
  return r;
}

std::vector<NormalPrime> ck_normal_primes(ModelKind model, long bound) {
  std::vector<NormalPrime> out;
  if (model == ModelKind::Puiseux) {
    const Sphere<PuiseuxModel> sphere;
    const PuiseuxElement zero(0);
    const Quaternion<PuiseuxElement> x{PuiseuxElement::x(), zero, zero, zero};
    for (long p = 3; p <= bound; p += 2) {
      if (!is_prime(p)) continue;
      if (sphere.normal_index_p_member(x, p)) continue;
      out.push_back({p, "x", "v(x) = 1 is not in " + std::to_string(p) + "*Z[1/2]"});
    }
  } else {
    const mpz_class two = 2;
    for (long p = 3; p <= bound; p += 2) {
      if (!is_prime(p)) continue;
      mpz_class root;
      if (mpz_root(root.get_mpz_t(), two.get_mpz_t(), static_cast<unsigned long>(p)) != 0) continue;
      out.push_back({p, "2", "x^" + std::to_string(p) + " = 2 has no rational root; Q*/Q*^p injects into F*/F*^p"});
    }
  }
  return out;
}

}  // namespace divalg
