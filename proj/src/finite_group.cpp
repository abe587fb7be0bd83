#include "divalg/finite_group.hpp"

#include <bit>
#include <numeric>
#include <stdexcept>

namespace divalg {

int ElementSet::count() const {
  int c = 0;
  for (std::uint64_t w : words_) c += std::popcount(w);
  return c;
}

bool ElementSet::subset_of(const ElementSet& other) const {
  for (std::size_t k = 0; k < words_.size(); ++k) {
    if ((words_[k] & ~other.words_[k]) != 0) return false;
  }
  return true;
}

std::vector<int> ElementSet::elements() const {
  std::vector<int> out;
  for (int a = 0; a < n_; ++a) {
    if (test(a)) out.push_back(a);
  }
  return out;
}

FiniteGroup::FiniteGroup(int order, const std::function<int(int, int)>& mul, std::function<std::string(int)> label)
    : n_(order), label_(std::move(label)) {
  if (order < 1) throw std::invalid_argument("group order must be positive");
  if (order > kMaxOrder) {
    throw Error(ErrorCode::GroupTooLarge, "order " + std::to_string(order) + " exceeds " + std::to_string(kMaxOrder));
  }
  const auto n = static_cast<std::size_t>(order);
  table_.resize(n * n);
  for (int a = 0; a < order; ++a) {
    std::vector<bool> row(n, false);
    for (int b = 0; b < order; ++b) {
      const int c = mul(a, b);
      if (c < 0 || c >= order || row[c]) throw std::invalid_argument("multiplication table is not a Latin square");
      row[c] = true;
      table_[a * n + b] = static_cast<std::uint16_t>(c);
    }
  }
  for (int a = 0; a < order; ++a) {
    if (this->mul(0, a) != a || this->mul(a, 0) != a) throw std::invalid_argument("0 is not the identity");
  }
  for (int a = 0; a < order; ++a) {
    for (int b = 0; b < order; ++b) {
      const int ab = this->mul(a, b);
      for (int c = 0; c < order; ++c) {
        if (this->mul(ab, c) != this->mul(a, this->mul(b, c))) throw std::invalid_argument("operation is not associative");
      }
    }
  }
  inv_.resize(n);
  orders_.resize(n);
  for (int a = 0; a < order; ++a) {
    for (int b = 0; b < order; ++b) {
      if (this->mul(a, b) == 0) inv_[a] = b;
    }
    int k = 1;
    for (int x = a; x != 0; x = this->mul(x, a)) ++k;
    orders_[a] = k;
  }
}

FiniteGroup FiniteGroup::cyclic(int n) {
  return FiniteGroup(n, [n](int a, int b) { return (a + b) % n; });
}

ElementSet FiniteGroup::generated(const std::vector<int>& gens) const {
  ElementSet s(n_);
  std::vector<int> queue{0};
  s.set(0);
  for (std::size_t k = 0; k < queue.size(); ++k) {
    for (int g : gens) {
      const int y = mul(queue[k], g);
      if (!s.test(y)) {
        s.set(y);
        queue.push_back(y);
      }
    }
  }
  return s;
}

int SemidirectZnZm::mul(int a, int b) const {
  const auto [u, i] = decode(a);
  const auto [v, j] = decode(b);
  long t = v;
  for (long k = 0; k < i; ++k) t = (t * q) % m;
  return encode(u + t, i + j);
}

FiniteGroup SemidirectZnZm::group() const {
  const SemidirectZnZm self = *this;
  return FiniteGroup(
      static_cast<int>(order()), [self](int a, int b) { return self.mul(a, b); },
      [self](int e) {
        const auto [u, i] = self.decode(e);
        return "(" + std::to_string(u) + "," + std::to_string(i) + ")";
      });
}

SemidirectZnZm fg_semidirect(long m, long n, long q) {
  if (m < 1 || n < 1) throw std::invalid_argument("m and n must be positive");
  if (m * n > FiniteGroup::kMaxOrder) {
    throw Error(ErrorCode::GroupTooLarge, "order " + std::to_string(m * n) + " exceeds " +
                                              std::to_string(FiniteGroup::kMaxOrder));
  }
  const long qm = ((q % m) + m) % m;
  if (std::gcd(qm, m) != 1 && m > 1) throw Error(ErrorCode::BadAction, "q is not a unit modulo m");
  long p = 1 % m;
  for (long k = 0; k < n; ++k) p = (p * qm) % m;
  if (p != 1 % m) throw Error(ErrorCode::BadAction, "q^n is not 1 modulo m");
  return SemidirectZnZm{m, n, qm};
}

std::vector<SubgroupRecord> fg_subgroups(const FiniteGroup& g) {
  return enumerate_subgroups(
      g.order(), [&g](int a, int b) { return g.mul(a, b); }, [&g](int a) { return g.inv(a); });
}

std::vector<SubgroupRecord> fg_maximal(const FiniteGroup& g) {
  std::vector<SubgroupRecord> out;
  for (auto& rec : fg_subgroups(g)) {
    if (rec.maximal) out.push_back(std::move(rec));
  }
  return out;
}

bool fg_iso_dihedral(const FiniteGroup& g, long k) {
  if (k < 1 || 2 * k != g.order()) return false;
  for (int r = 0; r < g.order(); ++r) {
    if (g.element_order(r) != k) continue;
    const ElementSet rot = g.generated({r});
    const int ri = g.inv(r);
    for (int s = 0; s < g.order(); ++s) {
      if (g.element_order(s) != 2 || rot.test(s)) continue;
      if (g.mul(g.mul(s, r), g.inv(s)) == ri) return true;
    }
  }
  return false;
}

}  // namespace divalg
