#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "divalg/error.hpp"

namespace divalg {

/// A subset of {0, …, n−1} as a bitset.
class ElementSet {
 public:
  ElementSet() = default;
  explicit ElementSet(int n) : n_(n), words_((static_cast<std::size_t>(n) + 63) / 64, 0) {}

  int universe() const noexcept { return n_; }
  bool test(int a) const { return (words_[a >> 6] >> (a & 63)) & 1U; }
  void set(int a) { words_[a >> 6] |= std::uint64_t{1} << (a & 63); }
  int count() const;
  bool subset_of(const ElementSet& other) const;
  std::vector<int> elements() const;
  const std::vector<std::uint64_t>& words() const noexcept { return words_; }
  bool operator==(const ElementSet& other) const { return words_ == other.words_; }

 private:
  int n_ = 0;
  std::vector<std::uint64_t> words_;
};

struct ElementSetHash {
  std::size_t operator()(const ElementSet& s) const noexcept {
    std::size_t h = 0x9e3779b97f4a7c15ULL;
    for (std::uint64_t w : s.words()) h = (h ^ w) * 0x100000001b3ULL + (h >> 29);
    return h;
  }
};

struct SubgroupRecord {
  std::vector<int> generators;
  long order = 0;
  long index = 0;
  bool normal = false;
  bool maximal = false;
  ElementSet members;
};

struct LatticeOptions {
  /// Enumeration stops with GroupTooLarge beyond this many subgroups.
  std::size_t max_subgroups = 1'000'000;
  bool normality = true;
};

/// Every subgroup of a group on {0, …, n−1} with identity 0, exactly once,
/// sorted by order. Subgroups are grown by joining a known subgroup H with a
/// cyclic subgroup ⟨c⟩ ⊄ H; ⟨H, c⟩ is built coset by coset. H is maximal
/// exactly when every such join is the whole group.
template <class Mul, class Inv>
std::vector<SubgroupRecord> enumerate_subgroups(int n, Mul mul, Inv inv, const LatticeOptions& opt = {}) {
  struct Node {
    SubgroupRecord rec;
    std::vector<int> elems;
  };
  std::vector<Node> nodes;
  std::unordered_map<ElementSet, std::size_t, ElementSetHash> seen;

  auto add = [&](ElementSet members, std::vector<int> elems, std::vector<int> gens) {
    if (seen.count(members) != 0) return;
    if (nodes.size() >= opt.max_subgroups) {
      throw Error(ErrorCode::GroupTooLarge, "more than " + std::to_string(opt.max_subgroups) + " subgroups");
    }
    seen.emplace(members, nodes.size());
    Node node;
    node.rec.generators = std::move(gens);
    node.rec.order = static_cast<long>(elems.size());
    node.rec.index = n / node.rec.order;
    node.rec.members = std::move(members);
    node.elems = std::move(elems);
    nodes.push_back(std::move(node));
  };

  ElementSet trivial(n);
  trivial.set(0);
  add(trivial, {0}, {});

  // One generator per cyclic subgroup.
  std::vector<int> cyclic_gens;
  for (int a = 1; a < n; ++a) {
    ElementSet s(n);
    std::vector<int> elems{0};
    s.set(0);
    for (int x = a; x != 0; x = mul(x, a)) {
      s.set(x);
      elems.push_back(x);
    }
    if (seen.count(s) != 0) continue;
    cyclic_gens.push_back(a);
    add(std::move(s), std::move(elems), {a});
  }

  std::vector<bool> all_joins_full(nodes.size(), true);
  for (std::size_t idx = 0; idx < nodes.size(); ++idx) {
    bool full = true;
    // Copies: add() may reallocate nodes.
    const ElementSet base = nodes[idx].rec.members;
    const std::vector<int> h = nodes[idx].elems;
    const std::vector<int> base_gens = nodes[idx].rec.generators;
    for (int c : cyclic_gens) {
      if (base.test(c)) continue;
      std::vector<int> gens = base_gens;
      gens.push_back(c);
      ElementSet k = base;
      std::vector<int> elems = h;
      std::vector<int> reps{0};
      for (std::size_t r = 0; r < reps.size(); ++r) {
        for (int g : gens) {
          const int y = mul(g, reps[r]);
          if (k.test(y)) continue;
          reps.push_back(y);
          for (int x : h) {
            const int z = mul(y, x);
            k.set(z);
            elems.push_back(z);
          }
        }
      }
      if (static_cast<int>(elems.size()) != n) full = false;
      add(std::move(k), std::move(elems), std::move(gens));
    }
    if (all_joins_full.size() < nodes.size()) all_joins_full.resize(nodes.size(), true);
    all_joins_full[idx] = full;
  }

  std::vector<int> group_gens;
  for (const Node& node : nodes) {
    if (node.rec.order == n) group_gens = node.rec.generators;
  }
  std::vector<SubgroupRecord> out;
  out.reserve(nodes.size());
  for (std::size_t idx = 0; idx < nodes.size(); ++idx) {
    SubgroupRecord rec = std::move(nodes[idx].rec);
    rec.maximal = rec.order < n && all_joins_full[idx];
    rec.normal = true;
    if (opt.normality) {
      for (int s : group_gens) {
        const int si = inv(s);
        for (int h : rec.generators) {
          if (!rec.members.test(mul(mul(s, h), si))) rec.normal = false;
        }
      }
    }
    out.push_back(std::move(rec));
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const SubgroupRecord& a, const SubgroupRecord& b) { return a.order < b.order; });
  return out;
}

/// A finite group on {0, …, n−1} with identity 0, stored as a Cayley table.
/// The axioms are verified at construction (associativity exhaustively).
class FiniteGroup {
 public:
  static constexpr int kMaxOrder = 512;

  FiniteGroup(int order, const std::function<int(int, int)>& mul, std::function<std::string(int)> label = {});

  static FiniteGroup cyclic(int n);

  int order() const noexcept { return n_; }
  int identity() const noexcept { return 0; }
  int mul(int a, int b) const { return table_[static_cast<std::size_t>(a) * n_ + b]; }
  int inv(int a) const { return inv_[a]; }
  int element_order(int a) const { return orders_[a]; }
  std::string label(int a) const { return label_ ? label_(a) : std::to_string(a); }
  /// The subgroup generated by the given elements.
  ElementSet generated(const std::vector<int>& gens) const;

 private:
  int n_;
  std::vector<std::uint16_t> table_;
  std::vector<int> inv_;
  std::vector<int> orders_;
  std::function<std::string(int)> label_;
};

/// [ℤ/m] ⋊ ℤ/n with the generator of ℤ/n acting by multiplication by q.
/// The pair (u, i) is the element u + m·i and
///   (u, i)·(u′, i′) = (u + qⁱ·u′ mod m, i + i′ mod n).
struct SemidirectZnZm {
  long m = 1;
  long n = 1;
  long q = 1;

  long order() const { return m * n; }
  int encode(long u, long i) const { return static_cast<int>(((u % m + m) % m) + m * ((i % n + n) % n)); }
  std::pair<long, long> decode(int e) const { return {e % m, e / m}; }
  int mul(int a, int b) const;
  FiniteGroup group() const;
};

SemidirectZnZm fg_semidirect(long m, long n, long q);
std::vector<SubgroupRecord> fg_subgroups(const FiniteGroup& g);
std::vector<SubgroupRecord> fg_maximal(const FiniteGroup& g);
/// G ≅ 𝒟_k: |G| = 2k and some r of order k, s of order 2 outside ⟨r⟩ satisfy
/// s·r·s⁻¹ = r⁻¹.
bool fg_iso_dihedral(const FiniteGroup& g, long k);

}  // namespace divalg
