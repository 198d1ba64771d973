#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "topgroups/errors.hpp"
#include "topgroups/member_set.hpp"

namespace topgroups {

/// A finite group given by its full multiplication table. Element 0 is
/// always the identity; every constructor renumbers to guarantee it. The
/// table is validated eagerly (identity, Latin square, associativity), so
/// everything downstream can trust it. Groups are immutable once built and
/// safe to share across threads.
struct Group {
  static constexpr int kHardOrderCap = 1024;

  int order = 1;
  std::vector<int> table;          // row-major: table[a*order + b] = a·b
  std::vector<int> inverse_table;  // inverse_table[a]·a = a·inverse_table[a] = 0
  std::vector<std::string> labels; // optional; empty, or one per element

  int at(int a, int b) const { return table[static_cast<std::size_t>(a) * order + b]; }
  int inv(int a) const { return inverse_table[a]; }
  bool has_labels() const { return !labels.empty(); }
};

/// Validates `table` as a group multiplication table and builds the Group.
/// Identity must sit at index 0; rows/columns must be permutations; the
/// associativity sweep is cubic in the order, which is why construction is
/// refused above `order_cap`.
inline Group make_group(std::vector<int> table, std::vector<std::string> labels = {},
                        int order_cap = Group::kHardOrderCap) {
  std::size_t n = 1;
  while (n * n < table.size()) ++n;
  if (n * n != table.size() || table.empty())
    throw InvalidTable("table size is not a perfect square");
  const int order = static_cast<int>(n);
  if (order_cap > Group::kHardOrderCap) order_cap = Group::kHardOrderCap;
  if (order > order_cap)
    throw CapExceeded("group order " + std::to_string(order) + " exceeds cap " +
                      std::to_string(order_cap));
  if (!labels.empty() && static_cast<int>(labels.size()) != order)
    throw InvalidTable("label count does not match order");

  Group g;
  g.order = order;
  g.table = std::move(table);
  g.labels = std::move(labels);

  for (int v : g.table)
    if (v < 0 || v >= order) throw InvalidTable("table entry out of range");
  for (int b = 0; b < order; ++b)
    if (g.at(0, b) != b) throw InvalidTable("index 0 is not a left identity");
  for (int a = 0; a < order; ++a)
    if (g.at(a, 0) != a) throw InvalidTable("index 0 is not a right identity");

  std::vector<char> seen(static_cast<std::size_t>(order));
  for (int a = 0; a < order; ++a) {
    std::fill(seen.begin(), seen.end(), 0);
    for (int b = 0; b < order; ++b) {
      int v = g.at(a, b);
      if (seen[v]) throw InvalidTable("row " + std::to_string(a) + " is not a permutation");
      seen[v] = 1;
    }
  }
  for (int b = 0; b < order; ++b) {
    std::fill(seen.begin(), seen.end(), 0);
    for (int a = 0; a < order; ++a) {
      int v = g.at(a, b);
      if (seen[v]) throw InvalidTable("column " + std::to_string(b) + " is not a permutation");
      seen[v] = 1;
    }
  }

  for (int a = 0; a < order; ++a)
    for (int b = 0; b < order; ++b) {
      const int ab = g.at(a, b);
      for (int c = 0; c < order; ++c)
        if (g.at(ab, c) != g.at(a, g.at(b, c)))
          throw InvalidTable("table is not associative at (" + std::to_string(a) + "," +
                             std::to_string(b) + "," + std::to_string(c) + ")");
    }

  g.inverse_table.resize(static_cast<std::size_t>(order));
  for (int a = 0; a < order; ++a) {
    int found = -1;
    for (int b = 0; b < order; ++b)
      if (g.at(a, b) == 0) {
        found = b;
        break;
      }
    if (found < 0 || g.at(found, a) != 0) throw InvalidTable("element without two-sided inverse");
    g.inverse_table[a] = found;
  }
  return g;
}

namespace detail {
inline void check_index(const Group& g, int x) {
  if (x < 0 || x >= g.order)
    throw std::out_of_range("element index " + std::to_string(x) + " out of range for order " +
                            std::to_string(g.order));
}
}  // namespace detail

inline int multiply(const Group& g, int a, int b) {
  detail::check_index(g, a);
  detail::check_index(g, b);
  return g.at(a, b);
}

inline int inverse_of(const Group& g, int x) {
  detail::check_index(g, x);
  return g.inv(x);
}

/// x^y = y⁻¹ x y.
inline int conjugate(const Group& g, int x, int y) {
  detail::check_index(g, x);
  detail::check_index(g, y);
  return g.at(g.at(g.inv(y), x), y);
}

/// [x,y] = x⁻¹ x^y = x⁻¹ y⁻¹ x y.
inline int commutator(const Group& g, int x, int y) {
  detail::check_index(g, x);
  detail::check_index(g, y);
  return g.at(g.inv(x), g.at(g.at(g.inv(y), x), y));
}

inline int element_order(const Group& g, int x) {
  detail::check_index(g, x);
  int acc = x, k = 1;
  while (acc != 0) {
    acc = g.at(acc, x);
    ++k;
  }
  return k;
}

inline bool is_abelian(const Group& g) {
  for (int a = 1; a < g.order; ++a)
    for (int b = a + 1; b < g.order; ++b)
      if (g.at(a, b) != g.at(b, a)) return false;
  return true;
}

inline int find_label(const Group& g, const std::string& name) {
  for (int i = 0; i < static_cast<int>(g.labels.size()); ++i)
    if (g.labels[i] == name) return i;
  return -1;
}

/// A subgroup is a membership set over its parent's element indices.
/// Instances are produced by closure() and friends and always satisfy the
/// subgroup axioms (identity, products, inverses) plus Lagrange.
struct Subgroup {
  const Group* parent = nullptr;
  MemberSet members;
  int order = 0;

  bool contains(int x) const { return members.test(x); }
  std::vector<int> elements() const { return members.to_vector(); }
  bool is_trivial() const { return order == 1; }
  bool is_whole() const { return parent && order == parent->order; }
};

/// Canonical subgroup order: by order, then by membership as sorted
/// element lists. This is the order the lattice lists subgroups in.
inline bool canonical_less(const Subgroup& a, const Subgroup& b) {
  if (a.order != b.order) return a.order < b.order;
  return a.members.compare_lex(b.members) < 0;
}

namespace detail {
inline Subgroup subgroup_unchecked(const Group& g, MemberSet m) {
  Subgroup s;
  s.parent = &g;
  s.order = m.count();
  s.members = std::move(m);
  return s;
}
}  // namespace detail

/// Wraps a member set as a Subgroup after checking the axioms and Lagrange.
inline Subgroup subgroup_from_members(const Group& g, const MemberSet& m) {
  if (!m.test(0)) throw InvalidTable("subgroup must contain the identity");
  std::vector<int> elems = m.to_vector();
  for (int a : elems) {
    if (!m.test(g.inv(a))) throw InvalidTable("subgroup not closed under inversion");
    for (int b : elems)
      if (!m.test(g.at(a, b))) throw InvalidTable("subgroup not closed under products");
  }
  if (g.order % static_cast<int>(elems.size()) != 0)
    throw InvalidTable("subgroup order violates Lagrange");
  return detail::subgroup_unchecked(g, m);
}

inline Subgroup trivial_subgroup(const Group& g) {
  MemberSet m(g.order);
  m.set(0);
  return detail::subgroup_unchecked(g, std::move(m));
}

inline Subgroup whole_group(const Group& g) {
  MemberSet m(g.order);
  for (int i = 0; i < g.order; ++i) m.set(i);
  return detail::subgroup_unchecked(g, std::move(m));
}

namespace detail {
/// Closure under products of already-known elements plus `extra`. `base`
/// may be a closed set (then only cross products with the new elements are
/// walked). In a finite group product closure yields inverses and the
/// identity for free.
inline Subgroup closure_grow(const Group& g, const std::vector<int>& base,
                             const std::vector<int>& extra) {
  MemberSet m(g.order);
  std::vector<int> elems;
  elems.reserve(static_cast<std::size_t>(g.order));
  m.set(0);
  elems.push_back(0);
  auto add = [&](int x) {
    if (!m.test(x)) {
      m.set(x);
      elems.push_back(x);
    }
  };
  for (int x : base) add(x);
  const std::size_t closed_prefix = elems.size();
  for (int x : extra) add(x);
  // Pair (a,b) is processed, in both orders, when the later of the two is
  // reached by the outer index, so a single growing pass is complete.
  // Pairs inside the closed prefix are skipped.
  for (std::size_t i = (elems.size() == closed_prefix ? closed_prefix : 0); i < elems.size(); ++i) {
    std::size_t jstart = (i < closed_prefix) ? closed_prefix : 0;
    for (std::size_t j = jstart; j < elems.size(); ++j) {
      add(g.at(elems[i], elems[j]));
      add(g.at(elems[j], elems[i]));
    }
  }
  Subgroup s;
  s.parent = &g;
  s.order = static_cast<int>(elems.size());
  s.members = std::move(m);
  return s;
}
}  // namespace detail

/// Smallest subgroup containing `seed` (⟨seed⟩).
inline Subgroup closure(const Group& g, const std::vector<int>& seed) {
  for (int x : seed) detail::check_index(g, x);
  return detail::closure_grow(g, {}, seed);
}

inline Subgroup closure(const Group& g, const MemberSet& seed) {
  return detail::closure_grow(g, {}, seed.to_vector());
}

/// ⟨H ∪ extra⟩ for an already-closed H; skips the H×H product sweep.
inline Subgroup extend_closure(const Group& g, const Subgroup& h, const std::vector<int>& extra) {
  return detail::closure_grow(g, h.elements(), extra);
}

/// [A,B] = ⟨[a,b] : a ∈ A, b ∈ B⟩.
inline Subgroup mutual_commutator(const Group& g, const Subgroup& a, const Subgroup& b) {
  MemberSet seed(g.order);
  for (int x : a.elements())
    for (int y : b.elements()) seed.set(commutator(g, x, y));
  return closure(g, seed);
}

inline Subgroup derived_subgroup(const Group& g, const Subgroup& h) {
  return mutual_commutator(g, h, h);
}

inline Subgroup derived_subgroup(const Group& g) { return derived_subgroup(g, whole_group(g)); }

inline long long abelianization_order(const Group& g, const Subgroup& h) {
  return h.order / derived_subgroup(g, h).order;
}

inline long long abelianization_order(const Group& g) {
  return abelianization_order(g, whole_group(g));
}

/// Elements of `inside` commuting with every element of `of`.
inline Subgroup centralizer(const Group& g, const Subgroup& inside, const Subgroup& of) {
  MemberSet m(g.order);
  std::vector<int> targets = of.elements();
  for (int a : inside.elements()) {
    bool commutes = true;
    for (int b : targets)
      if (g.at(a, b) != g.at(b, a)) {
        commutes = false;
        break;
      }
    if (commutes) m.set(a);
  }
  return subgroup_from_members(g, m);
}

inline Subgroup center(const Group& g) {
  Subgroup whole = whole_group(g);
  return centralizer(g, whole, whole);
}

inline bool is_normal(const Group& g, const Subgroup& h) {
  for (int x = 1; x < g.order; ++x)
    for (int a : h.elements())
      if (!h.contains(conjugate(g, a, x))) return false;
  return true;
}

inline bool is_abelian(const Group& g, const Subgroup& h) {
  std::vector<int> elems = h.elements();
  for (std::size_t i = 0; i < elems.size(); ++i)
    for (std::size_t j = i + 1; j < elems.size(); ++j)
      if (g.at(elems[i], elems[j]) != g.at(elems[j], elems[i])) return false;
  return true;
}

/// Abelian with every non-identity element of one shared prime order.
/// The trivial subgroup qualifies vacuously.
inline bool is_elementary_abelian(const Group& g, const Subgroup& h) {
  if (!is_abelian(g, h)) return false;
  int p = 0;
  for (int x : h.elements()) {
    if (x == 0) continue;
    int o = element_order(g, x);
    if (p == 0) {
      for (int d = 2; d * d <= o; ++d)
        if (o % d == 0) return false;
      p = o;
    } else if (o != p) {
      return false;
    }
  }
  return true;
}

/// Element-set product A·B (not necessarily a subgroup).
inline MemberSet product_set(const Group& g, const MemberSet& a, const MemberSet& b) {
  MemberSet out(g.order);
  for (int x : a.to_vector())
    for (int y : b.to_vector()) out.set(g.at(x, y));
  return out;
}

/// |A·B| = |A||B| / |A∩B| — valid for any two subgroups.
inline long long product_order(const Subgroup& a, const Subgroup& b) {
  return static_cast<long long>(a.order) * b.order / a.members.intersection_count(b.members);
}

/// A·B as a validated Subgroup; the caller must pass subgroups whose
/// element-set product is itself a subgroup (e.g. one factor normal).
inline Subgroup set_product_subgroup(const Group& g, const Subgroup& a, const Subgroup& b) {
  return subgroup_from_members(g, product_set(g, a.members, b.members));
}

struct QuotientResult {
  Group group;
  std::vector<int> projection;  // parent element → coset index
};

/// G/N on the cosets of a normal subgroup, each coset represented by its
/// minimal element index so the numbering is reproducible. Coset 0 is the
/// identity coset.
inline QuotientResult quotient(const Group& g, const Subgroup& n) {
  if (!is_normal(g, n))
    throw NotNormal("quotient requires a normal subgroup (order " + std::to_string(n.order) + ")");
  const std::vector<int> nelems = n.elements();
  std::vector<int> rep(static_cast<std::size_t>(g.order), -1);
  std::vector<int> reps;
  for (int x = 0; x < g.order; ++x) {
    if (rep[x] >= 0) continue;
    // x is minimal in its coset: smaller members would have claimed it.
    reps.push_back(x);
    for (int m : nelems) rep[g.at(x, m)] = x;
  }
  std::vector<int> coset_index(static_cast<std::size_t>(g.order), -1);
  for (int i = 0; i < static_cast<int>(reps.size()); ++i) coset_index[reps[i]] = i;

  const int q = static_cast<int>(reps.size());
  std::vector<int> table(static_cast<std::size_t>(q) * q);
  for (int i = 0; i < q; ++i)
    for (int j = 0; j < q; ++j)
      table[static_cast<std::size_t>(i) * q + j] = coset_index[rep[g.at(reps[i], reps[j])]];

  QuotientResult out{make_group(std::move(table)), {}};
  out.projection.resize(static_cast<std::size_t>(g.order));
  for (int x = 0; x < g.order; ++x) out.projection[x] = coset_index[rep[x]];
  return out;
}

/// A × B with pair (a,b) at index a·|B| + b.
inline Group direct_product(const Group& a, const Group& b) {
  const long long n = static_cast<long long>(a.order) * b.order;
  if (n > Group::kHardOrderCap)
    throw CapExceeded("direct product order " + std::to_string(n) + " exceeds hard cap");
  const int an = a.order, bn = b.order, order = static_cast<int>(n);
  std::vector<int> table(static_cast<std::size_t>(order) * order);
  for (int a1 = 0; a1 < an; ++a1)
    for (int b1 = 0; b1 < bn; ++b1)
      for (int a2 = 0; a2 < an; ++a2)
        for (int b2 = 0; b2 < bn; ++b2)
          table[static_cast<std::size_t>(a1 * bn + b1) * order + (a2 * bn + b2)] =
              a.at(a1, a2) * bn + b.at(b1, b2);
  return make_group(std::move(table));
}

/// The subgroup as a group in its own right; local index i is the i-th
/// member in ascending parent order, so the identity stays at 0. When
/// `elems_out` is given it receives the local→parent element map.
inline Group induced_group(const Group& g, const Subgroup& h, std::vector<int>* elems_out = nullptr) {
  std::vector<int> elems = h.elements();
  std::vector<int> local(static_cast<std::size_t>(g.order), -1);
  for (int i = 0; i < static_cast<int>(elems.size()); ++i) local[elems[i]] = i;
  const int k = static_cast<int>(elems.size());
  std::vector<int> table(static_cast<std::size_t>(k) * k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) table[static_cast<std::size_t>(i) * k + j] = local[g.at(elems[i], elems[j])];
  std::vector<std::string> labels;
  if (g.has_labels())
    for (int e : elems) labels.push_back(g.labels[e]);
  if (elems_out) *elems_out = std::move(elems);
  return make_group(std::move(table), std::move(labels));
}

}  // namespace topgroups
