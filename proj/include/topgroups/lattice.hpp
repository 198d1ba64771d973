#pragma once

#include <algorithm>
#include <string>
#include <unordered_map>
#include <vector>

#include "topgroups/group.hpp"

namespace topgroups {

struct LatticeOptions {
  int order_cap = 512;                     // largest parent order accepted
  long long subgroup_budget = 1'000'000;   // discovery limit
};

/// Every subgroup of one parent group, as subsets, in canonical order
/// (by order, then by membership). Normality flags and — for lattices of
/// up to 2^14 subgroups — the containment relation are precomputed.
class SubgroupLattice {
 public:
  SubgroupLattice(const Group& parent, std::vector<Subgroup> subgroups)
      : parent_(&parent), subgroups_(std::move(subgroups)) {
    std::sort(subgroups_.begin(), subgroups_.end(), canonical_less);
    const int count = static_cast<int>(subgroups_.size());
    normal_.resize(subgroups_.size());
    for (int i = 0; i < count; ++i) normal_[i] = is_normal(parent, subgroups_[i]);
    if (count <= (1 << 14)) {
      contain_words_ = (static_cast<std::size_t>(count) + 63) / 64;
      contain_.assign(contain_words_ * count, 0);
      for (int i = 0; i < count; ++i)
        for (int j = 0; j < count; ++j)
          if (subgroups_[j].members.subset_of(subgroups_[i].members))
            contain_[static_cast<std::size_t>(i) * contain_words_ + (j >> 6)] |=
                std::uint64_t{1} << (j & 63);
    }
  }

  const Group& parent() const { return *parent_; }
  int size() const { return static_cast<int>(subgroups_.size()); }
  const Subgroup& at(int i) const { return subgroups_[static_cast<std::size_t>(i)]; }
  const std::vector<Subgroup>& subgroups() const { return subgroups_; }
  bool is_normal_member(int i) const { return normal_[static_cast<std::size_t>(i)]; }

  /// subgroups[sup] ⊇ subgroups[sub].
  bool contains(int sup, int sub) const {
    if (!contain_.empty())
      return (contain_[static_cast<std::size_t>(sup) * contain_words_ + (sub >> 6)] >>
              (sub & 63)) &
             1u;
    return subgroups_[static_cast<std::size_t>(sub)].members.subset_of(
        subgroups_[static_cast<std::size_t>(sup)].members);
  }

  int index_of(const MemberSet& m) const {
    const int order = m.count();
    Subgroup probe;
    probe.order = order;
    auto it = std::lower_bound(subgroups_.begin(), subgroups_.end(), probe,
                               [](const Subgroup& a, const Subgroup& b) {
                                 return a.order < b.order;
                               });
    for (; it != subgroups_.end() && it->order == order; ++it)
      if (it->members == m) return static_cast<int>(it - subgroups_.begin());
    return -1;
  }

  int trivial_index() const { return 0; }
  int whole_index() const { return size() - 1; }

 private:
  const Group* parent_;
  std::vector<Subgroup> subgroups_;
  std::vector<char> normal_;
  std::vector<std::uint64_t> contain_;
  std::size_t contain_words_ = 0;
};

/// Exhaustive subgroup enumeration by breadth-first closure extension:
/// grow each discovered subgroup by one element of prime-power order and
/// deduplicate by membership. Elements of prime-power order suffice
/// because every element generates the product of its prime-power parts;
/// extending only by the canonical generator of each cyclic subgroup
/// (⟨H,x⟩ = ⟨H,y⟩ whenever ⟨x⟩ = ⟨y⟩) trims the branching further.
inline SubgroupLattice all_subgroups(const Group& g, const LatticeOptions& opt = {}) {
  if (g.order > opt.order_cap)
    throw CapExceeded("lattice enumeration capped at order " + std::to_string(opt.order_cap) +
                      " (group has order " + std::to_string(g.order) + ")");

  std::vector<int> canonical_gens;
  std::vector<std::vector<int>> cyclic_of;   // aligned with canonical_gens
  {
    std::vector<char> covered(static_cast<std::size_t>(g.order), 0);
    for (int x = 1; x < g.order; ++x) {
      const int ord = element_order(g, x);
      // prime power <=> ord is a power of its smallest prime factor
      int small = ord;
      for (int d = 2; d * d <= ord; ++d)
        if (ord % d == 0) {
          small = d;
          break;
        }
      int t = ord;
      while (t % small == 0) t /= small;
      if (t != 1) continue;  // not a prime power
      if (covered[x]) continue;
      Subgroup cyc = closure(g, std::vector<int>{x});
      // x is the least untouched generator of ⟨x⟩; mark the other
      // generators so each cyclic subgroup contributes once.
      for (int y : cyc.elements())
        if (element_order(g, y) == ord) covered[y] = 1;
      canonical_gens.push_back(x);
      cyclic_of.push_back(cyc.elements());
    }
  }

  std::unordered_map<MemberSet, int, MemberSetHash> seen;
  std::vector<Subgroup> found;
  found.push_back(trivial_subgroup(g));
  seen.emplace(found.back().members, 0);
  for (std::size_t head = 0; head < found.size(); ++head) {
    // take a copy: `found` may reallocate while we extend
    const Subgroup h = found[head];
    for (std::size_t k = 0; k < canonical_gens.size(); ++k) {
      if (h.contains(canonical_gens[k])) continue;
      Subgroup ext = extend_closure(g, h, cyclic_of[k]);
      if (seen.emplace(ext.members, static_cast<int>(found.size())).second) {
        if (static_cast<long long>(found.size()) + 1 > opt.subgroup_budget)
          throw BudgetExceeded("subgroup budget " + std::to_string(opt.subgroup_budget) +
                               " exceeded");
        found.push_back(std::move(ext));
      }
    }
  }
  return SubgroupLattice(g, std::move(found));
}

inline std::vector<int> maximal_indices(const SubgroupLattice& l) {
  std::vector<int> out;
  const int whole = l.whole_index();
  for (int i = 0; i < l.size(); ++i) {
    if (i == whole) continue;
    bool maximal = true;
    for (int j = 0; j < l.size() && maximal; ++j)
      if (j != whole && j != i && l.contains(j, i)) maximal = false;
    if (maximal) out.push_back(i);
  }
  return out;
}

inline std::vector<int> normal_indices(const SubgroupLattice& l) {
  std::vector<int> out;
  for (int i = 0; i < l.size(); ++i)
    if (l.is_normal_member(i)) out.push_back(i);
  return out;
}

inline std::vector<int> minimal_normal_indices(const SubgroupLattice& l) {
  std::vector<int> normals = normal_indices(l);
  std::vector<int> out;
  for (int i : normals) {
    if (l.at(i).order == 1) continue;
    bool minimal = true;
    for (int j : normals) {
      if (j == i || l.at(j).order == 1) continue;
      if (l.contains(i, j)) {
        minimal = false;
        break;
      }
    }
    if (minimal) out.push_back(i);
  }
  return out;
}

inline std::vector<Subgroup> maximal_subgroups(const SubgroupLattice& l) {
  std::vector<Subgroup> out;
  for (int i : maximal_indices(l)) out.push_back(l.at(i));
  return out;
}

inline std::vector<Subgroup> normal_subgroups(const SubgroupLattice& l) {
  std::vector<Subgroup> out;
  for (int i : normal_indices(l)) out.push_back(l.at(i));
  return out;
}

inline std::vector<Subgroup> minimal_normal_subgroups(const SubgroupLattice& l) {
  std::vector<Subgroup> out;
  for (int i : minimal_normal_indices(l)) out.push_back(l.at(i));
  return out;
}

/// Largest normal subgroup of G inside H: the intersection of all
/// conjugates of H.
inline Subgroup normal_core(const Group& g, const Subgroup& h) {
  MemberSet core = h.members;
  for (int x = 1; x < g.order; ++x) {
    MemberSet conj(g.order);
    for (int a : h.elements()) conj.set(conjugate(g, a, x));
    core = core.intersect(conj);
  }
  return subgroup_from_members(g, core);
}

/// Intersection of all maximal subgroups (the whole group when none).
inline Subgroup frattini(const Group& g, const SubgroupLattice& l) {
  std::vector<int> maxes = maximal_indices(l);
  if (maxes.empty()) return whole_group(g);
  MemberSet m = l.at(maxes[0]).members;
  for (std::size_t k = 1; k < maxes.size(); ++k) m = m.intersect(l.at(maxes[k]).members);
  return subgroup_from_members(g, m);
}

/// The canonically least subgroup whose order is the full p-part of |G|
/// (the trivial subgroup when p does not divide |G|).
inline Subgroup sylow(const Group& g, int p, const SubgroupLattice& l) {
  int part = 1;
  int n = g.order;
  while (n % p == 0) {
    n /= p;
    part *= p;
  }
  for (int i = 0; i < l.size(); ++i)
    if (l.at(i).order == part) return l.at(i);
  throw std::logic_error("sylow subgroup missing from lattice");
}

}  // namespace topgroups
