#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "topgroups/lattice.hpp"
#include "topgroups/series.hpp"

namespace topgroups {

namespace detail {

/// Per-member derived subgroups and abelianization orders, computed once
/// per lattice and shared by the classification and verification passes.
struct LatticeStats {
  std::vector<MemberSet> derived;      // derived subgroup of each member
  std::vector<int> derived_order;
  std::vector<long long> ab_order;     // |H| / |H'|
};

inline LatticeStats lattice_stats(const Group& g, const SubgroupLattice& l) {
  LatticeStats s;
  const int count = l.size();
  s.derived.reserve(static_cast<std::size_t>(count));
  s.derived_order.reserve(static_cast<std::size_t>(count));
  s.ab_order.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    Subgroup d = derived_subgroup(g, l.at(i));
    s.derived_order.push_back(d.order);
    s.ab_order.push_back(static_cast<long long>(l.at(i).order) / d.order);
    s.derived.push_back(std::move(d.members));
  }
  return s;
}

/// K (a member) is weakly-top as a group in its own right: the subgroups
/// of K are exactly the members contained in it, and |H/H'| is the same
/// computed inside K or inside G.
inline bool member_is_weakly_top(const SubgroupLattice& l, const LatticeStats& s, int k) {
  for (int j = 0; j < l.size(); ++j)
    if (j != k && l.contains(k, j) && s.ab_order[j] > s.ab_order[k]) return false;
  return true;
}

inline bool member_is_top(const SubgroupLattice& l, const LatticeStats& s, int k) {
  for (int j = 0; j < l.size(); ++j)
    if (j != k && l.contains(k, j) && s.ab_order[j] >= s.ab_order[k]) return false;
  return true;
}

/// Maximal proper members inside member k (the maximal subgroups of K).
inline std::vector<int> maximal_under(const SubgroupLattice& l, int k) {
  std::vector<int> inside;
  for (int j = 0; j < l.size(); ++j)
    if (j != k && l.contains(k, j)) inside.push_back(j);
  std::vector<int> out;
  for (int j : inside) {
    bool maximal = true;
    for (int m : inside)
      if (m != j && l.contains(m, j)) {
        maximal = false;
        break;
      }
    if (maximal) out.push_back(j);
  }
  return out;
}

/// K is special as an abstract group: K' = Z(K) = Φ(K).
inline bool member_is_special(const Group& g, const SubgroupLattice& l, const LatticeStats& s,
                              int k) {
  const Subgroup& sub = l.at(k);
  MemberSet central = centralizer(g, sub, sub).members;
  if (!(central == s.derived[k])) return false;
  std::vector<int> maxes = maximal_under(l, k);
  MemberSet frat = sub.members;
  for (int j : maxes) frat = frat.intersect(l.at(j).members);
  return frat == s.derived[k];
}

}  // namespace detail

struct SectionMax {
  long long order;
  Subgroup witness;  // first attaining subgroup in canonical order
};

/// Largest |H/H'| over all subgroups H ≤ G (G included). Every abelian
/// section H/N satisfies |H/N| ≤ |H/H'|, so this is the largest abelian
/// section order.
inline SectionMax max_abelian_section(const Group& g, const SubgroupLattice& l) {
  detail::LatticeStats s = detail::lattice_stats(g, l);
  long long best = 0;
  int witness = 0;
  for (int i = 0; i < l.size(); ++i)
    if (s.ab_order[i] > best) {
      best = s.ab_order[i];
      witness = i;
    }
  return {best, l.at(witness)};
}

struct PropertyVerdict {
  bool value;
  std::optional<Subgroup> witness;  // violating H (weakly-top) / tying H (top)
};

/// Weakly-top: |H/H'| ≤ |G/G'| for every proper subgroup H < G.
inline PropertyVerdict is_weakly_top(const Group& g, const SubgroupLattice& l) {
  detail::LatticeStats s = detail::lattice_stats(g, l);
  const long long ab = s.ab_order[l.whole_index()];
  for (int i = 0; i < l.size(); ++i)
    if (i != l.whole_index() && s.ab_order[i] > ab) return {false, l.at(i)};
  return {true, std::nullopt};
}

/// Top: the inequality is strict for every proper subgroup.
inline PropertyVerdict is_top(const Group& g, const SubgroupLattice& l) {
  detail::LatticeStats s = detail::lattice_stats(g, l);
  const long long ab = s.ab_order[l.whole_index()];
  for (int i = 0; i < l.size(); ++i)
    if (i != l.whole_index() && s.ab_order[i] >= ab) return {false, l.at(i)};
  return {true, std::nullopt};
}

struct TopSubgroupStats {
  long long max_top_order;
  Subgroup witness;
};

/// Largest subgroup that is top as a group in its own right. Subgroups of
/// a subgroup are exactly the lattice members it contains, so each verdict
/// is a containment scan — no abstract reconstruction needed.
inline TopSubgroupStats top_subgroup_stats(const Group& g, const SubgroupLattice& l) {
  detail::LatticeStats s = detail::lattice_stats(g, l);
  long long best = 0;
  int witness = 0;
  for (int i = 0; i < l.size(); ++i)
    if (l.at(i).order > best && detail::member_is_top(l, s, i)) {
      best = l.at(i).order;
      witness = i;
    }
  return {best, l.at(witness)};
}

/// G' = Z(G) = Φ(G).
inline bool is_special(const Group& g, const SubgroupLattice& l) {
  MemberSet d = derived_subgroup(g).members;
  return d == center(g).members && d == frattini(g, l).members;
}

/// Internal direct decomposition G = P × A with P special (as an abstract
/// group) and A abelian, both normal; first such pair in canonical order.
inline std::optional<std::pair<Subgroup, Subgroup>> special_times_abelian_decomposition(
    const Group& g, const SubgroupLattice& l) {
  detail::LatticeStats s = detail::lattice_stats(g, l);
  std::vector<int> normals = normal_indices(l);
  for (int pi : normals) {
    if (!detail::member_is_special(g, l, s, pi)) continue;
    for (int ai : normals) {
      const Subgroup& p = l.at(pi);
      const Subgroup& a = l.at(ai);
      if (static_cast<long long>(p.order) * a.order != g.order) continue;
      if (p.members.intersection_count(a.members) != 1) continue;
      if (!is_abelian(g, a)) continue;
      return std::make_pair(p, a);
    }
  }
  return std::nullopt;
}

/// Per-group verdicts; delta is carried exactly as the (ab_order, order)
/// pair, the float is display-only.
struct ClassificationRecord {
  std::string group_name;
  long long order = 1;
  long long ab_order = 1;
  long long max_ab_section = 1;
  bool weakly_top = true;
  bool top = true;
  bool nilpotent = true;
  std::optional<int> nil_class;
  std::optional<int> derived_len;
  std::optional<Subgroup> failure_witness;

  double delta() const {
    return order > 1 ? std::log(static_cast<double>(ab_order)) / std::log(static_cast<double>(order))
                     : 0.0;
  }
};

inline ClassificationRecord classify_group(const Group& g, const SubgroupLattice& l,
                                           std::string name) {
  detail::LatticeStats s = detail::lattice_stats(g, l);
  ClassificationRecord rec;
  rec.group_name = std::move(name);
  rec.order = g.order;
  rec.ab_order = s.ab_order[l.whole_index()];
  rec.max_ab_section = 0;
  for (int i = 0; i < l.size(); ++i) rec.max_ab_section = std::max(rec.max_ab_section, s.ab_order[i]);
  rec.weakly_top = true;
  rec.top = true;
  for (int i = 0; i < l.size() && rec.weakly_top; ++i)
    if (i != l.whole_index() && s.ab_order[i] > rec.ab_order) {
      rec.weakly_top = false;
      rec.top = false;
      rec.failure_witness = l.at(i);
    }
  if (rec.weakly_top)
    for (int i = 0; i < l.size() && rec.top; ++i)
      if (i != l.whole_index() && s.ab_order[i] == rec.ab_order) {
        rec.top = false;
        rec.failure_witness = l.at(i);
      }
  rec.nil_class = nilpotency_class(g);
  rec.nilpotent = rec.nil_class.has_value();
  rec.derived_len = derived_length(g);
  return rec;
}

/// Result of one empirical theorem check. `applicable` is false when the
/// hypothesis does not hold for this group (the check is then vacuous).
struct CheckReport {
  std::string check;
  bool applicable = true;
  bool passed = true;
  std::string detail;
};

/// Every quotient of a weakly-top group is weakly-top; same for top.
/// Subgroups of G/N correspond to members containing N, with
/// |(H/N):(H/N)'| = |H:H'N|, so the whole check runs inside G's lattice.
inline CheckReport verify_quotient_heredity(const Group& g, const SubgroupLattice& l) {
  CheckReport rep{"quotient_heredity"};
  detail::LatticeStats s = detail::lattice_stats(g, l);
  const int whole = l.whole_index();
  const bool g_weakly = detail::member_is_weakly_top(l, s, whole);
  const bool g_top = detail::member_is_top(l, s, whole);
  if (!g_weakly) {
    rep.applicable = false;
    rep.detail = "group is not weakly-top";
    return rep;
  }
  for (int ni : normal_indices(l)) {
    const Subgroup& n = l.at(ni);
    auto quotient_ab = [&](int hi) {
      // |H:H'N| via |H'N| = |H'||N| / |H'∩N|
      long long hn = static_cast<long long>(s.derived_order[hi]) * n.order /
                     s.derived[hi].intersection_count(n.members);
      return static_cast<long long>(l.at(hi).order) / hn;
    };
    const long long q_ab = quotient_ab(whole);
    for (int hi = 0; hi < l.size(); ++hi) {
      if (hi == whole || !l.contains(hi, ni)) continue;
      const long long h_ab = quotient_ab(hi);
      if (h_ab > q_ab) {
        rep.passed = false;
        rep.detail = "quotient by normal subgroup of order " + std::to_string(n.order) +
                     " is not weakly-top";
        return rep;
      }
      if (g_top && h_ab == q_ab) {
        rep.passed = false;
        rep.detail = "quotient by normal subgroup of order " + std::to_string(n.order) +
                     " is not top";
        return rep;
      }
    }
  }
  rep.detail = "held for all normal subgroups";
  return rep;
}

/// |G:G'| ≤ |N:N'| · |(G/N):(G/N)'| for every normal N.
inline CheckReport verify_section_bound(const Group& g, const SubgroupLattice& l) {
  CheckReport rep{"section_bound"};
  detail::LatticeStats s = detail::lattice_stats(g, l);
  const int whole = l.whole_index();
  const long long g_ab = s.ab_order[whole];
  for (int ni : normal_indices(l)) {
    const Subgroup& n = l.at(ni);
    long long gn = static_cast<long long>(s.derived_order[whole]) * n.order /
                   s.derived[whole].intersection_count(n.members);
    long long quot_ab = g.order / gn;
    long long n_ab = s.ab_order[ni];
    if (g_ab > n_ab * quot_ab) {
      rep.passed = false;
      rep.detail = "violated at normal subgroup of order " + std::to_string(n.order) + ": " +
                   std::to_string(g_ab) + " > " + std::to_string(n_ab) + "*" +
                   std::to_string(quot_ab);
      return rep;
    }
  }
  rep.detail = "held for all normal subgroups";
  return rep;
}

/// For every non-normal maximal M: MG' = G, |G:G'| = |M:M∩G'| ≤ |M:M'|.
inline CheckReport verify_maximal_inequality(const Group& g, const SubgroupLattice& l) {
  CheckReport rep{"maximal_inequality"};
  detail::LatticeStats s = detail::lattice_stats(g, l);
  const int whole = l.whole_index();
  Subgroup derived = subgroup_from_members(g, s.derived[whole]);
  const long long g_ab = s.ab_order[whole];
  int checked = 0;
  for (int mi : maximal_indices(l)) {
    if (l.is_normal_member(mi)) continue;
    ++checked;
    const Subgroup& m = l.at(mi);
    if (product_order(m, derived) != g.order) {
      rep.passed = false;
      rep.detail = "MG' != G for a non-normal maximal subgroup of order " + std::to_string(m.order);
      return rep;
    }
    long long chain = static_cast<long long>(m.order) /
                      m.members.intersection_count(derived.members);
    if (chain != g_ab || g_ab > s.ab_order[mi]) {
      rep.passed = false;
      rep.detail = "index chain violated at maximal subgroup of order " + std::to_string(m.order);
      return rep;
    }
  }
  rep.detail = checked ? "held for " + std::to_string(checked) + " non-normal maximal subgroup(s)"
                       : "vacuous: all maximal subgroups normal";
  return rep;
}

/// Weakly-top groups decompose as the direct product of their (normal,
/// weakly-top) Sylow subgroups.
inline CheckReport verify_sylow_decomposition(const Group& g, const SubgroupLattice& l) {
  CheckReport rep{"sylow_decomposition"};
  detail::LatticeStats s = detail::lattice_stats(g, l);
  if (!detail::member_is_weakly_top(l, s, l.whole_index())) {
    rep.applicable = false;
    rep.detail = "group is not weakly-top";
    return rep;
  }
  std::vector<int> primes;
  {
    int n = g.order;
    for (int p = 2; p <= n; ++p)
      if (n % p == 0) {
        primes.push_back(p);
        while (n % p == 0) n /= p;
      }
  }
  std::vector<int> sylow_idx;
  for (int p : primes) {
    int part = 1, n = g.order;
    while (n % p == 0) {
      n /= p;
      part *= p;
    }
    std::vector<int> at_part;
    for (int i = 0; i < l.size(); ++i)
      if (l.at(i).order == part) at_part.push_back(i);
    if (at_part.size() != 1 || !l.is_normal_member(at_part[0])) {
      rep.passed = false;
      rep.detail = "Sylow " + std::to_string(p) + "-subgroup not unique/normal";
      return rep;
    }
    if (!detail::member_is_weakly_top(l, s, at_part[0])) {
      rep.passed = false;
      rep.detail = "Sylow " + std::to_string(p) + "-subgroup is not weakly-top";
      return rep;
    }
    sylow_idx.push_back(at_part[0]);
  }
  for (std::size_t i = 0; i < sylow_idx.size(); ++i)
    for (std::size_t j = i + 1; j < sylow_idx.size(); ++j)
      if (l.at(sylow_idx[i]).members.intersection_count(l.at(sylow_idx[j]).members) != 1) {
        rep.passed = false;
        rep.detail = "Sylow subgroups intersect nontrivially";
        return rep;
      }
  Subgroup prod = trivial_subgroup(g);
  for (int si : sylow_idx) {
    long long expect = static_cast<long long>(prod.order) * l.at(si).order;
    prod = set_product_subgroup(g, prod, l.at(si));
    if (prod.order != expect) {
      rep.passed = false;
      rep.detail = "internal product sizes do not multiply";
      return rep;
    }
  }
  if (prod.order != g.order) {
    rep.passed = false;
    rep.detail = "Sylow subgroups do not generate the group";
    return rep;
  }
  rep.detail = "decomposed over " + std::to_string(primes.size()) + " prime(s)";
  return rep;
}

/// Top groups satisfy G' ≤ Z(G) (class at most two).
inline CheckReport verify_class_at_most_two(const Group& g, const SubgroupLattice& l) {
  CheckReport rep{"class_at_most_two"};
  PropertyVerdict top = is_top(g, l);
  if (!top.value) {
    rep.detail = "vacuous: group is not top";
    return rep;
  }
  if (!derived_subgroup(g).members.subset_of(center(g).members)) {
    rep.passed = false;
    rep.detail = "derived subgroup not central in a top group";
    return rep;
  }
  rep.detail = "derived subgroup is central";
  return rep;
}

/// Top p-group with elementary abelian Z(G) and G/G' decomposes as
/// (special) × (abelian).
inline CheckReport verify_special_abelian_decomposition(const Group& g, const SubgroupLattice& l) {
  CheckReport rep{"special_abelian_decomposition"};
  PropertyVerdict top = is_top(g, l);
  bool p_group = false;
  {
    int n = g.order;
    for (int p = 2; p <= n; ++p)
      if (n % p == 0) {
        while (n % p == 0) n /= p;
        p_group = n == 1;
        break;
      }
  }
  if (!top.value || !p_group) {
    rep.applicable = false;
    rep.detail = "hypotheses not met (needs a top p-group)";
    return rep;
  }
  if (!is_elementary_abelian(g, center(g))) {
    rep.applicable = false;
    rep.detail = "center is not elementary abelian";
    return rep;
  }
  QuotientResult ab = quotient(g, derived_subgroup(g));
  if (!is_elementary_abelian(ab.group, whole_group(ab.group))) {
    rep.applicable = false;
    rep.detail = "G/G' is not elementary abelian";
    return rep;
  }
  auto decomp = special_times_abelian_decomposition(g, l);
  if (!decomp) {
    rep.passed = false;
    rep.detail = "no special-times-abelian decomposition found";
    return rep;
  }
  rep.detail = "factors of order " + std::to_string(decomp->first.order) + " and " +
               std::to_string(decomp->second.order);
  return rep;
}

/// A × B is weakly-top iff both factors are; same for top.
inline CheckReport verify_direct_product_law(const Group& a, const Group& b,
                                             const LatticeOptions& opt = {}) {
  CheckReport rep{"direct_product_law"};
  Group prod = direct_product(a, b);
  if (prod.order > opt.order_cap) throw CapExceeded("product order exceeds lattice cap");
  SubgroupLattice la = all_subgroups(a, opt), lb = all_subgroups(b, opt),
                  lp = all_subgroups(prod, opt);
  PropertyVerdict wa = is_weakly_top(a, la), wb = is_weakly_top(b, lb),
                  wp = is_weakly_top(prod, lp);
  PropertyVerdict ta = is_top(a, la), tb = is_top(b, lb), tp = is_top(prod, lp);
  if (wp.value != (wa.value && wb.value)) {
    rep.passed = false;
    rep.detail = "weakly-top law violated";
    return rep;
  }
  if (tp.value != (ta.value && tb.value)) {
    rep.passed = false;
    rep.detail = "top law violated";
    return rep;
  }
  rep.detail = "laws agree (product order " + std::to_string(prod.order) + ")";
  return rep;
}

/// The battery the `verify` command runs.
inline std::vector<CheckReport> verify_group(const Group& g, const SubgroupLattice& l) {
  return {verify_quotient_heredity(g, l), verify_section_bound(g, l),
          verify_maximal_inequality(g, l), verify_sylow_decomposition(g, l),
          verify_class_at_most_two(g, l), verify_special_abelian_decomposition(g, l)};
}

}  // namespace topgroups
