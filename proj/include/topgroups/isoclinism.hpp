#pragma once

#include <algorithm>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "topgroups/classify.hpp"
#include "topgroups/group.hpp"

namespace topgroups {

/// An isomorphism source → target as a per-element image table. The
/// groups are referenced, not owned.
struct GroupIso {
  const Group* source = nullptr;
  const Group* target = nullptr;
  std::vector<int> map;
};

inline bool is_isomorphism(const Group& a, const Group& b, const std::vector<int>& map) {
  if (a.order != b.order || static_cast<int>(map.size()) != a.order) return false;
  std::vector<char> hit(static_cast<std::size_t>(b.order), 0);
  for (int v : map) {
    if (v < 0 || v >= b.order || hit[v]) return false;
    hit[v] = 1;
  }
  if (map[0] != 0) return false;
  for (int x = 0; x < a.order; ++x)
    for (int y = 0; y < a.order; ++y)
      if (map[a.at(x, y)] != b.at(map[x], map[y])) return false;
  return true;
}

namespace detail {

/// Greedy generating sequence: repeatedly adjoin the element whose cyclic
/// extension grows the closure most (ties to the smallest index). Short
/// sequences keep the isomorphism backtracking shallow.
inline std::vector<int> generating_sequence(const Group& g) {
  std::vector<int> gens;
  Subgroup h = trivial_subgroup(g);
  while (h.order < g.order) {
    int best = -1, best_order = 0;
    for (int x = 1; x < g.order; ++x) {
      if (h.contains(x)) continue;
      Subgroup ext = extend_closure(g, h, {x});
      if (ext.order > best_order) {
        best_order = ext.order;
        best = x;
      }
    }
    gens.push_back(best);
    h = extend_closure(g, h, {best});
  }
  return gens;
}

/// Backtracking over images of a generating sequence. Candidate images are
/// filtered by element order; each placement is extended to the generated
/// subgroup by product-closure with consistency checks. The visitor
/// receives each full isomorphism; returning true stops the search.
inline bool for_each_isomorphism(const Group& a, const Group& b,
                                 const std::function<bool(const std::vector<int>&)>& visit) {
  if (a.order != b.order) return false;
  std::vector<int> ord_a(static_cast<std::size_t>(a.order)), ord_b(static_cast<std::size_t>(b.order));
  for (int x = 0; x < a.order; ++x) ord_a[x] = element_order(a, x);
  for (int x = 0; x < b.order; ++x) ord_b[x] = element_order(b, x);
  {
    std::vector<int> ha = ord_a, hb = ord_b;
    std::sort(ha.begin(), ha.end());
    std::sort(hb.begin(), hb.end());
    if (ha != hb) return false;
  }
  const std::vector<int> gens = generating_sequence(a);

  // dom lists the source elements with images, in discovery order; the
  // prefix closed at each depth is remembered for backtracking.
  std::vector<int> map(static_cast<std::size_t>(a.order), -1);
  std::vector<char> used(static_cast<std::size_t>(b.order), 0);
  std::vector<int> dom{0};
  map[0] = 0;
  used[0] = 1;

  // Extends the closed prefix of dom with gen→img; returns the number of
  // elements added (rollback count), or -1 on inconsistency.
  auto extend = [&](int gen, int img) -> int {
    const std::size_t closed = dom.size();
    int added = 0;
    auto undo = [&]() {
      for (int k = 0; k < added; ++k) {
        int x = dom.back();
        dom.pop_back();
        used[map[x]] = 0;
        map[x] = -1;
      }
    };
    auto place = [&](int x, int y) -> bool {
      if (map[x] >= 0) return map[x] == y;
      if (used[y]) return false;
      map[x] = y;
      used[y] = 1;
      dom.push_back(x);
      ++added;
      return true;
    };
    if (!place(gen, img)) return -1;
    for (std::size_t i = 0; i < dom.size(); ++i) {
      std::size_t jstart = i < closed ? closed : 0;
      for (std::size_t j = jstart; j < dom.size(); ++j) {
        int x = dom[i], y = dom[j];
        if (!place(a.at(x, y), b.at(map[x], map[y])) ||
            !place(a.at(y, x), b.at(map[y], map[x]))) {
          undo();
          return -1;
        }
      }
    }
    return added;
  };

  std::function<bool(std::size_t)> descend = [&](std::size_t depth) -> bool {
    if (depth == gens.size()) {
      if (visit(map)) return true;
      return false;
    }
    const int gen = gens[depth];
    for (int img = 0; img < b.order; ++img) {
      if (used[img] || ord_b[img] != ord_a[gen]) continue;
      int added = extend(gen, img);
      if (added < 0) continue;
      if (descend(depth + 1)) return true;
      for (int k = 0; k < added; ++k) {
        int x = dom.back();
        dom.pop_back();
        used[map[x]] = 0;
        map[x] = -1;
      }
    }
    return false;
  };
  return descend(0);
}

}  // namespace detail

/// All (or the first) isomorphisms A → B. Search is capped by group order.
inline std::vector<GroupIso> isomorphisms(const Group& a, const Group& b, bool find_all = false,
                                          int iso_cap = 256) {
  if (a.order > iso_cap || b.order > iso_cap)
    throw CapExceeded("isomorphism search capped at order " + std::to_string(iso_cap));
  std::vector<GroupIso> out;
  detail::for_each_isomorphism(a, b, [&](const std::vector<int>& map) {
    out.push_back(GroupIso{&a, &b, map});
    return !find_all;
  });
  return out;
}

/// θ on G/Z(G) × G/Z(G) with values in G'. Values are well defined on
/// cosets; this is asserted exhaustively at construction, as is the fact
/// that the values generate the derived subgroup.
struct CommutatorPairing {
  Group quotient;              // central quotient
  std::vector<int> projection; // base element → coset
  std::vector<int> coset_rep;  // coset → minimal base element
  Subgroup derived;            // derived subgroup of the base group
  std::vector<int> values;     // quotient.order² base-element entries

  int value(int u, int v) const {
    return values[static_cast<std::size_t>(u) * quotient.order + v];
  }
};

inline CommutatorPairing commutator_pairing(const Group& g) {
  CommutatorPairing cp;
  Subgroup z = center(g);
  QuotientResult q = quotient(g, z);
  cp.quotient = std::move(q.group);
  cp.projection = std::move(q.projection);
  cp.coset_rep.assign(static_cast<std::size_t>(cp.quotient.order), -1);
  for (int x = g.order - 1; x >= 0; --x) cp.coset_rep[cp.projection[x]] = x;
  cp.derived = derived_subgroup(g);

  const int qn = cp.quotient.order;
  cp.values.resize(static_cast<std::size_t>(qn) * qn);
  for (int u = 0; u < qn; ++u)
    for (int v = 0; v < qn; ++v)
      cp.values[static_cast<std::size_t>(u) * qn + v] =
          commutator(g, cp.coset_rep[u], cp.coset_rep[v]);

  // Well-definedness: commutators are constant across center cosets.
  for (int x = 0; x < g.order; ++x)
    for (int y = 0; y < g.order; ++y)
      if (commutator(g, x, y) != cp.value(cp.projection[x], cp.projection[y]))
        throw std::logic_error("commutator pairing is not well defined");
  MemberSet vals(g.order);
  for (int v : cp.values) vals.set(v);
  if (!(closure(g, vals).members == cp.derived.members))
    throw std::logic_error("pairing values do not generate the derived subgroup");
  return cp;
}

/// A self-contained isoclinism witness: ψ between the central quotients
/// and φ between the derived subgroups (as groups in their own right),
/// compatible with both commutator pairings.
struct IsoclinismWitness {
  Group quotient_a, quotient_b;
  Group derived_a, derived_b;
  std::vector<int> derived_elems_a, derived_elems_b;  // local → base element
  std::vector<int> psi;  // quotient_a → quotient_b
  std::vector<int> phi;  // derived_a → derived_b (local indices)
};

namespace detail {

/// Given ψ, the compatibility equation forces φ on every pairing value;
/// product-closure then either extends it to a full isomorphism of the
/// derived subgroups or exposes an inconsistency.
inline std::optional<std::vector<int>> forced_phi(const CommutatorPairing& pa,
                                                  const CommutatorPairing& pb,
                                                  const Group& da, const Group& db,
                                                  const std::vector<int>& local_a,
                                                  const std::vector<int>& local_b,
                                                  const std::vector<int>& psi) {
  const int n = da.order;
  std::vector<int> phi(static_cast<std::size_t>(n), -1);
  std::vector<char> used(static_cast<std::size_t>(n), 0);
  const int qn = pa.quotient.order;
  for (int u = 0; u < qn; ++u)
    for (int v = 0; v < qn; ++v) {
      int src = local_a[pa.value(u, v)];
      int dst = local_b[pb.value(psi[u], psi[v])];
      if (phi[src] < 0) {
        if (used[dst]) return std::nullopt;
        phi[src] = dst;
        used[dst] = 1;
      } else if (phi[src] != dst) {
        return std::nullopt;
      }
    }
  std::vector<int> dom;
  for (int x = 0; x < n; ++x)
    if (phi[x] >= 0) dom.push_back(x);
  auto place = [&](int p, int q) -> bool {
    if (phi[p] < 0) {
      if (used[q]) return false;
      phi[p] = q;
      used[q] = 1;
      dom.push_back(p);
      return true;
    }
    return phi[p] == q;
  };
  // both orders per pair, so the ordered pair (x,y) is propagated when the
  // outer index reaches the later of the two
  for (std::size_t i = 0; i < dom.size(); ++i)
    for (std::size_t j = 0; j < dom.size(); ++j) {
      int x = dom[i], y = dom[j];
      if (!place(da.at(x, y), db.at(phi[x], phi[y])) ||
          !place(da.at(y, x), db.at(phi[y], phi[x])))
        return std::nullopt;
    }
  if (static_cast<int>(dom.size()) != n) return std::nullopt;
  if (!is_isomorphism(da, db, phi)) return std::nullopt;
  return phi;
}

}  // namespace detail

/// Isoclinism search: enumerate ψ over central-quotient isomorphisms in
/// canonical order and accept the first one whose forced φ closes into an
/// isomorphism of the derived subgroups.
inline std::optional<IsoclinismWitness> are_isoclinic(const Group& a, const Group& b,
                                                      int iso_cap = 256) {
  CommutatorPairing pa = commutator_pairing(a);
  CommutatorPairing pb = commutator_pairing(b);
  if (pa.quotient.order != pb.quotient.order || pa.derived.order != pb.derived.order)
    return std::nullopt;
  if (pa.quotient.order > iso_cap || pa.derived.order > iso_cap)
    throw CapExceeded("isoclinism search capped at order " + std::to_string(iso_cap));

  IsoclinismWitness w;
  w.derived_a = induced_group(a, pa.derived, &w.derived_elems_a);
  w.derived_b = induced_group(b, pb.derived, &w.derived_elems_b);
  std::vector<int> local_a(static_cast<std::size_t>(a.order), -1);
  std::vector<int> local_b(static_cast<std::size_t>(b.order), -1);
  for (int i = 0; i < static_cast<int>(w.derived_elems_a.size()); ++i)
    local_a[w.derived_elems_a[i]] = i;
  for (int i = 0; i < static_cast<int>(w.derived_elems_b.size()); ++i)
    local_b[w.derived_elems_b[i]] = i;

  bool found = detail::for_each_isomorphism(
      pa.quotient, pb.quotient, [&](const std::vector<int>& psi) {
        auto phi = detail::forced_phi(pa, pb, w.derived_a, w.derived_b, local_a, local_b, psi);
        if (!phi) return false;
        w.psi = psi;
        w.phi = std::move(*phi);
        return true;
      });
  if (!found) return std::nullopt;
  w.quotient_a = std::move(pa.quotient);
  w.quotient_b = std::move(pb.quotient);
  return w;
}

/// Exhaustively re-verifies a witness against freshly computed pairings:
/// ψ and φ are isomorphisms and φ(θ_A(u,v)) = θ_B(ψu, ψv) for all pairs.
inline bool verify_isoclinism_witness(const Group& a, const Group& b,
                                      const IsoclinismWitness& w) {
  CommutatorPairing pa = commutator_pairing(a);
  CommutatorPairing pb = commutator_pairing(b);
  if (!is_isomorphism(pa.quotient, pb.quotient, w.psi)) return false;
  if (!is_isomorphism(w.derived_a, w.derived_b, w.phi)) return false;
  std::vector<int> local_a(static_cast<std::size_t>(a.order), -1);
  std::vector<int> local_b(static_cast<std::size_t>(b.order), -1);
  for (int i = 0; i < static_cast<int>(w.derived_elems_a.size()); ++i)
    local_a[w.derived_elems_a[i]] = i;
  for (int i = 0; i < static_cast<int>(w.derived_elems_b.size()); ++i)
    local_b[w.derived_elems_b[i]] = i;
  const int qn = pa.quotient.order;
  for (int u = 0; u < qn; ++u)
    for (int v = 0; v < qn; ++v) {
      int lhs = w.phi[local_a[pa.value(u, v)]];
      int rhs = local_b[pb.value(w.psi[u], w.psi[v])];
      if (lhs != rhs) return false;
    }
  return true;
}

/// Stem groups satisfy Z(G) ≤ G'.
inline bool is_stem(const Group& g) {
  return center(g).members.subset_of(derived_subgroup(g).members);
}

/// |G||G'| / |G'Z(G)| — the order of a stem group of G's isoclinism family.
inline long long hall_stem_order(const Group& g) {
  Subgroup d = derived_subgroup(g);
  Subgroup z = center(g);
  long long dz = product_order(d, z);
  long long num = static_cast<long long>(g.order) * d.order;
  if (num % dz != 0) throw std::logic_error("stem order formula not integral");
  return num / dz;
}

/// Isoclinic groups agree on weakly-top and top.
inline CheckReport verify_isoclinism_invariance(const Group& a, const Group& b,
                                                const SubgroupLattice& la,
                                                const SubgroupLattice& lb,
                                                const IsoclinismWitness& w) {
  CheckReport rep{"isoclinism_invariance"};
  if (!verify_isoclinism_witness(a, b, w)) {
    rep.passed = false;
    rep.detail = "witness failed exhaustive compatibility check";
    return rep;
  }
  PropertyVerdict wa = is_weakly_top(a, la), wb = is_weakly_top(b, lb);
  PropertyVerdict ta = is_top(a, la), tb = is_top(b, lb);
  if (wa.value != wb.value || ta.value != tb.value) {
    rep.passed = false;
    rep.detail = "verdicts differ across an isoclinic pair";
    return rep;
  }
  rep.detail = std::string("verdicts agree: weakly_top=") + (wa.value ? "true" : "false") +
               ", top=" + (ta.value ? "true" : "false");
  return rep;
}

}  // namespace topgroups
