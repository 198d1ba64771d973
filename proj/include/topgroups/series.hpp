#pragma once

#include <optional>
#include <vector>

#include "topgroups/group.hpp"

namespace topgroups {

enum class SeriesKind { lower_central, derived };

/// A descending subgroup series; terms strictly descend and stop at the
/// first stable term. indices[i] = |terms[i]| / |terms[i+1]|.
struct SeriesReport {
  SeriesKind kind;
  std::vector<Subgroup> terms;
  std::vector<long long> indices;

  const Subgroup& last() const { return terms.back(); }
  bool reaches_trivial() const { return terms.back().order == 1; }
};

namespace detail {
template <class Step>
SeriesReport descend(const Group& g, SeriesKind kind, Step step) {
  SeriesReport report;
  report.kind = kind;
  report.terms.push_back(whole_group(g));
  for (;;) {
    const Subgroup& cur = report.terms.back();
    if (cur.order == 1) break;
    Subgroup next = step(cur);
    if (next.order == cur.order) break;  // stable before reaching trivial
    report.indices.push_back(static_cast<long long>(cur.order) / next.order);
    report.terms.push_back(std::move(next));
  }
  return report;
}
}  // namespace detail

/// γ₁ = G, γ_{i+1} = [γ_i, G].
inline SeriesReport lower_central_series(const Group& g) {
  Subgroup whole = whole_group(g);
  return detail::descend(g, SeriesKind::lower_central,
                         [&](const Subgroup& cur) { return mutual_commutator(g, cur, whole); });
}

inline SeriesReport derived_series(const Group& g) {
  return detail::descend(g, SeriesKind::derived,
                         [&](const Subgroup& cur) { return derived_subgroup(g, cur); });
}

/// Length of the lower central series down to the trivial subgroup;
/// nullopt when the series stabilizes above it (G not nilpotent). The
/// trivial group has class 0, a nontrivial abelian group class 1.
inline std::optional<int> nilpotency_class(const Group& g) {
  SeriesReport s = lower_central_series(g);
  if (!s.reaches_trivial()) return std::nullopt;
  return static_cast<int>(s.terms.size()) - 1;
}

inline std::optional<int> derived_length(const Group& g) {
  SeriesReport s = derived_series(g);
  if (!s.reaches_trivial()) return std::nullopt;
  return static_cast<int>(s.terms.size()) - 1;
}

inline bool is_nilpotent(const Group& g) { return nilpotency_class(g).has_value(); }

}  // namespace topgroups
