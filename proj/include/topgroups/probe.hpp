#pragma once

#include <exception>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "topgroups/classify.hpp"
#include "topgroups/config.hpp"
#include "topgroups/constructors.hpp"
#include "topgroups/isoclinism.hpp"

namespace topgroups {

struct ProbeRow {
  GroupSpec spec;
  ClassificationRecord rec;
  bool stem = false;
  long long hall_order = 1;
  std::vector<std::string> failures;  // family identity, top bound, verifier battery
};

struct ProbeSummary {
  std::optional<double> min_delta_weakly, max_delta_weakly, min_delta_top;
  std::optional<int> max_derived_length_weakly;
};

struct ProbeReport {
  std::vector<ProbeRow> rows;
  ProbeSummary summary;

  bool all_passed() const {
    for (const ProbeRow& r : rows)
      if (!r.failures.empty()) return false;
    return true;
  }
};

struct ProbeOptions {
  RunConfig config;
  bool run_verifiers = true;
};

namespace detail {

inline ProbeRow probe_one(const GroupSpec& spec, const ProbeOptions& opt) {
  ProbeRow row;
  row.spec = spec;
  Group g = build_group(spec, opt.config.order_cap);
  SubgroupLattice l = all_subgroups(g, opt.config.lattice_options());
  row.rec = classify_group(g, l, spec.display_name());
  row.stem = is_stem(g);
  row.hall_order = hall_stem_order(g);

  const long long ab = row.rec.ab_order, order = row.rec.order;
  if (spec.kind == GroupSpec::Kind::family) {
    const long long p = spec.params.at(0);
    if (ab * ab != p * order)
      row.failures.push_back("family identity |G/G'|^2 = p|G| violated: " + std::to_string(ab) +
                             "^2 != " + std::to_string(p) + "*" + std::to_string(order));
  }
  if (row.rec.top && order > 1 && ab * ab <= order)
    row.failures.push_back("top bound |G/G'|^2 > |G| violated");
  if (opt.run_verifiers)
    for (const CheckReport& c : verify_group(g, l))
      if (c.applicable && !c.passed) row.failures.push_back(c.check + ": " + c.detail);
  return row;
}

}  // namespace detail

/// Classifies every spec, in input order, with per-row conjecture
/// assertions. Rows are computed in parallel but the report is a pure
/// function of the spec list.
inline ProbeReport probe_corpus(const std::vector<GroupSpec>& specs, const ProbeOptions& opt = {}) {
  ProbeReport report;
  report.rows.resize(specs.size());
  std::vector<std::exception_ptr> errors(specs.size());

  const int workers = std::min<int>(opt.config.effective_workers(),
                                    std::max<std::size_t>(specs.size(), 1));
  if (workers <= 1) {
    for (std::size_t i = 0; i < specs.size(); ++i) report.rows[i] = detail::probe_one(specs[i], opt);
  } else {
    std::vector<std::thread> pool;
    std::atomic<std::size_t> next{0};
    for (int w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (;;) {
          std::size_t i = next.fetch_add(1);
          if (i >= specs.size()) return;
          try {
            report.rows[i] = detail::probe_one(specs[i], opt);
          } catch (...) {
            errors[i] = std::current_exception();
          }
        }
      });
    for (auto& t : pool) t.join();
    for (std::size_t i = 0; i < specs.size(); ++i)
      if (errors[i]) std::rethrow_exception(errors[i]);
  }

  for (const ProbeRow& r : report.rows) {
    if (!r.rec.weakly_top || r.rec.order <= 1) continue;
    double d = r.rec.delta();
    if (!report.summary.min_delta_weakly || d < *report.summary.min_delta_weakly)
      report.summary.min_delta_weakly = d;
    if (!report.summary.max_delta_weakly || d > *report.summary.max_delta_weakly)
      report.summary.max_delta_weakly = d;
    if (r.rec.top && (!report.summary.min_delta_top || d < *report.summary.min_delta_top))
      report.summary.min_delta_top = d;
    if (r.rec.derived_len &&
        (!report.summary.max_derived_length_weakly ||
         *r.rec.derived_len > *report.summary.max_derived_length_weakly))
      report.summary.max_derived_length_weakly = r.rec.derived_len;
  }
  return report;
}

/// Derived-length histogram over the weakly-top rows.
inline std::map<int, long long> derived_length_census(const ProbeReport& report) {
  std::map<int, long long> census;
  for (const ProbeRow& r : report.rows)
    if (r.rec.weakly_top && r.rec.derived_len) ++census[*r.rec.derived_len];
  return census;
}

inline void emit_csv(const ProbeReport& report, std::ostream& out) {
  out << "name,order,ab_order,max_ab_section,weakly_top,top,nilpotent,class,derived_length,"
         "is_stem,hall_stem_order,delta_num,delta_den\n";
  auto opt_int = [](const std::optional<int>& v) {
    return v ? std::to_string(*v) : std::string("none");
  };
  for (const ProbeRow& r : report.rows) {
    const ClassificationRecord& c = r.rec;
    out << c.group_name << ',' << c.order << ',' << c.ab_order << ',' << c.max_ab_section << ','
        << (c.weakly_top ? "true" : "false") << ',' << (c.top ? "true" : "false") << ','
        << (c.nilpotent ? "true" : "false") << ',' << opt_int(c.nil_class) << ','
        << opt_int(c.derived_len) << ',' << (r.stem ? "true" : "false") << ',' << r.hall_order
        << ',' << c.ab_order << ',' << c.order << '\n';
  }
}

inline void emit_csv(const ProbeReport& report, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  emit_csv(report, out);
}

inline std::string csv_string(const ProbeReport& report) {
  std::ostringstream ss;
  emit_csv(report, ss);
  return ss.str();
}

/// The built-in corpus: the abelian catalog, the small dihedral/dicyclic
/// groups, every non-abelian order-16 construction the toolkit can name,
/// the order-32 extraspecial pair, the semidirect family at small
/// parameters, and a handful of mixed direct products.
inline std::vector<GroupSpec> default_corpus() {
  std::vector<std::string> lines;
  for (int n = 1; n <= 32; ++n) lines.push_back("cyclic " + std::to_string(n));
  for (const char* s : {"abelian 16", "abelian 8 2", "abelian 4 4", "abelian 4 2 2",
                        "abelian 2 2 2 2", "abelian 24", "abelian 12 2", "abelian 6 2 2"})
    lines.push_back(s);
  for (const char* s : {"dihedral 6", "dihedral 8", "dihedral 10", "dihedral 12", "dihedral 16"})
    lines.push_back(s);
  for (const char* s : {"dicyclic 8", "dicyclic 12", "dicyclic 16"}) lines.push_back(s);
  // non-abelian order 16: modular and semidihedral via unit actions, plus
  // the product forms
  for (const char* s : {"unit_semidirect 8 5", "unit_semidirect 8 3",
                        "direct dihedral 8 ; cyclic 2", "direct dicyclic 8 ; cyclic 2"})
    lines.push_back(s);
  for (const char* s : {"extraspecial 2 1 +", "extraspecial 2 1 -", "extraspecial 2 2 +",
                        "extraspecial 2 2 -", "extraspecial 3 1 +", "extraspecial 3 1 -"})
    lines.push_back(s);
  for (const char* s : {"family 2 2", "family 2 3", "family 2 4", "family 3 2", "family 3 3",
                        "family 5 2"})
    lines.push_back(s);
  for (const char* s : {"direct dihedral 8 ; cyclic 3", "direct dihedral 6 ; cyclic 2",
                        "direct family 3 2 ; cyclic 4", "direct extraspecial 2 1 - ; cyclic 3",
                        "direct dihedral 6 ; dihedral 6"})
    lines.push_back(s);
  std::vector<GroupSpec> specs;
  for (const std::string& s : lines) specs.push_back(parse_spec(s));
  return specs;
}

/// One spec per line; `#` comments and blank lines allowed.
inline std::vector<GroupSpec> load_corpus_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open corpus file " + path);
  std::vector<GroupSpec> specs;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::size_t pos = line.find_first_not_of(" \t\r");
    if (pos == std::string::npos || line[pos] == '#') continue;
    specs.push_back(parse_spec(line, line_no));
  }
  return specs;
}

}  // namespace topgroups
