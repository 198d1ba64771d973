#pragma once

#include <cctype>
#include <fstream>
#include <numeric>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "topgroups/group.hpp"
#include "topgroups/series.hpp"

namespace topgroups {

namespace detail {

inline bool is_prime(long long p) {
  if (p < 2) return false;
  for (long long d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

/// p^e, throwing once the value passes `cap` (keeps the arithmetic safe).
inline long long checked_pow(long long p, long long e, long long cap) {
  long long v = 1;
  for (long long i = 0; i < e; ++i) {
    v *= p;
    if (v > cap) throw CapExceeded("order " + std::to_string(p) + "^" + std::to_string(e) +
                                   " exceeds cap " + std::to_string(cap));
  }
  return v;
}

inline long long mod_pow(long long base, long long exp, long long mod) {
  long long r = 1 % mod;
  base %= mod;
  while (exp > 0) {
    if (exp & 1) r = r * base % mod;
    base = base * base % mod;
    exp >>= 1;
  }
  return r;
}

}  // namespace detail

inline Group cyclic(int m, int order_cap = Group::kHardOrderCap) {
  if (m < 1) throw std::invalid_argument("cyclic order must be >= 1");
  if (m > order_cap) throw CapExceeded("cyclic order exceeds cap");
  std::vector<int> table(static_cast<std::size_t>(m) * m);
  std::vector<std::string> labels;
  for (int a = 0; a < m; ++a) {
    labels.push_back(std::to_string(a));
    for (int b = 0; b < m; ++b) table[static_cast<std::size_t>(a) * m + b] = (a + b) % m;
  }
  return make_group(std::move(table), std::move(labels), order_cap);
}

/// Direct product of cyclic groups with the given orders.
inline Group abelian(const std::vector<int>& invariants, int order_cap = Group::kHardOrderCap) {
  long long n = 1;
  for (int d : invariants) {
    if (d < 1) throw std::invalid_argument("abelian invariants must be >= 1");
    n *= d;
    if (n > order_cap) throw CapExceeded("abelian order exceeds cap");
  }
  Group g = cyclic(1, order_cap);
  for (int d : invariants) g = direct_product(g, cyclic(d, order_cap));
  return g;
}

/// Dihedral group of order n (n even): rotations r^i at 0..m-1,
/// reflections r^i s at m..n-1, with s r s = r⁻¹.
inline Group dihedral(int n, int order_cap = Group::kHardOrderCap) {
  if (n < 2 || n % 2 != 0) throw std::invalid_argument("dihedral order must be even and >= 2");
  if (n > order_cap) throw CapExceeded("dihedral order exceeds cap");
  const int m = n / 2;
  auto idx = [&](int rot, int ref) { return (ref ? m : 0) + ((rot % m) + m) % m; };
  std::vector<int> table(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    const int ri = i % m, fi = i / m;
    for (int j = 0; j < n; ++j) {
      const int rj = j % m, fj = j / m;
      // (r^a s^e)(r^b s^f) = r^{a + b·(-1)^e} s^{e+f}
      const int rot = fi ? ri - rj : ri + rj;
      table[static_cast<std::size_t>(i) * n + j] = idx(rot, fi ^ fj);
    }
  }
  std::vector<std::string> labels;
  for (int f = 0; f < 2; ++f)
    for (int r = 0; r < m; ++r) {
      std::string l = r == 0 ? "" : (r == 1 ? "r" : "r" + std::to_string(r));
      if (f) l += "s";
      labels.push_back(l.empty() ? "1" : l);
    }
  return make_group(std::move(table), std::move(labels), order_cap);
}

/// Dicyclic group of order n = 4m: ⟨a,b | a^{2m}=1, b²=a^m, a^b=a⁻¹⟩.
/// dicyclic(8) is the quaternion group.
inline Group dicyclic(int n, int order_cap = Group::kHardOrderCap) {
  if (n < 4 || n % 4 != 0) throw std::invalid_argument("dicyclic order must be divisible by 4");
  if (n > order_cap) throw CapExceeded("dicyclic order exceeds cap");
  const int m2 = n / 2;  // order of ⟨a⟩
  auto idx = [&](int pow, int hasb) { return (hasb ? m2 : 0) + ((pow % m2) + m2) % m2; };
  std::vector<int> table(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    const int ai = i % m2, bi = i / m2;
    for (int j = 0; j < n; ++j) {
      const int aj = j % m2, bj = j / m2;
      int pow, hasb;
      if (!bi && !bj) { pow = ai + aj; hasb = 0; }
      else if (!bi && bj) { pow = ai + aj; hasb = 1; }            // a^i · a^j b
      else if (bi && !bj) { pow = ai - aj; hasb = 1; }            // a^i b · a^j = a^{i-j} b
      else { pow = ai - aj + n / 4; hasb = 0; }  // b² = a^{n/4}
      table[static_cast<std::size_t>(i) * n + j] = idx(pow, hasb);
    }
  }
  std::vector<std::string> labels;
  for (int f = 0; f < 2; ++f)
    for (int a = 0; a < m2; ++a) {
      std::string l = a == 0 ? "" : (a == 1 ? "a" : "a" + std::to_string(a));
      if (f) l += "b";
      labels.push_back(l.empty() ? "1" : l);
    }
  return make_group(std::move(table), std::move(labels), order_cap);
}

/// Upper unitriangular 3×3 matrices over F_p; the exponent-p extraspecial
/// group of order p³ for odd p.
inline Group heisenberg(int p, int order_cap = Group::kHardOrderCap) {
  const int n = p * p * p;
  if (n > order_cap) throw CapExceeded("heisenberg order exceeds cap");
  auto idx = [&](int a, int b, int c) { return (a * p + b) * p + c; };
  std::vector<int> table(static_cast<std::size_t>(n) * n);
  for (int a = 0; a < p; ++a)
    for (int b = 0; b < p; ++b)
      for (int c = 0; c < p; ++c)
        for (int a2 = 0; a2 < p; ++a2)
          for (int b2 = 0; b2 < p; ++b2)
            for (int c2 = 0; c2 < p; ++c2)
              table[static_cast<std::size_t>(idx(a, b, c)) * n + idx(a2, b2, c2)] =
                  idx((a + a2) % p, (b + b2) % p, (c + c2 + a * b2) % p);
  return make_group(std::move(table), {}, order_cap);
}

/// Z_m ⋊ ⟨units⟩ with the action x^σ = x^u for the automorphism labeled by
/// the unit u: pairs (a,e), product (a,e)·(b,f) = (a·f + b, e·f).
inline Group unit_semidirect(int modulus, const std::vector<int>& units,
                             int order_cap = Group::kHardOrderCap) {
  if (modulus < 1) throw std::invalid_argument("modulus must be >= 1");
  for (int u : units) {
    int v = ((u % modulus) + modulus) % modulus;
    if (std::gcd(v, modulus) != 1)
      throw std::invalid_argument("unit " + std::to_string(u) + " is not coprime to modulus " +
                                  std::to_string(modulus));
  }
  // Close the units multiplicatively mod m; sorted ascending puts 1 first.
  std::vector<int> unit_group{1 % modulus};
  {
    std::vector<char> seen(static_cast<std::size_t>(modulus), 0);
    seen[1 % modulus] = 1;
    for (std::size_t i = 0; i < unit_group.size(); ++i)
      for (int u : units) {
        int v = static_cast<int>(static_cast<long long>(unit_group[i]) *
                                 (((u % modulus) + modulus) % modulus) % modulus);
        if (!seen[v]) {
          seen[v] = 1;
          unit_group.push_back(v);
        }
      }
    std::sort(unit_group.begin(), unit_group.end());
  }
  const int k = static_cast<int>(unit_group.size());
  const long long n = static_cast<long long>(modulus) * k;
  if (n > order_cap) throw CapExceeded("semidirect order " + std::to_string(n) + " exceeds cap");
  std::vector<int> eidx(static_cast<std::size_t>(modulus), -1);
  for (int i = 0; i < k; ++i) eidx[unit_group[i]] = i;

  const int order = static_cast<int>(n);
  std::vector<int> table(static_cast<std::size_t>(order) * order);
  for (int a = 0; a < modulus; ++a)
    for (int e = 0; e < k; ++e)
      for (int b = 0; b < modulus; ++b)
        for (int f = 0; f < k; ++f) {
          const int av = static_cast<int>((static_cast<long long>(a) * unit_group[f] + b) % modulus);
          const int ev = static_cast<int>(static_cast<long long>(unit_group[e]) * unit_group[f] % modulus);
          table[static_cast<std::size_t>(a * k + e) * order + (b * k + f)] = av * k + eidx[ev];
        }
  Group g = make_group(std::move(table), {}, order_cap);
  // Pin the action convention: conjugating the generator x = (1,1) by
  // σ = (0,u) must give x^u.
  if (modulus > 1)
    for (int u : units) {
      const int uv = ((u % modulus) + modulus) % modulus;
      const int x = 1 * k + 0, sigma = 0 * k + eidx[uv];
      if (conjugate(g, x, sigma) != uv * k + 0)
        throw InvalidTable("semidirect action convention violated");
    }
  return g;
}

/// C_{p^n} ⋊ K where K is the Sylow p-subgroup of Aut(C_{p^n});
/// order p^{2n-1}. For odd p, K = ⟨x ↦ x^{p+1}⟩; for p = 2 and n ≥ 3,
/// K = ⟨x ↦ x⁵, x ↦ x⁻¹⟩; for p = n = 2, K is all of Aut(C₄).
inline Group family(int p, int n, int order_cap = Group::kHardOrderCap) {
  if (!detail::is_prime(p)) throw std::invalid_argument("family requires a prime p");
  if (n < 2) throw std::invalid_argument("family requires n >= 2");
  const long long order = detail::checked_pow(p, 2 * n - 1, order_cap);
  const int pn = static_cast<int>(detail::checked_pow(p, n, order_cap));
  Group g = (p == 2 && n >= 3) ? unit_semidirect(pn, {5, pn - 1}, order_cap)
                               : unit_semidirect(pn, {p + 1}, order_cap);
  if (g.order != order) throw InvalidTable("family construction produced wrong order");
  return g;
}

namespace detail {

/// Central product amalgamating ⟨z_a⟩ with ⟨z_b⟩: (A × B) / ⟨(z_a, z_b⁻¹)⟩.
/// Returns the quotient plus the image of z_a, which stays central of the
/// same order and seeds the next amalgamation.
inline std::pair<Group, int> central_product(const Group& a, int za, const Group& b, int zb,
                                             int order_cap) {
  Group prod = direct_product(a, b);
  Subgroup anti = closure(prod, std::vector<int>{za * b.order + b.inv(zb)});
  QuotientResult q = quotient(prod, anti);
  if (q.group.order > order_cap) throw CapExceeded("central product exceeds cap");
  int z_image = q.projection[static_cast<std::size_t>(za) * b.order];
  return {std::move(q.group), z_image};
}

/// Smallest non-identity central element; the canonical amalgamation point
/// for the extraspecial base groups (their centers have prime order).
inline int central_generator(const Group& g) {
  Subgroup z = center(g);
  for (int x : z.elements())
    if (x != 0) return x;
  throw InvalidTable("group has trivial center");
}

}  // namespace detail

/// Extraspecial group of order p^{1+2m}. For p = 2 the plus type is the
/// central product of m dihedral(8) factors and the minus type swaps one
/// factor for the quaternion group; for odd p the plus type has exponent p
/// (Heisenberg factors) and the minus type exponent p².
inline Group extraspecial(int p, int m, char sign, int order_cap = Group::kHardOrderCap) {
  if (!detail::is_prime(p)) throw std::invalid_argument("extraspecial requires a prime p");
  if (m < 1) throw std::invalid_argument("extraspecial requires m >= 1");
  if (sign != '+' && sign != '-') throw std::invalid_argument("extraspecial sign must be + or -");
  detail::checked_pow(p, 1 + 2 * m, order_cap);

  auto base_plus = [&] { return p == 2 ? dihedral(8, order_cap) : heisenberg(p, order_cap); };
  Group g = sign == '-'
                ? (p == 2 ? dicyclic(8, order_cap) : unit_semidirect(p * p, {p + 1}, order_cap))
                : base_plus();
  int z = detail::central_generator(g);
  for (int i = 1; i < m; ++i) {
    Group factor = base_plus();
    auto [next, z_next] = detail::central_product(g, z, factor, detail::central_generator(factor),
                                                  order_cap);
    g = std::move(next);
    z = z_next;
  }
  return g;
}

// --- file ingestion ---------------------------------------------------

/// Cayley file: line 1 `cayley <n>`, then n rows of n 0-based indices.
/// The identity need not be at index 0 in the file; it is renumbered.
inline Group from_cayley_file(const std::string& path, int order_cap = Group::kHardOrderCap) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  std::string line;
  int line_no = 0;
  auto next_line = [&]() -> bool {
    while (std::getline(in, line)) {
      ++line_no;
      if (line.find_first_not_of(" \t\r") != std::string::npos) return true;
    }
    return false;
  };
  if (!next_line()) throw ParseError("empty file", 1);
  std::istringstream head(line);
  std::string tag;
  long long n = 0;
  if (!(head >> tag >> n) || tag != "cayley" || n < 1)
    throw ParseError("expected header `cayley <n>`", line_no);
  if (n > order_cap) throw CapExceeded("cayley table order exceeds cap");
  std::vector<int> table;
  table.reserve(static_cast<std::size_t>(n * n));
  for (long long r = 0; r < n; ++r) {
    if (!next_line()) throw ParseError("expected " + std::to_string(n) + " table rows", line_no);
    std::istringstream row(line);
    long long v;
    for (long long c = 0; c < n; ++c) {
      if (!(row >> v)) throw ParseError("row has fewer than " + std::to_string(n) + " entries", line_no);
      if (v < 0 || v >= n) throw ParseError("entry " + std::to_string(v) + " out of range", line_no);
      table.push_back(static_cast<int>(v));
    }
    long long extra;
    if (row >> extra) throw ParseError("row has more than " + std::to_string(n) + " entries", line_no);
  }
  // Locate the identity and renumber it to 0 by swapping labels.
  const int order = static_cast<int>(n);
  int e = -1;
  for (int cand = 0; cand < order; ++cand) {
    bool ok = true;
    for (int b = 0; b < order && ok; ++b)
      ok = table[static_cast<std::size_t>(cand) * order + b] == b &&
           table[static_cast<std::size_t>(b) * order + cand] == b;
    if (ok) {
      e = cand;
      break;
    }
  }
  if (e < 0) throw InvalidTable("table has no identity element");
  if (e != 0) {
    auto swp = [&](int x) { return x == 0 ? e : (x == e ? 0 : x); };
    std::vector<int> renum(static_cast<std::size_t>(order) * order);
    for (int a = 0; a < order; ++a)
      for (int b = 0; b < order; ++b)
        renum[static_cast<std::size_t>(swp(a)) * order + swp(b)] =
            swp(table[static_cast<std::size_t>(a) * order + b]);
    table = std::move(renum);
  }
  return make_group(std::move(table), {}, order_cap);
}

namespace detail {

/// One generator per line in disjoint-cycle notation, e.g. `(1 2 3)(4 5)`,
/// points 1-based.
inline std::vector<int> parse_cycles(const std::string& text, int degree, int line_no) {
  std::vector<int> perm(static_cast<std::size_t>(degree));
  std::iota(perm.begin(), perm.end(), 0);
  std::size_t i = 0;
  auto skip_ws = [&] { while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i; };
  skip_ws();
  bool any = false;
  while (i < text.size()) {
    if (text[i] != '(') throw ParseError("expected '(' in cycle notation", line_no);
    ++i;
    std::vector<int> cycle;
    for (;;) {
      skip_ws();
      if (i < text.size() && text[i] == ')') {
        ++i;
        break;
      }
      int v = 0;
      bool digits = false;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
        v = v * 10 + (text[i] - '0');
        ++i;
        digits = true;
      }
      if (!digits) throw ParseError("expected point number in cycle", line_no);
      if (v < 1 || v > degree) throw ParseError("point " + std::to_string(v) + " outside degree", line_no);
      cycle.push_back(v - 1);
      skip_ws();
      if (i < text.size() && text[i] == ',') ++i;
    }
    for (std::size_t k = 0; k < cycle.size(); ++k) {
      int from = cycle[k], to = cycle[(k + 1) % cycle.size()];
      if (perm[from] != from && perm[from] != to)
        throw ParseError("point repeated across cycles", line_no);
      perm[from] = to;
    }
    any = true;
    skip_ws();
  }
  if (!any) throw ParseError("empty generator line", line_no);
  std::vector<char> hit(static_cast<std::size_t>(degree), 0);
  for (int v : perm) {
    if (hit[v]) throw ParseError("not a permutation", line_no);
    hit[v] = 1;
  }
  return perm;
}

}  // namespace detail

/// Perm file: line 1 `perm <degree>`, then one generator per line in cycle
/// notation. The generated permutation group becomes a table group; BFS
/// over generator products fixes the numbering, identity first.
inline Group from_perm_file(const std::string& path, int order_cap = Group::kHardOrderCap) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  std::string line;
  int line_no = 0;
  int degree = 0;
  std::vector<std::vector<int>> gens;
  while (std::getline(in, line)) {
    ++line_no;
    std::size_t pos = line.find_first_not_of(" \t\r");
    if (pos == std::string::npos) continue;
    if (line[pos] == '#') continue;
    if (degree == 0) {
      std::istringstream head(line);
      std::string tag;
      if (!(head >> tag >> degree) || tag != "perm" || degree < 1)
        throw ParseError("expected header `perm <degree>`", line_no);
      continue;
    }
    gens.push_back(detail::parse_cycles(line, degree, line_no));
  }
  if (degree == 0) throw ParseError("missing `perm <degree>` header", line_no ? line_no : 1);

  std::vector<std::vector<int>> elems;
  std::unordered_map<std::string, int> index;
  auto key = [](const std::vector<int>& p) {
    std::string s;
    s.reserve(p.size() * 2);
    for (int v : p) {
      s.push_back(static_cast<char>(v & 0xff));
      s.push_back(static_cast<char>((v >> 8) & 0xff));
    }
    return s;
  };
  std::vector<int> ident(static_cast<std::size_t>(degree));
  std::iota(ident.begin(), ident.end(), 0);
  elems.push_back(ident);
  index.emplace(key(ident), 0);
  auto compose = [&](const std::vector<int>& x, const std::vector<int>& y) {
    std::vector<int> r(static_cast<std::size_t>(degree));
    for (int i = 0; i < degree; ++i) r[i] = y[x[i]];  // apply x, then y
    return r;
  };
  for (std::size_t i = 0; i < elems.size(); ++i)
    for (const auto& gen : gens) {
      std::vector<int> nxt = compose(elems[i], gen);
      std::string k = key(nxt);
      if (!index.count(k)) {
        if (static_cast<int>(elems.size()) >= order_cap)
          throw CapExceeded("permutation closure exceeds cap " + std::to_string(order_cap));
        index.emplace(std::move(k), static_cast<int>(elems.size()));
        elems.push_back(std::move(nxt));
      }
    }
  const int order = static_cast<int>(elems.size());
  std::vector<int> table(static_cast<std::size_t>(order) * order);
  for (int a = 0; a < order; ++a)
    for (int b = 0; b < order; ++b)
      table[static_cast<std::size_t>(a) * order + b] = index.at(key(compose(elems[a], elems[b])));
  return make_group(std::move(table), {}, order_cap);
}

// --- spec strings -------------------------------------------------------

/// A buildable group description; mirrors the CLI grammar one line per
/// group: `cyclic 6`, `abelian 4 2`, `dihedral 8`, `dicyclic 8`,
/// `extraspecial 2 2 -`, `unit_semidirect 8 5 7`, `family 3 3`,
/// `direct <spec> ; <spec>`, `cayley <path>`, `perm <path>`.
struct GroupSpec {
  enum class Kind {
    cyclic,
    abelian,
    dihedral,
    dicyclic,
    extraspecial,
    unit_semidirect,
    family,
    direct,
    cayley_file,
    perm_file
  };

  Kind kind = Kind::cyclic;
  std::vector<int> params;
  char sign = '+';
  std::string source_path;
  std::vector<GroupSpec> factors;  // exactly two for Kind::direct

  std::string display_name() const;
};

namespace detail {
inline std::string sanitize_name(const std::string& s) {
  // Keep the CSV-safe charset; anything else becomes '_'.
  std::string out;
  for (char c : s)
    out.push_back((std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '(' ||
                   c == ')' || c == '+' || c == ',' || c == '-')
                      ? c
                      : '_');
  return out;
}

inline std::string path_stem(const std::string& path) {
  std::size_t slash = path.find_last_of("/\\");
  std::string base = slash == std::string::npos ? path : path.substr(slash + 1);
  std::size_t dot = base.find_last_of('.');
  return dot == std::string::npos ? base : base.substr(0, dot);
}
}  // namespace detail

inline std::string GroupSpec::display_name() const {
  auto join = [](const std::vector<int>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(v[i]);
    }
    return s;
  };
  switch (kind) {
    case Kind::cyclic: return "cyclic(" + join(params) + ")";
    case Kind::abelian: return "abelian(" + join(params) + ")";
    case Kind::dihedral: return "dihedral(" + join(params) + ")";
    case Kind::dicyclic: return "dicyclic(" + join(params) + ")";
    case Kind::extraspecial:
      return "extraspecial(" + join(params) + "," + std::string(1, sign) + ")";
    case Kind::unit_semidirect: return "unit_semidirect(" + join(params) + ")";
    case Kind::family: return "family(" + join(params) + ")";
    case Kind::direct:
      return "direct(" + factors[0].display_name() + "," + factors[1].display_name() + ")";
    case Kind::cayley_file: return detail::sanitize_name("cayley(" + detail::path_stem(source_path) + ")");
    case Kind::perm_file: return detail::sanitize_name("perm(" + detail::path_stem(source_path) + ")");
  }
  return "?";
}

namespace detail {

inline std::vector<std::string> tokenize(const std::string& text) {
  std::istringstream in(text);
  std::vector<std::string> toks;
  std::string t;
  while (in >> t) toks.push_back(t);
  return toks;
}

inline int parse_int_token(const std::string& tok, int line_no) {
  std::size_t used = 0;
  int v;
  try {
    v = std::stoi(tok, &used);
  } catch (const std::exception&) {
    throw ParseError("expected integer, got `" + tok + "`", line_no);
  }
  if (used != tok.size()) throw ParseError("expected integer, got `" + tok + "`", line_no);
  return v;
}

inline GroupSpec parse_spec_tokens(const std::vector<std::string>& toks, std::size_t begin,
                                   std::size_t end, int line_no) {
  if (begin >= end) throw ParseError("empty group spec", line_no);
  const std::string& kind = toks[begin];
  GroupSpec spec;
  auto ints = [&](std::size_t lo, std::size_t hi) {
    std::vector<int> v;
    for (std::size_t i = lo; i < hi; ++i) v.push_back(parse_int_token(toks[i], line_no));
    return v;
  };
  auto expect_count = [&](std::size_t want) {
    if (end - begin - 1 != want)
      throw ParseError("`" + kind + "` expects " + std::to_string(want) + " argument(s)", line_no);
  };
  if (kind == "cyclic") {
    expect_count(1);
    spec.kind = GroupSpec::Kind::cyclic;
    spec.params = ints(begin + 1, end);
  } else if (kind == "abelian") {
    if (end - begin - 1 < 1) throw ParseError("`abelian` expects at least one invariant", line_no);
    spec.kind = GroupSpec::Kind::abelian;
    spec.params = ints(begin + 1, end);
  } else if (kind == "dihedral") {
    expect_count(1);
    spec.kind = GroupSpec::Kind::dihedral;
    spec.params = ints(begin + 1, end);
  } else if (kind == "dicyclic") {
    expect_count(1);
    spec.kind = GroupSpec::Kind::dicyclic;
    spec.params = ints(begin + 1, end);
  } else if (kind == "extraspecial") {
    expect_count(3);
    spec.kind = GroupSpec::Kind::extraspecial;
    spec.params = ints(begin + 1, begin + 3);
    const std::string& s = toks[begin + 3];
    if (s != "+" && s != "-") throw ParseError("extraspecial sign must be + or -, got `" + s + "`", line_no);
    spec.sign = s[0];
  } else if (kind == "unit_semidirect") {
    if (end - begin - 1 < 2)
      throw ParseError("`unit_semidirect` expects a modulus and at least one unit", line_no);
    spec.kind = GroupSpec::Kind::unit_semidirect;
    spec.params = ints(begin + 1, end);
  } else if (kind == "family") {
    expect_count(2);
    spec.kind = GroupSpec::Kind::family;
    spec.params = ints(begin + 1, end);
  } else if (kind == "direct") {
    // `direct <specA> ; <specB>`; the split is the first ';', so chained
    // products nest to the right.
    std::size_t sep = begin + 1;
    while (sep < end && toks[sep] != ";") ++sep;
    if (sep >= end) throw ParseError("`direct` expects `;` between factors", line_no);
    spec.kind = GroupSpec::Kind::direct;
    spec.factors.push_back(parse_spec_tokens(toks, begin + 1, sep, line_no));
    spec.factors.push_back(parse_spec_tokens(toks, sep + 1, end, line_no));
  } else if (kind == "cayley" || kind == "perm") {
    expect_count(1);
    spec.kind = kind == "cayley" ? GroupSpec::Kind::cayley_file : GroupSpec::Kind::perm_file;
    spec.source_path = toks[begin + 1];
  } else {
    throw ParseError("unknown group kind `" + kind + "`", line_no);
  }
  return spec;
}

}  // namespace detail

inline GroupSpec parse_spec(const std::string& text, int line_no = 0) {
  std::vector<std::string> toks = detail::tokenize(text);
  return detail::parse_spec_tokens(toks, 0, toks.size(), line_no);
}

inline Group build_group(const GroupSpec& spec, int order_cap = Group::kHardOrderCap) {
  using Kind = GroupSpec::Kind;
  switch (spec.kind) {
    case Kind::cyclic: return cyclic(spec.params.at(0), order_cap);
    case Kind::abelian: return abelian(spec.params, order_cap);
    case Kind::dihedral: return dihedral(spec.params.at(0), order_cap);
    case Kind::dicyclic: return dicyclic(spec.params.at(0), order_cap);
    case Kind::extraspecial:
      return extraspecial(spec.params.at(0), spec.params.at(1), spec.sign, order_cap);
    case Kind::unit_semidirect: {
      std::vector<int> units(spec.params.begin() + 1, spec.params.end());
      return unit_semidirect(spec.params.at(0), units, order_cap);
    }
    case Kind::family: return family(spec.params.at(0), spec.params.at(1), order_cap);
    case Kind::direct: {
      Group a = build_group(spec.factors.at(0), order_cap);
      Group b = build_group(spec.factors.at(1), order_cap);
      if (static_cast<long long>(a.order) * b.order > order_cap)
        throw CapExceeded("direct product order exceeds cap");
      return direct_product(a, b);
    }
    case Kind::cayley_file: return from_cayley_file(spec.source_path, order_cap);
    case Kind::perm_file: return from_perm_file(spec.source_path, order_cap);
  }
  throw std::logic_error("unreachable group kind");
}

}  // namespace topgroups
