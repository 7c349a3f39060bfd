#pragma once

// Symbolic Fourier-Motzkin elimination over rate systems whose constants are
// mutual-information atoms. Exact rational arithmetic; atoms are opaque
// symbols apart from two sound transformations:
//   - the chain-rule merge I(A;B|C) + I(D;B|A,C) = I(A,D;B|C), applied during
//     canonicalization (always valid);
//   - directed group rewrites I(A;B|C) -> I(G;B) justified by declared
//     zero atoms (conditional-independence facts), applied by simplify().

#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "macregions/prob.hpp"

namespace macregions {
namespace fme {

struct Rat {
  long long n = 0, d = 1;

  Rat() = default;
  Rat(long long num) : n(num), d(1) {}
  Rat(long long num, long long den) : n(num), d(den) { normalize(); }

  void normalize() {
    if (d == 0) throw validation_error("Rat: zero denominator");
    if (d < 0) {
      n = -n;
      d = -d;
    }
    long long g = std::gcd(n < 0 ? -n : n, d);
    if (g > 1) {
      n /= g;
      d /= g;
    }
  }
  bool is_zero() const { return n == 0; }
  bool positive() const { return n > 0; }
  bool negative() const { return n < 0; }

  friend Rat operator+(Rat a, Rat b) { return Rat(a.n * b.d + b.n * a.d, a.d * b.d); }
  friend Rat operator-(Rat a, Rat b) { return Rat(a.n * b.d - b.n * a.d, a.d * b.d); }
  friend Rat operator*(Rat a, Rat b) { return Rat(a.n * b.n, a.d * b.d); }
  friend Rat operator/(Rat a, Rat b) { return Rat(a.n * b.d, a.d * b.n); }
  Rat operator-() const { return Rat(-n, d); }
  friend bool operator==(Rat a, Rat b) { return a.n == b.n && a.d == b.d; }
  friend bool operator<(Rat a, Rat b) { return a.n * b.d < b.n * a.d; }
  friend bool operator<=(Rat a, Rat b) { return a.n * b.d <= b.n * a.d; }

  double to_double() const { return static_cast<double>(n) / static_cast<double>(d); }
  std::string str() const {
    return d == 1 ? std::to_string(n) : std::to_string(n) + "/" + std::to_string(d);
  }
};

using Group = std::vector<std::string>;  // kept sorted

inline Group sorted(Group g) {
  std::sort(g.begin(), g.end());
  return g;
}

inline std::string join(const Group& g) {
  std::string s;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (i) s += ",";
    s += g[i];
  }
  return s;
}

inline Group group_union(const Group& a, const Group& b) {
  Group out = a;
  out.insert(out.end(), b.begin(), b.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

inline bool group_subset(const Group& a, const Group& b) {  // a subseteq b
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

inline bool group_disjoint(const Group& a, const Group& b) {
  for (const auto& x : a)
    if (std::binary_search(b.begin(), b.end(), x)) return false;
  return true;
}

inline Group group_minus(const Group& a, const Group& b) {
  Group out;
  for (const auto& x : a)
    if (!std::binary_search(b.begin(), b.end(), x)) out.push_back(x);
  return out;
}

// A conditional mutual-information quantity I(first;second|cond).
// Equality is symmetric in first<->second; rendering orients the groups by
// the system's declared random-variable order (earliest variable first).
struct Atom {
  Group first, second, cond;
  bool declared_nonnegative = true;

  Atom() = default;
  Atom(Group f, Group s, Group c = {})
      : first(sorted(std::move(f))), second(sorted(std::move(s))), cond(sorted(std::move(c))) {
    if (first.empty() || second.empty()) throw validation_error("Atom: empty group");
    if (!group_disjoint(first, second) || !group_disjoint(first, cond) || !group_disjoint(second, cond))
      throw validation_error("Atom: groups must be disjoint");
  }

  std::string key() const {
    std::string a = join(first), b = join(second);
    if (b < a) std::swap(a, b);
    return a + ";" + b + "|" + join(cond);
  }
  friend bool operator==(const Atom& a, const Atom& b) { return a.key() == b.key(); }

  std::string render(const std::vector<std::string>& rv_order) const {
    auto rank = [&](const Group& g) {
      std::size_t best = rv_order.size();
      for (const auto& v : g) {
        auto it = std::find(rv_order.begin(), rv_order.end(), v);
        best = std::min(best, static_cast<std::size_t>(it - rv_order.begin()));
      }
      return best;
    };
    const Group *g1 = &first, *g2 = &second;
    std::size_t r1 = rank(first), r2 = rank(second);
    if (r2 < r1 || (r1 == r2 && join(second) < join(first))) std::swap(g1, g2);
    std::string s = "I(" + join(*g1) + ";" + join(*g2);
    if (!cond.empty()) s += "|" + join(cond);
    return s + ")";
  }
};

struct AtomTerm {
  Atom atom;
  Rat coeff;
};

// Normal form: sum(coeff_v * v) REL sum(coeff_a * atom) + constant,
// where REL is <= (strict=false) or < (strict=true).
struct Inequality {
  std::map<std::string, Rat> vars;
  std::vector<AtomTerm> atoms;
  Rat constant;
  bool strict = false;

  Rat var_coeff(const std::string& v) const {
    auto it = vars.find(v);
    return it == vars.end() ? Rat(0) : it->second;
  }

  void add_var(const std::string& v, Rat c) {
    auto it = vars.find(v);
    Rat nc = (it == vars.end() ? Rat(0) : it->second) + c;
    if (nc.is_zero())
      vars.erase(v);
    else
      vars[v] = nc;
  }

  void add_atom(const Atom& a, Rat c) {
    for (auto& t : atoms)
      if (t.atom == a) {
        t.coeff = t.coeff + c;
        return;
      }
    atoms.push_back({a, c});
  }

  void prune() {
    std::vector<AtomTerm> kept;
    for (auto& t : atoms)
      if (!t.coeff.is_zero()) kept.push_back(t);
    atoms = std::move(kept);
  }

  bool trivial_vars() const { return vars.empty(); }
};

struct Assumptions {
  std::vector<std::string> nonneg_vars;
  std::vector<Atom> zero_atoms;  // declared conditional-independence facts

  bool var_nonneg(const std::string& v) const {
    return std::find(nonneg_vars.begin(), nonneg_vars.end(), v) != nonneg_vars.end();
  }
  bool atom_is_zero(const Atom& a) const {
    for (const auto& z : zero_atoms)
      if (z == a) return true;
    return false;
  }
};

struct SymbolicSystem {
  std::vector<std::string> variables;  // declared, render order
  std::vector<std::string> rv_order;   // random variables, orientation order
  std::vector<Inequality> rows;

  void check_declared() const {
    for (const auto& r : rows)
      for (const auto& [v, c] : r.vars)
        if (std::find(variables.begin(), variables.end(), v) == variables.end())
          throw validation_error("SymbolicSystem: undeclared variable " + v);
  }
};

// --- canonicalization ------------------------------------------------------

namespace detail {

// Scale a row so all rational coefficients become integers with content 1.
inline void normalize_scale(Inequality& r) {
  long long l = 1;
  auto fold_den = [&](Rat q) { l = std::lcm(l, q.d); };
  for (auto& [v, c] : r.vars) fold_den(c);
  for (auto& t : r.atoms) fold_den(t.coeff);
  fold_den(r.constant);
  long long g = 0;
  auto fold_num = [&](Rat q) {
    long long scaled = q.n * (l / q.d);
    g = std::gcd(g, scaled < 0 ? -scaled : scaled);
  };
  for (auto& [v, c] : r.vars) fold_num(c);
  for (auto& t : r.atoms) fold_num(t.coeff);
  fold_num(r.constant);
  if (g == 0) g = 1;
  Rat scale(l, g);
  for (auto& [v, c] : r.vars) c = c * scale;
  for (auto& t : r.atoms) t.coeff = t.coeff * scale;
  r.constant = r.constant * scale;
}

// Chain-rule merge inside a row: c*I(A;B|C) + c*I(D;B|A,C) -> c*I(A,D;B|C).
inline bool chain_merge_once(Inequality& r) {
  for (std::size_t i = 0; i < r.atoms.size(); ++i)
    for (std::size_t j = 0; j < r.atoms.size(); ++j) {
      if (i == j) continue;
      if (!(r.atoms[i].coeff == r.atoms[j].coeff)) continue;
      const Atom& ai = r.atoms[i].atom;
      const Atom& aj = r.atoms[j].atom;
      // try all orientations: ai = I(A;B|C), aj = I(D;B|A u C)
      const Group* asides[2] = {&ai.first, &ai.second};
      const Group* jsides[2] = {&aj.first, &aj.second};
      for (int oi = 0; oi < 2; ++oi)
        for (int oj = 0; oj < 2; ++oj) {
          const Group &A = *asides[oi], &B = *asides[1 - oi];
          const Group &D = *jsides[oj], &Bj = *jsides[1 - oj];
          if (B != Bj) continue;
          if (aj.cond != group_union(A, ai.cond)) continue;
          Rat c = r.atoms[i].coeff;
          Atom merged(group_union(A, D), B, ai.cond);
          std::size_t hi = std::max(i, j), lo = std::min(i, j);
          r.atoms.erase(r.atoms.begin() + static_cast<std::ptrdiff_t>(hi));
          r.atoms.erase(r.atoms.begin() + static_cast<std::ptrdiff_t>(lo));
          r.add_atom(merged, c);
          r.prune();
          return true;
        }
    }
  return false;
}

inline std::string render_linear(const Inequality& r, const std::vector<std::string>& var_order) {
  std::string s;
  for (const auto& v : var_order) {
    Rat c = r.var_coeff(v);
    if (c.is_zero()) continue;
    if (s.empty()) {
      if (c == Rat(1))
        s += v;
      else if (c == Rat(-1))
        s += "-" + v;
      else
        s += c.str() + "*" + v;
    } else {
      if (c.positive())
        s += " + " + (c == Rat(1) ? v : c.str() + "*" + v);
      else {
        Rat a = -c;
        s += " - " + (a == Rat(1) ? v : a.str() + "*" + v);
      }
    }
  }
  return s.empty() ? "0" : s;
}

inline std::string render_rhs(const Inequality& r, const std::vector<std::string>& rv_order) {
  std::string s;
  for (const auto& t : r.atoms) {
    std::string a = t.atom.render(rv_order);
    Rat c = t.coeff;
    if (s.empty()) {
      if (c == Rat(1))
        s += a;
      else if (c == Rat(-1))
        s += "-" + a;
      else
        s += c.str() + "*" + a;
    } else {
      if (c.positive())
        s += " + " + (c == Rat(1) ? a : c.str() + "*" + a);
      else {
        Rat m = -c;
        s += " - " + (m == Rat(1) ? a : m.str() + "*" + a);
      }
    }
  }
  if (!r.constant.is_zero() || s.empty()) {
    if (s.empty())
      s = r.constant.str();
    else if (r.constant.positive())
      s += " + " + r.constant.str();
    else
      s += " - " + (-r.constant).str();
  }
  return s;
}

}  // namespace detail

inline std::string render_row(const Inequality& r, const SymbolicSystem& sys) {
  return detail::render_linear(r, sys.variables) + (r.strict ? " < " : " <= ") +
         detail::render_rhs(r, sys.rv_order);
}

// Stable canonical form: merged atoms, chain-rule merges applied to a
// fixpoint, scaled coefficients, atoms and rows deterministically ordered.
inline SymbolicSystem canonicalize(SymbolicSystem sys) {
  for (auto& r : sys.rows) {
    // merge duplicate atoms
    Inequality merged;
    merged.vars = r.vars;
    merged.constant = r.constant;
    merged.strict = r.strict;
    for (const auto& t : r.atoms) merged.add_atom(t.atom, t.coeff);
    merged.prune();
    while (detail::chain_merge_once(merged)) {
    }
    detail::normalize_scale(merged);
    std::sort(merged.atoms.begin(), merged.atoms.end(), [&](const AtomTerm& a, const AtomTerm& b) {
      if (a.coeff.positive() != b.coeff.positive()) return a.coeff.positive();
      return a.atom.render(sys.rv_order) < b.atom.render(sys.rv_order);
    });
    r = std::move(merged);
  }
  std::sort(sys.rows.begin(), sys.rows.end(), [&](const Inequality& a, const Inequality& b) {
    if (a.vars.size() != b.vars.size()) return a.vars.size() < b.vars.size();
    std::string ra = render_row(a, sys), rb = render_row(b, sys);
    return ra < rb;
  });
  // drop exact duplicates, preferring the non-strict copy
  std::vector<Inequality> kept;
  for (auto& r : sys.rows) {
    bool dup = false;
    for (auto& k : kept) {
      Inequality ks = k, rs = r;
      ks.strict = rs.strict = false;
      if (render_row(ks, sys) == render_row(rs, sys)) {
        k.strict = k.strict && r.strict;
        dup = true;
        break;
      }
    }
    if (!dup) kept.push_back(r);
  }
  sys.rows = std::move(kept);
  return sys;
}

// Standard FME projection of one variable: pair every lower bound with every
// upper bound; strictness propagates if either parent is strict.
inline SymbolicSystem eliminate(SymbolicSystem sys, const std::string& var) {
  if (std::find(sys.variables.begin(), sys.variables.end(), var) == sys.variables.end())
    throw validation_error("eliminate: unknown variable " + var);
  std::vector<Inequality> uppers, lowers, rest;
  for (const auto& r : sys.rows) {
    Rat c = r.var_coeff(var);
    if (c.is_zero())
      rest.push_back(r);
    else if (c.positive())
      uppers.push_back(r);
    else
      lowers.push_back(r);
  }
  std::vector<Inequality> out = rest;
  for (const auto& lo : lowers)
    for (const auto& up : uppers) {
      Rat cl = lo.var_coeff(var);  // negative
      Rat cu = up.var_coeff(var);  // positive
      Rat su = -cl, sl = cu;       // positive scales
      Inequality row;
      row.strict = lo.strict || up.strict;
      for (const auto& [v, c] : up.vars) row.add_var(v, c * su);
      for (const auto& [v, c] : lo.vars) row.add_var(v, c * sl);
      for (const auto& t : up.atoms) row.add_atom(t.atom, t.coeff * su);
      for (const auto& t : lo.atoms) row.add_atom(t.atom, t.coeff * sl);
      row.constant = up.constant * su + lo.constant * sl;
      row.vars.erase(var);
      row.prune();
      out.push_back(std::move(row));
    }
  SymbolicSystem res;
  res.variables.clear();
  for (const auto& v : sys.variables)
    if (v != var) res.variables.push_back(v);
  res.rv_order = sys.rv_order;
  res.rows = std::move(out);
  return canonicalize(res);
}

namespace detail {

// Certainly-nonnegative test for an affine atom combination under the
// convention that every atom is a nonnegative quantity.
inline bool rhs_certainly_nonneg(const Inequality& r) {
  if (r.constant.negative()) return false;
  for (const auto& t : r.atoms)
    if (t.coeff.negative() || !t.atom.declared_nonnegative) return false;
  return true;
}

// Directed rewrite of atom I(A;B|C) to I(G;B) for a target group G occurring
// in the same row, valid when the declared zero atoms cover the expansion
// I(G;B) = I(C;B) + I(A;B|C) + I(G\(A u C);B|A u C).
inline bool try_group_rewrite(Inequality& r, const Assumptions& as) {
  for (std::size_t i = 0; i < r.atoms.size(); ++i) {
    const Atom a = r.atoms[i].atom;
    const Group* asides[2] = {&a.first, &a.second};
    for (int oa = 0; oa < 2; ++oa) {
      const Group &A = *asides[oa], &B = *asides[1 - oa];
      for (std::size_t j = 0; j < r.atoms.size(); ++j) {
        if (i == j) continue;
        const Atom& tj = r.atoms[j].atom;
        const Group* tsides[2] = {&tj.first, &tj.second};
        for (int ot = 0; ot < 2; ++ot) {
          const Group& G = *tsides[ot];
          if (!group_subset(A, G) || !group_disjoint(G, B)) continue;
          if (!group_subset(a.cond, G)) continue;
          Group D = group_minus(group_minus(G, A), a.cond);
          Atom target(G, B);
          if (target == a) continue;
          bool ok = true;
          if (!a.cond.empty()) ok = ok && as.atom_is_zero(Atom(a.cond, B));
          if (!D.empty()) ok = ok && as.atom_is_zero(Atom(D, B, group_union(A, a.cond)));
          if (!ok) continue;
          Rat c = r.atoms[i].coeff;
          r.atoms.erase(r.atoms.begin() + static_cast<std::ptrdiff_t>(i));
          r.add_atom(target, c);
          r.prune();
          return true;
        }
      }
    }
  }
  return false;
}

}  // namespace detail

// Redundancy removal and assumption-driven rewriting. Dominance is syntactic:
// row r is dropped when another row q has componentwise-larger variable
// coefficients (differences on declared-nonnegative variables only) and a
// certainly-smaller right-hand side.
inline SymbolicSystem simplify(SymbolicSystem sys, const Assumptions& as = {}) {
  sys = canonicalize(std::move(sys));
  for (auto& r : sys.rows) {
    while (detail::try_group_rewrite(r, as)) {
    }
  }
  sys = canonicalize(std::move(sys));

  // contradiction / trivial-row scan
  std::vector<Inequality> kept;
  for (auto& r : sys.rows) {
    if (r.vars.empty() && r.atoms.empty()) {
      bool holds = r.strict ? Rat(0) < r.constant : Rat(0) <= r.constant;
      if (!holds) throw validation_error("simplify: contradictory system under assumptions");
      continue;  // trivially true
    }
    bool all_nonpos_on_nonneg = true;
    for (const auto& [v, c] : r.vars)
      if (!(c.negative() && as.var_nonneg(v))) {
        all_nonpos_on_nonneg = false;
        break;
      }
    if (all_nonpos_on_nonneg && detail::rhs_certainly_nonneg(r) && !r.strict) {
      continue;  // e.g. 0 <= Rc, 0 <= I(X2;Y)
    }
    kept.push_back(r);
  }

  // pairwise dominance
  std::vector<bool> dead(kept.size(), false);
  for (std::size_t i = 0; i < kept.size(); ++i)
    for (std::size_t j = 0; j < kept.size(); ++j) {
      if (i == j || dead[i] || dead[j]) continue;
      const Inequality &r = kept[i], &q = kept[j];
      // does q imply r?
      bool coeffs_ok = true;
      std::set<std::string> vars;
      for (const auto& [v, c] : r.vars) vars.insert(v);
      for (const auto& [v, c] : q.vars) vars.insert(v);
      for (const auto& v : vars) {
        Rat diff = q.var_coeff(v) - r.var_coeff(v);
        if (diff.is_zero()) continue;
        if (!(diff.positive() && as.var_nonneg(v))) {
          coeffs_ok = false;
          break;
        }
      }
      if (!coeffs_ok) continue;
      Inequality delta;  // RHS(r) - RHS(q)
      for (const auto& t : r.atoms) delta.add_atom(t.atom, t.coeff);
      for (const auto& t : q.atoms) delta.add_atom(t.atom, -t.coeff);
      delta.constant = r.constant - q.constant;
      delta.prune();
      if (!detail::rhs_certainly_nonneg(delta)) continue;
      bool identical = vars.empty() || [&] {
        for (const auto& v : vars)
          if (!(q.var_coeff(v) == r.var_coeff(v))) return false;
        return true;
      }();
      if (identical && delta.atoms.empty() && delta.constant.is_zero()) {
        // same row; drop the later copy
        dead[std::max(i, j)] = true;
      } else {
        dead[i] = true;
      }
    }
  SymbolicSystem out;
  out.variables = sys.variables;
  out.rv_order = sys.rv_order;
  for (std::size_t i = 0; i < kept.size(); ++i)
    if (!dead[i]) out.rows.push_back(kept[i]);
  return canonicalize(std::move(out));
}

inline std::string render_system(const SymbolicSystem& sys) {
  std::string out;
  for (const auto& r : sys.rows) out += render_row(r, sys) + "\n";
  return out;
}

inline bool equal_modulo_strictness(const SymbolicSystem& a, const SymbolicSystem& b) {
  auto strip = [](SymbolicSystem s) {
    for (auto& r : s.rows) r.strict = false;
    return canonicalize(std::move(s));
  };
  SymbolicSystem ca = strip(a), cb = strip(b);
  return render_system(ca) == render_system(cb);
}

// --- built-in systems -------------------------------------------------------

struct BuiltinResult {
  SymbolicSystem initial;
  std::vector<SymbolicSystem> stages;  // after each elimination
  SymbolicSystem final;                // after simplify
};

// Block-Markov scheme constraints and their projection: T and T-hat are the
// cell and compression rates; the final stage applies the independence and
// Markov identities of the inner-bound measure.
inline BuiltinResult builtin_appendix_e() {
  SymbolicSystem s;
  s.variables = {"T", "That", "Rc", "R1"};
  s.rv_order = {"V", "X1", "X2", "Y", "S"};
  auto row = [&](std::map<std::string, Rat> vars, std::vector<AtomTerm> atoms, bool strict) {
    Inequality r;
    r.vars = std::move(vars);
    r.atoms = std::move(atoms);
    r.strict = strict;
    s.rows.push_back(std::move(r));
  };
  Atom i_vs_x2({"V"}, {"S"}, {"X2"});
  Atom i_x2y({"X2"}, {"Y"});
  Atom i_vy_x2({"V"}, {"Y"}, {"X2"});
  Atom i_vx1x2y({"V", "X1", "X2"}, {"Y"});
  Atom i_x1y_vx2({"X1"}, {"Y"}, {"V", "X2"});
  row({{"That", Rat(-1)}}, {{i_vs_x2, Rat(-1)}}, true);                  // That > I(V;S|X2)
  row({{"T", Rat(1)}}, {{i_x2y, Rat(1)}}, true);                         // T < I(X2;Y)
  row({{"That", Rat(1)}, {"T", Rat(-1)}}, {{i_vy_x2, Rat(1)}}, true);    // That < I(V;Y|X2) + T
  row({{"Rc", Rat(1)}, {"R1", Rat(1)}, {"That", Rat(1)}}, {{i_vx1x2y, Rat(1)}}, false);
  row({{"R1", Rat(1)}}, {{i_x1y_vx2, Rat(1)}}, false);

  BuiltinResult out;
  out.initial = canonicalize(s);
  SymbolicSystem e14 = eliminate(s, "T");
  out.stages.push_back(e14);
  SymbolicSystem e15 = eliminate(e14, "That");
  out.stages.push_back(e15);
  Assumptions as;
  as.nonneg_vars = {"Rc", "R1"};
  as.zero_atoms = {Atom({"X2"}, {"S"}),               // X2 independent of S
                   Atom({"X1"}, {"S"}, {"V", "X2"})}; // X1 <-> (V,X2) <-> S
  out.final = simplify(e15, as);
  return out;
}

// Asymmetric scheme constraints: R-hat is the covering rate, Rc2 the
// non-cooperative part of the common rate (Rc = Rc1 + Rc2).
inline BuiltinResult builtin_appendix_j() {
  SymbolicSystem s;
  s.variables = {"Rhat", "Rc2", "Rc", "R1"};
  s.rv_order = {"U", "V", "X1", "X2", "Y", "S"};
  auto row = [&](std::map<std::string, Rat> vars, std::vector<AtomTerm> atoms, bool strict) {
    Inequality r;
    r.vars = std::move(vars);
    r.atoms = std::move(atoms);
    r.strict = strict;
    s.rows.push_back(std::move(r));
  };
  Atom cover({"V"}, {"S"}, {"U", "X2"});
  Atom priv({"X1"}, {"Y"}, {"U", "V", "X2"});
  Atom mid({"V", "X1", "X2"}, {"Y"}, {"U"});
  Atom full({"U", "V", "X1", "X2"}, {"Y"});
  row({{"Rhat", Rat(-1)}}, {{cover, Rat(-1)}}, true);  // Rhat > I(V;S|U,X2)
  row({{"R1", Rat(1)}}, {{priv, Rat(1)}}, false);
  row({{"R1", Rat(1)}, {"Rhat", Rat(1)}}, {{mid, Rat(1)}}, false);
  row({{"Rc2", Rat(1)}, {"R1", Rat(1)}, {"Rhat", Rat(1)}}, {{mid, Rat(1)}}, false);
  row({{"Rc", Rat(1)}, {"R1", Rat(1)}, {"Rhat", Rat(1)}}, {{full, Rat(1)}}, false);
  row({{"Rc2", Rat(-1)}}, {}, false);                 // Rc2 >= 0
  row({{"Rc2", Rat(1)}, {"Rc", Rat(-1)}}, {}, false); // Rc2 <= Rc  (Rc1 >= 0)

  BuiltinResult out;
  out.initial = canonicalize(s);
  SymbolicSystem s2 = eliminate(s, "Rhat");
  out.stages.push_back(s2);
  SymbolicSystem s3 = eliminate(s2, "Rc2");
  out.stages.push_back(s3);
  Assumptions as;
  as.nonneg_vars = {"Rc", "R1"};
  out.final = simplify(s3, as);
  return out;
}

inline BuiltinResult builtin_system(const std::string& name) {
  if (name == "appendixE") return builtin_appendix_e();
  if (name == "appendixJ") return builtin_appendix_j();
  throw validation_error("unknown builtin system: " + name);
}

}  // namespace fme
}  // namespace macregions
