#include <doctest.h>

#include <map>

#include "macregions/fme.hpp"
#include "macregions/io.hpp"

using namespace macregions;
using namespace macregions::fme;

namespace {

Inequality row(std::map<std::string, Rat> vars, std::vector<AtomTerm> atoms, bool strict = false,
               Rat constant = Rat(0)) {
  Inequality r;
  r.vars = std::move(vars);
  r.atoms = std::move(atoms);
  r.strict = strict;
  r.constant = constant;
  return r;
}

}  // namespace

TEST_SUITE("fme") {
  TEST_CASE("appendix-E projection chain") {
    BuiltinResult res = builtin_appendix_e();
    Atom i_vs_x2({"V"}, {"S"}, {"X2"});
    Atom i_vx2y({"V", "X2"}, {"Y"});
    Atom i_vx1x2y({"V", "X1", "X2"}, {"Y"});
    Atom i_x1y({"X1"}, {"Y"}, {"V", "X2"});

    // after projecting out T: the chain-rule merge must produce I(V,X2;Y)
    SymbolicSystem e14;
    e14.variables = {"That", "Rc", "R1"};
    e14.rv_order = {"V", "X1", "X2", "Y", "S"};
    e14.rows = {row({{"That", Rat(-1)}}, {{i_vs_x2, Rat(-1)}}, true),
                row({{"That", Rat(1)}}, {{i_vx2y, Rat(1)}}, true),
                row({{"That", Rat(1)}, {"Rc", Rat(1)}, {"R1", Rat(1)}}, {{i_vx1x2y, Rat(1)}}),
                row({{"R1", Rat(1)}}, {{i_x1y, Rat(1)}})};
    CHECK(equal_modulo_strictness(res.stages[0], e14));

    // after projecting out That
    SymbolicSystem e15;
    e15.variables = {"Rc", "R1"};
    e15.rv_order = e14.rv_order;
    e15.rows = {row({}, {{i_vx2y, Rat(1)}, {i_vs_x2, Rat(-1)}}),
                row({{"R1", Rat(1)}}, {{i_x1y, Rat(1)}}),
                row({{"Rc", Rat(1)}, {"R1", Rat(1)}}, {{i_vx1x2y, Rat(1)}, {i_vs_x2, Rat(-1)}})};
    CHECK(equal_modulo_strictness(res.stages[1], e15));

    // identity rewrites give the final measure-level form
    SymbolicSystem e16;
    e16.variables = {"Rc", "R1"};
    e16.rv_order = e14.rv_order;
    e16.rows = {row({}, {{Atom({"V", "X2"}, {"Y"}), Rat(1)}, {Atom({"V", "X2"}, {"S"}), Rat(-1)}}),
                row({{"R1", Rat(1)}}, {{i_x1y, Rat(1)}}),
                row({{"Rc", Rat(1)}, {"R1", Rat(1)}},
                    {{Atom({"V", "X1", "X2"}, {"Y"}), Rat(1)}, {Atom({"V", "X1", "X2"}, {"S"}), Rat(-1)}})};
    CHECK(equal_modulo_strictness(res.final, e16));
  }

  TEST_CASE("appendix-J projection chain") {
    BuiltinResult res = builtin_appendix_j();
    Atom cover({"V"}, {"S"}, {"U", "X2"});
    Atom priv({"X1"}, {"Y"}, {"U", "V", "X2"});
    Atom mid({"V", "X1", "X2"}, {"Y"}, {"U"});
    Atom full({"U", "V", "X1", "X2"}, {"Y"});

    // after projecting out Rhat
    bool found_rc2_row = false;
    for (const auto& r : res.stages[0].rows)
      if (!r.var_coeff("Rc2").is_zero() && !r.var_coeff("R1").is_zero()) found_rc2_row = true;
    CHECK(found_rc2_row);

    SymbolicSystem gj;
    gj.variables = {"Rc", "R1"};
    gj.rv_order = {"U", "V", "X1", "X2", "Y", "S"};
    gj.rows = {row({{"R1", Rat(1)}}, {{priv, Rat(1)}}),
               row({{"R1", Rat(1)}}, {{mid, Rat(1)}, {cover, Rat(-1)}}),
               row({{"Rc", Rat(1)}, {"R1", Rat(1)}}, {{full, Rat(1)}, {cover, Rat(-1)}})};
    CHECK(equal_modulo_strictness(res.final, gj));
  }

  TEST_CASE("eliminating an absent variable leaves the system unchanged") {
    SymbolicSystem s;
    s.variables = {"x", "y"};
    s.rv_order = {"A", "B"};
    s.rows = {row({{"x", Rat(1)}}, {{Atom({"A"}, {"B"}), Rat(1)}})};
    SymbolicSystem out = eliminate(s, "y");
    CHECK(equal_modulo_strictness(out, canonicalize(s)));
  }

  TEST_CASE("simplify removes rows dominated through nonnegative variables") {
    Atom a({"A"}, {"B"});
    SymbolicSystem s;
    s.variables = {"Rc", "R1"};
    s.rv_order = {"A", "B"};
    s.rows = {row({{"R1", Rat(1)}}, {{a, Rat(1)}}),
              row({{"Rc", Rat(1)}, {"R1", Rat(1)}}, {{a, Rat(1)}})};
    Assumptions as;
    as.nonneg_vars = {"Rc", "R1"};
    SymbolicSystem out = simplify(s, as);
    REQUIRE(out.rows.size() == 1);
    CHECK(!out.rows[0].var_coeff("Rc").is_zero());
  }

  TEST_CASE("simplify with no assumptions is conservative and idempotent") {
    Atom a({"A"}, {"B"});
    Atom b({"A"}, {"C"});
    SymbolicSystem s;
    s.variables = {"x"};
    s.rv_order = {"A", "B", "C"};
    s.rows = {row({{"x", Rat(1)}}, {{a, Rat(1)}}), row({{"x", Rat(1)}}, {{b, Rat(1)}})};
    SymbolicSystem once = simplify(s);
    CHECK(once.rows.size() == 2);
    SymbolicSystem twice = simplify(once);
    CHECK(render_system(once) == render_system(twice));
  }

  TEST_CASE("canonical output is independent of row order") {
    Atom a({"A"}, {"B"});
    Atom c({"A"}, {"C"});
    SymbolicSystem s1, s2;
    s1.variables = s2.variables = {"x", "y"};
    s1.rv_order = s2.rv_order = {"A", "B", "C"};
    Inequality r1 = row({{"x", Rat(1)}}, {{a, Rat(1)}});
    Inequality r2 = row({{"y", Rat(1)}, {"x", Rat(2)}}, {{c, Rat(1)}, {a, Rat(-1)}});
    s1.rows = {r1, r2};
    s2.rows = {r2, r1};
    CHECK(render_system(canonicalize(s1)) == render_system(canonicalize(s2)));
  }

  TEST_CASE("contradictory assumptions are rejected") {
    SymbolicSystem s;
    s.variables = {"x"};
    s.rows = {row({}, {}, true, Rat(0))};  // 0 < 0
    CHECK_THROWS_AS(simplify(s), validation_error);
  }

  TEST_CASE("projection soundness on random rational systems") {
    Rng rng(71);
    Atom a({"A"}, {"B"});
    Atom b({"A"}, {"C"});
    int checked = 0;
    for (int t = 0; t < 100; ++t) {
      // random system over {x, y} with atom-valued bounds
      SymbolicSystem s;
      s.variables = {"x", "y"};
      s.rv_order = {"A", "B", "C"};
      int rows_n = 2 + static_cast<int>(rng.next_u64() % 4);
      for (int k = 0; k < rows_n; ++k) {
        Rat cx(static_cast<long long>(rng.next_u64() % 5) - 2);
        Rat cy(static_cast<long long>(rng.next_u64() % 5) - 2);
        Rat ca(static_cast<long long>(rng.next_u64() % 3) - 1);
        Rat cb(static_cast<long long>(rng.next_u64() % 3) - 1);
        Rat cc(static_cast<long long>(rng.next_u64() % 7) - 3);
        s.rows.push_back(row({{"x", cx}, {"y", cy}}, {{a, ca}, {b, cb}}, false, cc));
      }
      SymbolicSystem projected = eliminate(s, "x");

      // random rational instantiation of the atoms and of y
      Rat va(static_cast<long long>(rng.next_u64() % 9) - 4, 2);
      Rat vb(static_cast<long long>(rng.next_u64() % 9) - 4, 2);
      Rat vy(static_cast<long long>(rng.next_u64() % 9) - 4, 2);
      auto rhs_of = [&](const Inequality& r) {
        Rat acc = r.constant;
        for (const auto& term : r.atoms) {
          if (term.atom == a) acc = acc + term.coeff * va;
          if (term.atom == b) acc = acc + term.coeff * vb;
        }
        return acc;
      };
      // satisfiable in x <=> max lower bound <= min upper bound
      bool has_bounds_conflict = false;
      Rat lo(-1000), hi(1000);
      bool feasible_zero_rows = true;
      for (const auto& r : s.rows) {
        Rat cx = r.var_coeff("x");
        Rat rest = rhs_of(r) - r.var_coeff("y") * vy;
        if (cx.is_zero()) {
          if (!(Rat(0) <= rest)) feasible_zero_rows = false;
        } else if (cx.positive()) {
          Rat bound = rest / cx;
          if (bound < hi) hi = bound;
        } else {
          Rat bound = rest / cx;
          if (lo < bound) lo = bound;
        }
      }
      bool extendable = feasible_zero_rows && (lo <= hi) && !has_bounds_conflict;

      bool projected_ok = true;
      for (const auto& r : projected.rows) {
        Rat lhs = r.var_coeff("y") * vy;
        if (!(lhs <= rhs_of(r))) projected_ok = false;
      }
      CHECK(projected_ok == extendable);
      ++checked;
    }
    CHECK(checked == 100);
  }

  TEST_CASE("system JSON round trip") {
    BuiltinResult res = builtin_appendix_e();
    json j = system_to_json(res.final);
    SymbolicSystem back = system_from_json(j);
    CHECK(equal_modulo_strictness(back, res.final));
  }
}
