#pragma once

// The verification battery: one entry per acceptance criterion, each pinned
// to its stated tolerance. Shared by the `verify-examples` CLI subcommand and
// the acceptance test binary.

#include <chrono>
#include <cstdarg>
#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include "macregions/bounds.hpp"
#include "macregions/channel.hpp"
#include "macregions/fme.hpp"
#include "macregions/gaussian.hpp"
#include "macregions/prob.hpp"
#include "macregions/search.hpp"
#include "macregions/sim.hpp"

namespace macregions {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

namespace acceptance {

inline std::string fmt(const char* f, ...) {
  char buf[1024];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

// Selector-channel outer-bound witness law: V = S_{X1+X2}, iid uniform inputs.
inline FactoredLaw selector_witness_law(const ChannelSpec& ch) {
  FactoredLaw law = lawspace::blank_law(ch, BoundKind::OuterSc, 2, 1);
  law.p_x2 = {0.5, 0.5};
  law.p_x1_g_x2 = {0.5, 0.5, 0.5, 0.5};
  for (int s = 0; s < 4; ++s) {
    int s0 = s >> 1, s1 = s & 1;
    for (int x1 = 0; x1 < 2; ++x1)
      for (int x2 = 0; x2 < 2; ++x2) {
        int v = (x1 == x2) ? s0 : s1;
        law.p_v_g_sx1x2[static_cast<std::size_t>(((s * 2 + x1) * 2 + x2) * 2 + v)] = 1.0;
      }
  }
  return law;
}

// V = S copy inner law with independent Bernoulli(q1) X1 and uniform X2.
inline FactoredLaw inner_v_eq_s_law(const ChannelSpec& ch, double q1) {
  FactoredLaw law = lawspace::blank_law(ch, BoundKind::InnerSc, ch.ns, 1);
  for (int x2 = 0; x2 < ch.nx2; ++x2) law.p_x2[static_cast<std::size_t>(x2)] = 1.0 / ch.nx2;
  for (int x2 = 0; x2 < ch.nx2; ++x2) {
    law.p_x1_g_x2[static_cast<std::size_t>(x2 * ch.nx1 + 0)] = 1.0 - q1;
    law.p_x1_g_x2[static_cast<std::size_t>(x2 * ch.nx1 + 1)] = q1;
  }
  for (int s = 0; s < ch.ns; ++s)
    for (int x2 = 0; x2 < ch.nx2; ++x2)
      law.p_v_g_sx2[static_cast<std::size_t>((s * ch.nx2 + x2) * ch.ns + s)] = 1.0;
  return law;
}

inline CriterionResult criterion1() {
  auto t0 = std::chrono::steady_clock::now();
  CriterionResult r;
  r.id = 1;
  r.name = "selector-channel outer witness corners";
  ChannelSpec ch = make_mod2_selector_channel();
  CornerEvaluation c = eval_outer_sc(ch, selector_witness_law(ch));
  double slack = c.constraint_slack.value_or(-1.0);
  bool ok_r1 = std::abs(c.r1_cap - 1.0) <= 1e-6;
  bool ok_sum = std::abs(c.sum_cap - 1.5) <= 1e-6;
  bool ok_slack = std::abs(slack - 0.5) <= 1e-6;
  r.pass = ok_r1 && ok_sum && ok_slack;
  r.detail = fmt("r1_cap=%.6f (want 1.000000) sum_cap=%.6f (want 1.500000) slack=%.6f (want 0.500000)",
                 c.r1_cap, c.sum_cap, slack);
  if (!ok_slack)
    r.detail += fmt("; slack golden is not attainable: exact value is H(S|X2,V)=1/2+2p(1-p)=%.9f",
                    0.5 + 2.0 * inverse_binary_entropy(0.5) * (1.0 - inverse_binary_entropy(0.5)));
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

inline CriterionResult criterion2() {
  auto t0 = std::chrono::steady_clock::now();
  CriterionResult r;
  r.id = 2;
  r.name = "helper-channel closed form (inner-sc, Rc=0 slice)";
  r.pass = true;
  for (double p : {0.05, 0.1, 0.25}) {
    ChannelSpec ch = make_additive_binary_helper_channel(p);
    for (double q1 : {0.1, 0.3, 0.5}) {
      double want = oracle_example3(p, q1);
      SearchConfig cfg;
      cfg.lambda_points = 1;  // the Rc = 0 slice
      cfg.seed = 20240817;
      cfg.q1_cap = q1;
      for (bool relax : {false, true}) {
        cfg.relax_constraint = relax;
        RateRegion region = compute_region(ch, BoundKind::InnerSc, cfg);
        double got = region.max_r1_at_rc0();
        if (std::abs(got - want) > 1e-2) {
          r.pass = false;
          r.detail += fmt("[p=%.2f q1=%.1f relax=%d: got %.5f want %.5f] ", p, q1, relax ? 1 : 0,
                          got, want);
        }
      }
    }
  }
  if (r.pass) r.detail = "9 (p,q1) pairs x {strict,relaxed} within 1e-2 of h2(p*q1)-h2(p)";
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

inline CriterionResult criterion3() {
  auto t0 = std::chrono::steady_clock::now();
  CriterionResult r;
  r.id = 3;
  r.name = "switch-channel arithmetic (decoupled prop1 caps)";
  ChannelSpec ch = make_switch_channel();
  SearchConfig cfg;
  cfg.seed = 7;
  RateRegion dec = compute_region(ch, BoundKind::JointInput, cfg, RegionMode::Decoupled);
  double max_r1 = dec.samples.empty() ? 0.0 : dec.samples.front().r1_cap;
  double max_sum = dec.samples.empty() ? 0.0 : dec.samples.front().sum_cap;
  bool ok_r1 = std::abs(max_r1 - 0.5) <= 1e-3;
  bool ok_sum = std::abs(max_sum - 1.0) <= 1e-3;
  r.pass = ok_r1 && ok_sum;
  // informational: pentagon-union hull vs the decoupled square corner
  RateRegion pen = compute_region(ch, BoundKind::JointInput, cfg, RegionMode::PentagonUnion);
  RatePoint corner{0.5, 0.5};
  const char* dec_v = membership(dec, corner, 1e-6) == Membership::Inside ? "inside" : "outside";
  const char* pen_v = membership(pen, corner, 1e-6) == Membership::Inside ? "inside" : "outside";
  r.detail = fmt("caps=(%.4f,%.4f) want (0.5,1.0); (1/2,1/2) is %s decoupled hull, %s "
                 "pentagon-union hull (informational)",
                 max_r1, max_sum, dec_v, pen_v);
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

inline CriterionResult criterion4() {
  auto t0 = std::chrono::steady_clock::now();
  CriterionResult r;
  r.id = 4;
  r.name = "FME golden outputs (appendixE / appendixJ)";
  using namespace fme;
  BuiltinResult e1 = builtin_appendix_e();
  BuiltinResult e2 = builtin_appendix_e();
  BuiltinResult j1 = builtin_appendix_j();
  BuiltinResult j2 = builtin_appendix_j();

  // golden E-16 set
  SymbolicSystem ge;
  ge.variables = {"Rc", "R1"};
  ge.rv_order = {"V", "X1", "X2", "Y", "S"};
  {
    Inequality a;  // 0 <= I(V,X2;Y) - I(V,X2;S)
    a.atoms = {{Atom({"V", "X2"}, {"Y"}), Rat(1)}, {Atom({"V", "X2"}, {"S"}), Rat(-1)}};
    Inequality b;  // R1 <= I(X1;Y|V,X2)
    b.vars = {{"R1", Rat(1)}};
    b.atoms = {{Atom({"X1"}, {"Y"}, {"V", "X2"}), Rat(1)}};
    Inequality c;  // Rc + R1 <= I(V,X1,X2;Y) - I(V,X1,X2;S)
    c.vars = {{"Rc", Rat(1)}, {"R1", Rat(1)}};
    c.atoms = {{Atom({"V", "X1", "X2"}, {"Y"}), Rat(1)}, {Atom({"V", "X1", "X2"}, {"S"}), Rat(-1)}};
    ge.rows = {a, b, c};
  }
  // golden E-15 set (before the identity rewrites)
  SymbolicSystem ge15;
  ge15.variables = {"Rc", "R1"};
  ge15.rv_order = ge.rv_order;
  {
    Inequality a;
    a.atoms = {{Atom({"V", "X2"}, {"Y"}), Rat(1)}, {Atom({"V"}, {"S"}, {"X2"}), Rat(-1)}};
    Inequality b;
    b.vars = {{"R1", Rat(1)}};
    b.atoms = {{Atom({"X1"}, {"Y"}, {"V", "X2"}), Rat(1)}};
    Inequality c;
    c.vars = {{"Rc", Rat(1)}, {"R1", Rat(1)}};
    c.atoms = {{Atom({"V", "X1", "X2"}, {"Y"}), Rat(1)}, {Atom({"V"}, {"S"}, {"X2"}), Rat(-1)}};
    ge15.rows = {a, b, c};
  }
  // golden three-inequality set of the asymmetric scheme
  SymbolicSystem gj;
  gj.variables = {"Rc", "R1"};
  gj.rv_order = {"U", "V", "X1", "X2", "Y", "S"};
  {
    Inequality a;
    a.vars = {{"R1", Rat(1)}};
    a.atoms = {{Atom({"X1"}, {"Y"}, {"U", "V", "X2"}), Rat(1)}};
    Inequality b;
    b.vars = {{"R1", Rat(1)}};
    b.atoms = {{Atom({"V", "X1", "X2"}, {"Y"}, {"U"}), Rat(1)},
               {Atom({"V"}, {"S"}, {"U", "X2"}), Rat(-1)}};
    Inequality c;
    c.vars = {{"Rc", Rat(1)}, {"R1", Rat(1)}};
    c.atoms = {{Atom({"U", "V", "X1", "X2"}, {"Y"}), Rat(1)},
               {Atom({"V"}, {"S"}, {"U", "X2"}), Rat(-1)}};
    gj.rows = {a, b, c};
  }

  bool e_final = equal_modulo_strictness(e1.final, ge);
  bool e_stage = equal_modulo_strictness(e1.stages[1], ge15);
  bool j_final = equal_modulo_strictness(j1.final, gj);
  bool stable = render_system(e1.final) == render_system(e2.final) &&
                render_system(j1.final) == render_system(j2.final);
  r.pass = e_final && e_stage && j_final && stable;
  r.detail = fmt("E-15 %s, E-16 %s, J-final %s, byte-stable %s", e_stage ? "ok" : "MISMATCH",
                 e_final ? "ok" : "MISMATCH", j_final ? "ok" : "MISMATCH", stable ? "ok" : "NO");
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

inline CriterionResult criterion5() {
  auto t0 = std::chrono::steady_clock::now();
  CriterionResult r;
  r.id = 5;
  r.name = "Nesting / sum-invariance / dominance property suite";
  r.pass = true;

  SearchConfig cfg;
  cfg.lambda_points = 11;
  cfg.restarts = 2;
  cfg.sweeps = 14;
  cfg.card_v = 4;
  cfg.seed = 424242;

  Rng chan_rng(0xC0FFEEULL);
  Rng law_rng(0xFACADEULL);
  int dominance_checked = 0;
  for (int t = 0; t < 20; ++t) {
    ChannelSpec ch = make_random_channel(chan_rng, 3);

    RateRegion inner = compute_region(ch, BoundKind::InnerSc, cfg);
    std::vector<FactoredLaw> outer_seeds;
    for (const auto& w : inner.witnesses) outer_seeds.push_back(lift_inner_to_outer(ch, w.law));
    RateRegion outer = compute_region(ch, BoundKind::OuterSc, cfg, RegionMode::PentagonUnion, outer_seeds);
    std::vector<FactoredLaw> p1_seeds;
    for (const auto& w : outer.witnesses) p1_seeds.push_back(induced_joint_input(ch, w.law));
    RateRegion p1 = compute_region(ch, BoundKind::JointInput, cfg, RegionMode::PentagonUnion, p1_seeds);

    double d_io = hull_distance(inner.hull, outer.hull);
    double d_op = hull_distance(outer.hull, p1.hull);
    if (d_io > 1e-6 || d_op > 1e-6) {
      r.pass = false;
      r.detail += fmt("[ch%d nesting: inner->outer %.2e outer->prop1 %.2e] ", t, d_io, d_op);
    }

    double cap = sum_capacity(ch);
    if (inner.max_sum() > cap + 1e-6) {
      r.pass = false;
      r.detail += fmt("[ch%d prop3: inner max-sum %.6f > sum-capacity %.6f] ", t, inner.max_sum(), cap);
    }

    // dominance: two-auxiliary corners never exceed the U-dropped corners
    for (int k = 0; k < 10; ++k) {
      FactoredLaw with_u = lawspace::uniform_law(ch, BoundKind::OuterSc, 3, 3, true);
      lawspace::randomize(with_u, ch, law_rng);
      CornerEvaluation cu = eval_outer_sc(ch, with_u);
      FactoredLaw no_u = with_u;
      no_u.p_u_g_svx1x2.clear();
      no_u.card_u = 1;
      CornerEvaluation cv = eval_outer_sc(ch, no_u);
      ++dominance_checked;
      if (cu.r1_cap > cv.r1_cap + 1e-9 || cu.sum_cap > cv.sum_cap + 1e-9) {
        r.pass = false;
        r.detail += fmt("[ch%d law%d dominance: withU=(%.6f,%.6f) dropped=(%.6f,%.6f)] ", t, k,
                        cu.r1_cap, cu.sum_cap, cv.r1_cap, cv.sum_cap);
      }
    }
  }
  if (r.pass)
    r.detail = fmt("20 channels nested within 1e-6; sum-invariance bound held; %d dominance corners within 1e-9",
                   dominance_checked);
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

inline CriterionResult criterion6() {
  auto t0 = std::chrono::steady_clock::now();
  CriterionResult r;
  r.id = 6;
  r.name = "deterministic-state capacity agreement";
  r.pass = true;

  // (i) Y = (X1 xor S, X2): inner-sc search vs the joint-input grid pentagon
  ChannelSpec ch = make_additive_binary_helper_channel(0.0);
  SearchConfig cfg;
  cfg.lambda_points = 17;
  cfg.card_v = 2;
  cfg.seed = 99;
  cfg.relax_constraint = true;  // the deterministic-state direct part sets V=S in the relaxed family
  RateRegion inner = compute_region(ch, BoundKind::InnerSc, cfg);
  RateRegion pent = oracle_thm4_pentagon(ch, 48, 17);
  double d1 = hull_distance(inner.hull, pent.hull);
  double d2 = hull_distance(pent.hull, inner.hull);
  if (d1 > 1e-3 || d2 > 1e-3) {
    r.pass = false;
    r.detail += fmt("[det-state hulls differ: %.2e / %.2e] ", d1, d2);
  }

  // (ii) fading-binary channel: helper-capacity search vs the closed form
  for (double p : {0.1, 0.25}) {
    ChannelSpec ch6 = make_fading_binary_channel(p);
    SearchConfig cfg6;
    cfg6.seed = 17;
    auto [law, corner] = ascend_law(ch6, BoundKind::ProductInput, cfg6, 0xE6,
                                    [](const CornerEvaluation& c) { return c.r1_cap; });
    double want = oracle_example6(p);
    if (std::abs(corner.r1_cap - want) > 1e-3) {
      r.pass = false;
      r.detail += fmt("[fading-binary p=%.2f: got %.6f want %.6f] ", p, corner.r1_cap, want);
    }
  }
  if (r.pass) r.detail = "det-state hulls within 1e-3; fading-binary search matches min{h2(q1),g(p,q2)-h2(p)}";
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

inline CriterionResult criterion7() {
  auto t0 = std::chrono::steady_clock::now();
  CriterionResult r;
  r.id = 7;
  r.name = "Gaussian closed forms";
  r.pass = true;

  GaussianParams g{0.5, 0.5, 1.0, 0.5, 0.0};
  GaussianResult gs = gaussian_capacity("example4", g);
  double grid_best = -1.0;
  for (int i = 0; i <= 1000000; ++i)
    grid_best = std::max(grid_best, theta(0.5, 0.5, static_cast<double>(i) / 1000000.0, 1.0, 0.5));
  if (std::abs(gs.value - grid_best) > 1e-8) {
    r.pass = false;
    r.detail += fmt("[example4 golden-section %.12f vs grid %.12f] ", gs.value, grid_best);
  }

  // monotonicity grids: nondecreasing in P1, P2; nonincreasing in Q
  const double p_grid[] = {0.0, 0.5, 1.0, 2.0};
  const double q_grid[] = {0.5, 1.0, 2.0};
  for (const char* model : {"remark5", "remark7", "example5"}) {
    for (double q : q_grid)
      for (double n : {0.25, 1.0})
        for (std::size_t i = 0; i + 1 < 4; ++i)
          for (double other : {0.0, 1.0}) {
            auto v = [&](double p1, double p2, double qq) {
              return gaussian_capacity(model, {p1, p2, qq, n, 0.0}).value;
            };
            if (v(p_grid[i + 1], other, q) < v(p_grid[i], other, q) - 1e-12 ||
                v(other, p_grid[i + 1], q) < v(other, p_grid[i], q) - 1e-12) {
              r.pass = false;
              r.detail += fmt("[%s not monotone in powers] ", model);
            }
          }
    for (double p1 : {0.5, 1.0})
      for (std::size_t i = 0; i + 1 < 3; ++i)
        if (gaussian_capacity(model, {p1, 0.5, q_grid[i + 1], 0.5, 0.0}).value >
            gaussian_capacity(model, {p1, 0.5, q_grid[i], 0.5, 0.0}).value + 1e-12) {
          r.pass = false;
          r.detail += fmt("[%s not monotone in Q] ", model);
        }
  }

  // maximizing over [-1,1] equals maximizing over [0,1]
  for (double p1 : {0.25, 0.5, 1.0})
    for (double p2 : {0.25, 0.5})
      for (double q : {0.5, 1.0})
        for (double n : {0.25, 0.5}) {
          double best_full = -1.0, best_at = 0.0;
          for (int i = 0; i <= 20000; ++i) {
            double rho = -1.0 + 2.0 * i / 20000.0;
            double v = theta(p1, p2, rho, q, n);
            if (v > best_full) {
              best_full = v;
              best_at = rho;
            }
          }
          auto ref = golden_section_max(
              [&](double rho) { return theta(p1, p2, rho, q, n); },
              std::max(-1.0, best_at - 1e-4), std::min(1.0, best_at + 1e-4));
          best_full = std::max(best_full, ref.value);
          double best_half = golden_section_max(
                                 [&](double rho) { return theta(p1, p2, rho, q, n); }, 0.0, 1.0)
                                 .value;
          if (std::abs(best_full - best_half) > 1e-10) {
            r.pass = false;
            r.detail += fmt("[rho interval mismatch at P1=%.2f P2=%.2f Q=%.2f N=%.2f: %.2e] ", p1,
                            p2, q, n, std::abs(best_full - best_half));
          }
        }
  if (r.pass) r.detail = "example4 grid agreement <=1e-8; monotonicity grids ok; rho-interval equality <=1e-10";
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

inline CriterionResult criterion8() {
  auto t0 = std::chrono::steady_clock::now();
  CriterionResult r;
  r.id = 8;
  r.name = "block-Markov simulator trend (additive-binary-helper, p=0.1)";
  // Operating point: the input-constrained branch of the closed-form capacity at
  // q1 = 0.0375 (the unconstrained point has I(V;Y|X2) = 0, i.e. no Wyner-Ziv
  // margin to simulate at any finite n; this cap also pins M1 = 2 across the
  // three block lengths so message-count granularity cannot mask the trend).
  // V = S law, X2 uniform.
  const double q1 = 0.0375;
  ChannelSpec ch = make_additive_binary_helper_channel(0.1);
  FactoredLaw law = inner_v_eq_s_law(ch, q1);
  double cap = oracle_example3(0.1, q1);

  SimConfig cfg;
  cfg.blocks = 4;
  cfg.trials = 500;
  cfg.seed = 20250808;
  cfg.epsilon = 0.45;
  cfg.t_rate = 0.75;  // cell rate backed off from I(X2;Y)=1 for finite n

  std::vector<double> errs;
  for (int n : {6, 10, 14}) {
    cfg.n = n;
    SimResult res = run_block_markov(ch, {0.0, 0.8 * cap}, law, cfg);
    errs.push_back(res.err);
  }
  cfg.n = 14;
  SimResult above = run_block_markov(ch, {0.0, 1.2 * cap}, law, cfg);

  bool trend = errs[0] > errs[1] && errs[1] > errs[2];
  bool hard = above.err > 0.5;
  r.pass = trend && hard;
  r.detail = fmt("q1-cap=%.3f C=%.4f; inside err(n=6,10,14)=(%.3f,%.3f,%.3f) strictly "
                 "decreasing=%s; above-capacity err(n=14)=%.3f>0.5=%s",
                 q1, cap, errs[0], errs[1], errs[2], trend ? "yes" : "NO", above.err,
                 hard ? "yes" : "NO");
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

inline CriterionResult criterion9() {
  auto t0 = std::chrono::steady_clock::now();
  CriterionResult r;
  r.id = 9;
  r.name = "causal reduction on a no-state channel";
  ChannelSpec ch = make_clean_adder_channel();
  SearchConfig cfg;
  cfg.lambda_points = 17;
  cfg.seed = 5;
  RateRegion nostate = compute_region(ch, BoundKind::NoState, cfg);
  // seed the causal search with the no-state witnesses as identity strategies
  std::vector<FactoredLaw> seeds;
  for (const auto& w : nostate.witnesses) {
    FactoredLaw c = lawspace::blank_law(ch, BoundKind::Causal, ch.nx2, ch.nx1);
    c.p_v = w.law.p_x2;
    c.p_u_g_v = w.law.p_x1_g_x2;
    for (int v = 0; v < c.card_v; ++v)
      for (int s = 0; s < ch.ns; ++s)
        lawspace::set_delta(c.p_x2_g_vs.data() + (v * ch.ns + s) * ch.nx2, ch.nx2, v);
    for (int s = 0; s < ch.ns; ++s)
      for (int v = 0; v < c.card_v; ++v)
        for (int u = 0; u < c.card_u; ++u)
          lawspace::set_delta(c.p_x1_g_svu.data() + ((s * c.card_v + v) * c.card_u + u) * ch.nx1,
                              ch.nx1, u);
    seeds.push_back(std::move(c));
  }
  RateRegion causal = compute_region(ch, BoundKind::Causal, cfg, RegionMode::PentagonUnion, seeds);
  double d1 = hull_distance(causal.hull, nostate.hull);
  double d2 = hull_distance(nostate.hull, causal.hull);
  r.pass = d1 <= 1e-3 && d2 <= 1e-3;
  r.detail = fmt("hull distances causal->nostate %.2e, nostate->causal %.2e (tol 1e-3)", d1, d2);
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

}  // namespace acceptance

inline std::vector<CriterionResult> run_acceptance(std::ostream& out) {
  using namespace acceptance;
  std::vector<CriterionResult> results;
  CriterionResult (*criteria[])() = {criterion1, criterion2, criterion3, criterion4, criterion5,
                                     criterion6, criterion7, criterion8, criterion9};
  for (auto* fn : criteria) {
    CriterionResult res = fn();
    out << (res.pass ? "[PASS] " : "[FAIL] ") << "C" << res.id << " " << res.name << " -- "
        << res.detail << " (" << acceptance::fmt("%.1f", res.seconds) << "s)\n";
    out.flush();
    results.push_back(std::move(res));
  }
  return results;
}

}  // namespace macregions
