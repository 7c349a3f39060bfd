#include <doctest.h>

#include <cmath>

#include "macregions/bounds.hpp"
#include "macregions/search.hpp"

using namespace macregions;

namespace {

// Helper-channel law with V = S, X1 ~ Bernoulli(q1) independent of X2 uniform.
FactoredLaw helper_v_eq_s(const ChannelSpec& ch, double q1) {
  FactoredLaw law = lawspace::blank_law(ch, BoundKind::InnerSc, ch.ns, 1);
  for (int x2 = 0; x2 < ch.nx2; ++x2) {
    law.p_x2[static_cast<std::size_t>(x2)] = 1.0 / ch.nx2;
    law.p_x1_g_x2[static_cast<std::size_t>(x2 * 2)] = 1.0 - q1;
    law.p_x1_g_x2[static_cast<std::size_t>(x2 * 2 + 1)] = q1;
  }
  for (int s = 0; s < ch.ns; ++s)
    for (int x2 = 0; x2 < ch.nx2; ++x2)
      law.p_v_g_sx2[static_cast<std::size_t>((s * ch.nx2 + x2) * ch.ns + s)] = 1.0;
  return law;
}

FactoredLaw selector_witness(const ChannelSpec& ch) {
  FactoredLaw law = lawspace::blank_law(ch, BoundKind::OuterSc, 2, 1);
  law.p_x2 = {0.5, 0.5};
  law.p_x1_g_x2 = {0.5, 0.5, 0.5, 0.5};
  for (int s = 0; s < 4; ++s)
    for (int x1 = 0; x1 < 2; ++x1)
      for (int x2 = 0; x2 < 2; ++x2) {
        int v = (x1 == x2) ? (s >> 1) : (s & 1);
        law.p_v_g_sx1x2[static_cast<std::size_t>(((s * 2 + x1) * 2 + x2) * 2 + v)] = 1.0;
      }
  return law;
}

}  // namespace

TEST_SUITE("bounds") {
  TEST_CASE("inner-sc with constant V on a stateless channel") {
    ChannelSpec ch = make_clean_adder_channel();
    FactoredLaw law = lawspace::uniform_law(ch, BoundKind::InnerSc, 1, 1);
    CornerEvaluation c = eval_inner_sc(ch, law);
    JointPmf j = assemble_joint(ch, law);
    CHECK(c.sum_cap == doctest::Approx(j.cond_mutual_info({"X1", "X2"}, {"Y"})).epsilon(1e-12));
    CHECK(c.feasible);
  }

  TEST_CASE("inner-sc helper-channel corner matches the closed-form chain") {
    ChannelSpec ch = make_additive_binary_helper_channel(0.1);
    FactoredLaw law = helper_v_eq_s(ch, 0.3);
    CornerEvaluation c = eval_inner_sc(ch, law);
    JointPmf j = assemble_joint(ch, law);
    // r1 = I(X1;Y1|S) = h2(p*q1) - h2(p)
    CHECK(c.r1_cap ==
          doctest::Approx(binary_entropy(binary_convolve(0.1, 0.3)) - binary_entropy(0.1)).epsilon(1e-9));
    // slack = I(S;Y1|X2) + H(X2) - H(S) = I(S;Y) with uniform X2
    double expect = j.cond_mutual_info({"S"}, {"Y"}, {"X2"}) + j.entropy({"X2"}) - j.entropy({"S"});
    CHECK(c.constraint_slack.value() == doctest::Approx(expect).epsilon(1e-9));
    CHECK(c.constraint_slack.value() >= -1e-12);
  }

  TEST_CASE("outer-sc selector-channel witness corner") {
    ChannelSpec ch = make_mod2_selector_channel();
    CornerEvaluation c = eval_outer_sc(ch, selector_witness(ch));
    CHECK(c.r1_cap == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(c.sum_cap == doctest::Approx(1.5).epsilon(1e-9));
    // H(S|X2,V) = 1/2 + 2p(1-p), p = h2^{-1}(1/2)
    double p = inverse_binary_entropy(0.5);
    CHECK(c.constraint_slack.value() == doctest::Approx(0.5 + 2.0 * p * (1.0 - p)).epsilon(1e-9));
    CHECK(c.feasible);
  }

  TEST_CASE("prop1 corners on the switch channel") {
    ChannelSpec ch = make_switch_channel();
    // independent uniform inputs: enumerate the 16-cell joint directly
    FactoredLaw indep = lawspace::uniform_law(ch, BoundKind::JointInput, 1, 1);
    CornerEvaluation c = eval_prop1(ch, indep);
    CHECK(c.r1_cap == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(c.sum_cap == doctest::Approx(0.5).epsilon(1e-9));

    FactoredLaw diag = lawspace::blank_law(ch, BoundKind::JointInput, 1, 1);
    diag.p_x1x2 = {0.5, 0.0, 0.0, 0.5};  // X1 = X2 uniform
    c = eval_prop1(ch, diag);
    CHECK(c.r1_cap == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(c.sum_cap == doctest::Approx(1.0).epsilon(1e-9));
  }

  TEST_CASE("prop1 reduces to I(X1;Y|X2) without states") {
    ChannelSpec ch = make_clean_adder_channel();
    FactoredLaw law = lawspace::uniform_law(ch, BoundKind::JointInput, 1, 1);
    CornerEvaluation c = eval_prop1(ch, law);
    JointPmf j = assemble_joint(ch, law);
    CHECK(c.r1_cap == doctest::Approx(j.cond_mutual_info({"X1"}, {"Y"}, {"X2"})).epsilon(1e-12));
  }

  TEST_CASE("asym-inner degenerate auxiliaries reduce to the product-input pentagon") {
    ChannelSpec ch = make_additive_binary_helper_channel(0.15);
    FactoredLaw law = lawspace::uniform_law(ch, BoundKind::AsymInner, 1, 1);
    CornerEvaluation c = eval_asym_inner(ch, law);
    JointPmf j = assemble_joint(ch, law);
    CHECK(c.r1_cap == doctest::Approx(j.cond_mutual_info({"X1"}, {"Y"}, {"X2"})).epsilon(1e-9));
    CHECK(c.r1_cap_alt.value() == doctest::Approx(j.cond_mutual_info({"X1", "X2"}, {"Y"})).epsilon(1e-9));
    CHECK(c.sum_cap == doctest::Approx(j.cond_mutual_info({"X1", "X2"}, {"Y"})).epsilon(1e-9));
  }

  TEST_CASE("asym-inner V=S on a deterministic-state channel recovers I(X1,X2;Y)") {
    ChannelSpec ch = make_additive_binary_helper_channel(0.0);
    REQUIRE(is_state_deterministic(ch));
    FactoredLaw law = lawspace::uniform_law(ch, BoundKind::AsymInner, ch.ns, 1);
    std::fill(law.p_v_g_sux2.begin(), law.p_v_g_sux2.end(), 0.0);
    for (int s = 0; s < ch.ns; ++s)
      for (int u = 0; u < law.card_u; ++u)
        for (int x2 = 0; x2 < ch.nx2; ++x2)
          law.p_v_g_sux2[static_cast<std::size_t>(((s * law.card_u + u) * ch.nx2 + x2) * ch.ns + s)] = 1.0;
    CornerEvaluation c = eval_asym_inner(ch, law);
    JointPmf j = assemble_joint(ch, law);
    CHECK(c.sum_cap == doctest::Approx(j.cond_mutual_info({"X1", "X2"}, {"Y"})).epsilon(1e-9));
  }

  TEST_CASE("asym-inner second cap recomputed from entropies") {
    ChannelSpec ch = make_switch_channel();
    Rng rng(8);
    FactoredLaw law = lawspace::uniform_law(ch, BoundKind::AsymInner, 2, 2);
    lawspace::randomize(law, ch, rng);
    CornerEvaluation c = eval_asym_inner(ch, law);
    JointPmf j = assemble_joint(ch, law);
    double two_way = (j.entropy({"V", "X1", "X2", "U"}) + j.entropy({"Y", "U"}) -
                      j.entropy({"V", "X1", "X2", "U", "Y"}) - j.entropy({"U"})) -
                     j.cond_mutual_info({"V"}, {"S"}, {"U", "X2"});
    CHECK(c.r1_cap_alt.value() == doctest::Approx(two_way).epsilon(1e-9));
  }

  TEST_CASE("helper capacity on the fading-binary channel matches the closed form") {
    for (double p : {0.0, 0.1, 0.25}) {
      ChannelSpec ch = make_fading_binary_channel(p);
      for (double q1 : {0.3, 0.5})
        for (double q2 : {0.4, 0.5}) {
          FactoredLaw law = lawspace::blank_law(ch, BoundKind::ProductInput, 1, 1);
          law.p_x1 = {q1, 1.0 - q1};  // index 0 is +1
          law.p_x2 = {q2, 1.0 - q2};
          HelperValue h = eval_helper_capacity(ch, law);
          double expect = std::min(binary_entropy(q1), example6_g(p, q2) - binary_entropy(p));
          CHECK(h.value == doctest::Approx(expect).epsilon(1e-9));
          CHECK(h.capacity_interpretation);
        }
    }
    // q1 = 1/2, p = 0, q2 = 1/2: min{1, g(0,1/2)} = 1
    ChannelSpec ch = make_fading_binary_channel(0.0);
    FactoredLaw law = lawspace::uniform_law(ch, BoundKind::ProductInput, 1, 1);
    CHECK(eval_helper_capacity(ch, law).value == doctest::Approx(1.0).epsilon(1e-9));
    // degenerate X1 carries nothing
    law.p_x1 = {1.0, 0.0};
    CHECK(eval_helper_capacity(ch, law).value == doctest::Approx(0.0).epsilon(1e-9));
    // non-deterministic state loses the capacity interpretation
    FactoredLaw sw_law = lawspace::uniform_law(make_switch_channel(), BoundKind::ProductInput, 1, 1);
    CHECK_FALSE(eval_helper_capacity(make_switch_channel(), sw_law).capacity_interpretation);
  }

  TEST_CASE("causal evaluator") {
    ChannelSpec ch = make_clean_adder_channel();
    // identity strategies: V indexes X2, U indexes X1
    FactoredLaw law = lawspace::blank_law(ch, BoundKind::Causal, ch.nx2, ch.nx1);
    law.p_v = {0.5, 0.5};
    law.p_u_g_v = {0.5, 0.5, 0.5, 0.5};
    for (int v = 0; v < 2; ++v)
      for (int s = 0; s < ch.ns; ++s)
        lawspace::set_delta(law.p_x2_g_vs.data() + (v * ch.ns + s) * ch.nx2, ch.nx2, v);
    for (int s = 0; s < ch.ns; ++s)
      for (int v = 0; v < 2; ++v)
        for (int u = 0; u < 2; ++u)
          lawspace::set_delta(law.p_x1_g_svu.data() + ((s * 2 + v) * 2 + u) * ch.nx1, ch.nx1, u);
    CornerEvaluation c = eval_causal(ch, law);
    FactoredLaw ns = lawspace::uniform_law(ch, BoundKind::NoState, 1, 1);
    CornerEvaluation cn = eval_nostate(ch, ns);
    CHECK(c.r1_cap == doctest::Approx(cn.r1_cap).epsilon(1e-9));
    CHECK(c.sum_cap == doctest::Approx(cn.sum_cap).epsilon(1e-9));
  }

  TEST_CASE("causal with constant V and U = X1 gives I(X1;Y)") {
    ChannelSpec ch = make_clean_adder_channel();
    FactoredLaw law = lawspace::blank_law(ch, BoundKind::Causal, 1, ch.nx1);
    law.p_v = {1.0};
    law.p_u_g_v = {0.5, 0.5};
    for (int s = 0; s < ch.ns; ++s)
      lawspace::set_delta(law.p_x2_g_vs.data() + (0 * ch.ns + s) * ch.nx2, ch.nx2, 0);  // X2 fixed
    for (int s = 0; s < ch.ns; ++s)
      for (int u = 0; u < 2; ++u)
        lawspace::set_delta(law.p_x1_g_svu.data() + ((s * 1 + 0) * 2 + u) * ch.nx1, ch.nx1, u);
    CornerEvaluation c = eval_causal(ch, law);
    JointPmf j = assemble_joint(ch, law);
    CHECK(c.r1_cap == doctest::Approx(j.cond_mutual_info({"X1"}, {"Y"})).epsilon(1e-9));
  }

  TEST_CASE("causal Shannon strategies cancel the state on the clean helper channel") {
    // strategy alphabets exhaust the maps S -> letter at |V|=|X2|^|S|,
    // |U|=|X1|^|S|; the best letter distribution over them is searched on a
    // coarse grid of supports
    ChannelSpec ch = make_additive_binary_helper_channel(0.0);
    int card_v = 4, card_u = 4;
    FactoredLaw base = lawspace::blank_law(ch, BoundKind::Causal, card_v, card_u);
    // v encodes (x2 at s=0, x2 at s=1); u encodes (x1 at s=0, x1 at s=1)
    for (int v = 0; v < card_v; ++v)
      for (int s = 0; s < ch.ns; ++s) {
        int map = v;
        for (int k = 0; k < s; ++k) map /= ch.nx2;
        lawspace::set_delta(base.p_x2_g_vs.data() + (v * ch.ns + s) * ch.nx2, ch.nx2, map % ch.nx2);
      }
    for (int s = 0; s < ch.ns; ++s)
      for (int v = 0; v < card_v; ++v)
        for (int u = 0; u < card_u; ++u) {
          int map = u;
          for (int k = 0; k < s; ++k) map /= ch.nx1;
          lawspace::set_delta(base.p_x1_g_svu.data() + ((s * card_v + v) * card_u + u) * ch.nx1,
                              ch.nx1, map % ch.nx1);
        }
    double best_sum = 0.0;
    // scan uniform distributions over every subset of the strategy letters
    for (int vmask = 1; vmask < 16; ++vmask)
      for (int umask = 1; umask < 16; ++umask) {
        FactoredLaw law = base;
        int vn = __builtin_popcount(static_cast<unsigned>(vmask));
        int un = __builtin_popcount(static_cast<unsigned>(umask));
        for (int v = 0; v < 4; ++v)
          law.p_v[static_cast<std::size_t>(v)] = (vmask >> v) & 1 ? 1.0 / vn : 0.0;
        for (int v = 0; v < 4; ++v)
          for (int u = 0; u < 4; ++u)
            law.p_u_g_v[static_cast<std::size_t>(v * 4 + u)] = (umask >> u) & 1 ? 1.0 / un : 0.0;
        best_sum = std::max(best_sum, eval_causal(ch, law).sum_cap);
      }
    // x1 = u xor s turns Y1 into a clean bit, Y2 = X2 is another: 2 bits total
    CHECK(best_sum == doctest::Approx(2.0).epsilon(1e-9));
  }

  TEST_CASE("nostate pentagon on the clean adder") {
    ChannelSpec ch = make_clean_adder_channel();
    FactoredLaw law = lawspace::uniform_law(ch, BoundKind::NoState, 1, 1);
    CornerEvaluation c = eval_nostate(ch, law);
    CHECK(c.r1_cap == doctest::Approx(1.0).epsilon(1e-9));        // I(X1;Y|X2) = H(X1)
    CHECK(c.sum_cap == doctest::Approx(1.5).epsilon(1e-9));       // H(Y) at uniform inputs
  }

  TEST_CASE("independent-states caps") {
    // two-state wrapper around the additive helper: S2 degenerate
    ChannelSpec base = make_additive_binary_helper_channel(0.1);
    TwoStateChannel ch2;
    ch2.ns1 = base.ns;
    ch2.ns2 = 1;
    ch2.nx1 = base.nx1;
    ch2.nx2 = base.nx2;
    ch2.ny = base.ny;
    ch2.qs1 = base.qs;
    ch2.qs2 = {1.0};
    ch2.w = base.w;
    ThreeCaps caps = eval_indep_states(ch2, {0.5, 0.5}, {0.5, 0.5});
    FactoredLaw ns = lawspace::uniform_law(base, BoundKind::NoState, 1, 1);
    CornerEvaluation prop4 = eval_nostate(base, ns);
    CHECK(caps.r1_cap == doctest::Approx(prop4.r1_cap).epsilon(1e-9));
    CHECK(caps.sum_cap == doctest::Approx(prop4.sum_cap).epsilon(1e-9));

    // symmetric channel: swap roles of the users and the caps coincide
    TwoStateChannel sym;
    sym.ns1 = sym.ns2 = 2;
    sym.nx1 = sym.nx2 = 2;
    sym.ny = 4;
    sym.qs1 = sym.qs2 = {0.5, 0.5};
    sym.w.assign(2u * 2 * 2 * 2 * 4, 0.0);
    for (int s1 = 0; s1 < 2; ++s1)
      for (int s2 = 0; s2 < 2; ++s2)
        for (int x1 = 0; x1 < 2; ++x1)
          for (int x2 = 0; x2 < 2; ++x2) {
            int y = 2 * (x1 ^ s1) + (x2 ^ s2);
            sym.w[static_cast<std::size_t>((((s1 * 2 + s2) * 2 + x1) * 2 + x2) * 4 + y)] = 1.0;
          }
    ThreeCaps sc = eval_indep_states(sym, {0.5, 0.5}, {0.5, 0.5});
    CHECK(sc.r1_cap == doctest::Approx(sc.r2_cap).epsilon(1e-9));
  }

  TEST_CASE("dominance: two-auxiliary corners never exceed the U-dropped corners") {
    Rng rng(17);
    for (int t = 0; t < 30; ++t) {
      ChannelSpec ch = make_random_channel(rng, 3);
      FactoredLaw law = lawspace::uniform_law(ch, BoundKind::OuterSc, 3, 2, true);
      lawspace::randomize(law, ch, rng);
      CornerEvaluation with_u = eval_outer_sc(ch, law);
      FactoredLaw dropped = law;
      dropped.p_u_g_svx1x2.clear();
      dropped.card_u = 1;
      CornerEvaluation no_u = eval_outer_sc(ch, dropped);
      CHECK(with_u.r1_cap <= no_u.r1_cap + 1e-9);
      CHECK(with_u.sum_cap <= no_u.sum_cap + 1e-9);
    }
  }

  TEST_CASE("sum-rate comparison against the induced input joint") {
    Rng rng(31);
    for (int t = 0; t < 20; ++t) {
      ChannelSpec ch = make_random_channel(rng, 3);
      FactoredLaw law = lawspace::uniform_law(ch, BoundKind::OuterSc, 3, 1);
      lawspace::randomize(law, ch, rng);
      CornerEvaluation c = eval_outer_sc(ch, law);
      CornerEvaluation p1 = eval_prop1(ch, induced_joint_input(ch, law));
      CHECK(c.sum_cap <= p1.sum_cap + 1e-9);
    }
  }

  TEST_CASE("embedding: a lifted inner-sc law evaluates identically as outer-sc") {
    Rng rng(41);
    for (int t = 0; t < 20; ++t) {
      ChannelSpec ch = make_random_channel(rng, 3);
      FactoredLaw inner = lawspace::uniform_law(ch, BoundKind::InnerSc, 3, 1);
      lawspace::randomize(inner, ch, rng);
      CornerEvaluation ci = eval_inner_sc(ch, inner);
      CornerEvaluation co = eval_outer_sc(ch, lift_inner_to_outer(ch, inner));
      CHECK(ci.r1_cap == doctest::Approx(co.r1_cap).epsilon(1e-12));
      CHECK(ci.sum_cap == doctest::Approx(co.sum_cap).epsilon(1e-12));
      CHECK(ci.constraint_slack.value() == doctest::Approx(co.constraint_slack.value()).epsilon(1e-12));
    }
  }

  TEST_CASE("caps are invariant under symbol relabeling") {
    Rng rng(53);
    ChannelSpec ch = make_random_channel(rng, 2);
    FactoredLaw law = lawspace::uniform_law(ch, BoundKind::InnerSc, 2, 1);
    lawspace::randomize(law, ch, rng);
    CornerEvaluation base = eval_inner_sc(ch, law);

    // swap the two Y symbols in the kernel
    ChannelSpec swapped = ch;
    for (int s = 0; s < ch.ns; ++s)
      for (int x1 = 0; x1 < ch.nx1; ++x1)
        for (int x2 = 0; x2 < ch.nx2; ++x2)
          std::swap(swapped.w[swapped.widx(s, x1, x2, 0)], swapped.w[swapped.widx(s, x1, x2, 1)]);
    CornerEvaluation relabeled = eval_inner_sc(swapped, law);
    CHECK(base.r1_cap == doctest::Approx(relabeled.r1_cap).epsilon(1e-12));
    CHECK(base.sum_cap == doctest::Approx(relabeled.sum_cap).epsilon(1e-12));
    CHECK(base.constraint_slack.value() ==
          doctest::Approx(relabeled.constraint_slack.value()).epsilon(1e-12));
  }
}
