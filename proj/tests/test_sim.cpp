#include <doctest.h>

#include "macregions/sim.hpp"

using namespace macregions;

namespace {

FactoredLaw v_eq_s_law(const ChannelSpec& ch, double q1) {
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

FactoredLaw identity_strategies(const ChannelSpec& ch) {
  FactoredLaw law = lawspace::blank_law(ch, BoundKind::Causal, ch.nx2, ch.nx1);
  for (int v = 0; v < law.card_v; ++v) law.p_v[static_cast<std::size_t>(v)] = 1.0 / law.card_v;
  for (int v = 0; v < law.card_v; ++v)
    for (int u = 0; u < law.card_u; ++u)
      law.p_u_g_v[static_cast<std::size_t>(v * law.card_u + u)] = 1.0 / law.card_u;
  for (int v = 0; v < law.card_v; ++v)
    for (int s = 0; s < ch.ns; ++s)
      lawspace::set_delta(law.p_x2_g_vs.data() + (v * ch.ns + s) * ch.nx2, ch.nx2, v);
  for (int s = 0; s < ch.ns; ++s)
    for (int v = 0; v < law.card_v; ++v)
      for (int u = 0; u < law.card_u; ++u)
        lawspace::set_delta(law.p_x1_g_svu.data() + ((s * law.card_v + v) * law.card_u + u) * ch.nx1,
                            ch.nx1, u);
  return law;
}

// strategies x1 = u xor s, x2 = v: the state is cancelled on the clean helper
FactoredLaw state_cancelling_strategies(const ChannelSpec& ch) {
  FactoredLaw law = identity_strategies(ch);
  for (int s = 0; s < ch.ns; ++s)
    for (int v = 0; v < law.card_v; ++v)
      for (int u = 0; u < law.card_u; ++u)
        lawspace::set_delta(law.p_x1_g_svu.data() + ((s * law.card_v + v) * law.card_u + u) * ch.nx1,
                            ch.nx1, u ^ s);
  return law;
}

}  // namespace

TEST_SUITE("sim") {
  TEST_CASE("rate (0,0) always decodes") {
    ChannelSpec ch = make_additive_binary_helper_channel(0.1);
    FactoredLaw law = v_eq_s_law(ch, 0.2);
    SimConfig cfg;
    cfg.n = 8;
    cfg.blocks = 3;
    cfg.trials = 60;
    cfg.seed = 4;
    cfg.epsilon = 0.4;
    cfg.t_rate = 0.6;
    SimResult r = run_block_markov(ch, {0.0, 0.0}, law, cfg);
    CHECK(r.errors == 0);
    CHECK(r.err == doctest::Approx(0.0));
  }

  TEST_CASE("seed determinism") {
    ChannelSpec ch = make_additive_binary_helper_channel(0.1);
    FactoredLaw law = v_eq_s_law(ch, 0.0375);
    SimConfig cfg;
    cfg.n = 10;
    cfg.blocks = 4;
    cfg.trials = 80;
    cfg.seed = 99;
    cfg.epsilon = 0.45;
    cfg.t_rate = 0.75;
    SimResult a = run_block_markov(ch, {0.0, 0.07}, law, cfg);
    SimResult b = run_block_markov(ch, {0.0, 0.07}, law, cfg);
    CHECK(a.errors == b.errors);
    CHECK(a.events == b.events);
    CHECK(a.err_lo == b.err_lo);
    CHECK(a.err_hi == b.err_hi);
  }

  TEST_CASE("error-event accounting") {
    ChannelSpec ch = make_additive_binary_helper_channel(0.1);
    FactoredLaw law = v_eq_s_law(ch, 0.0375);
    SimConfig cfg;
    cfg.n = 6;
    cfg.blocks = 4;
    cfg.trials = 120;
    cfg.seed = 31;
    cfg.epsilon = 0.45;
    cfg.t_rate = 0.75;
    SimResult r = run_block_markov(ch, {0.0, 0.09}, law, cfg);
    long tallied = 0;
    for (const auto& [k, v] : r.events) tallied += v;
    CHECK(r.errors >= 1);
    CHECK(tallied >= r.errors);
  }

  TEST_CASE("covering failures decrease with the block length") {
    ChannelSpec ch = make_additive_binary_helper_channel(0.1);
    FactoredLaw law = v_eq_s_law(ch, 0.0375);
    JointPmf joint = assemble_joint(ch, law, true);
    double that = joint.cond_mutual_info({"V"}, {"S"}, {"X2"}) + 0.1;
    long prev = -1;
    for (int n : {6, 10, 14}) {
      SimConfig cfg;
      cfg.n = n;
      cfg.blocks = 4;
      cfg.trials = 150;
      cfg.seed = 8;
      cfg.epsilon = 0.45;
      cfg.t_rate = 0.75;
      cfg.that_rate = that;
      SimResult r = run_block_markov(ch, {0.0, 0.05}, law, cfg);
      long fails = r.events.count("covering-failure") ? r.events.at("covering-failure") : 0;
      if (prev >= 0) CHECK(fails < prev);
      prev = fails;
    }
  }

  TEST_CASE("shannon strategy with trivial strategy letters only carries rate zero") {
    ChannelSpec ch = make_clean_adder_channel();
    FactoredLaw law = lawspace::blank_law(ch, BoundKind::Causal, 1, 1);
    law.p_v = {1.0};
    law.p_u_g_v = {1.0};
    lawspace::set_delta(law.p_x2_g_vs.data(), ch.nx2, 0);
    lawspace::set_delta(law.p_x1_g_svu.data(), ch.nx1, 0);
    SimConfig cfg;
    cfg.n = 12;
    cfg.trials = 60;
    cfg.seed = 12;
    cfg.epsilon = 0.4;
    SimResult zero = run_shannon_strategy(ch, {0.0, 0.0}, law, cfg);
    CHECK(zero.errors == 0);
    SimResult some = run_shannon_strategy(ch, {0.0, 0.3}, law, cfg);
    CHECK(some.err > 0.5);
  }

  TEST_CASE("shannon strategy decodes inside the pentagon on a no-state channel") {
    ChannelSpec ch = make_clean_adder_channel();
    FactoredLaw law = identity_strategies(ch);
    SimConfig cfg;
    cfg.n = 14;
    cfg.trials = 150;
    cfg.seed = 77;
    cfg.epsilon = 0.45;
    SimResult r = run_shannon_strategy(ch, {0.3, 0.3}, law, cfg);
    CHECK(r.err < 0.35);
  }

  TEST_CASE("rejects nondeterministic strategy maps") {
    ChannelSpec ch = make_clean_adder_channel();
    FactoredLaw law = identity_strategies(ch);
    law.p_x2_g_vs[0] = 0.6;
    law.p_x2_g_vs[1] = 0.4;
    SimConfig cfg;
    CHECK_THROWS_AS(run_shannon_strategy(ch, {0.1, 0.1}, law, cfg), validation_error);
  }

  TEST_CASE("cross-simulator agreement on the clean helper channel") {
    ChannelSpec ch = make_additive_binary_helper_channel(0.0);
    RatePoint rates{0.0, 0.25};
    SimConfig cfg;
    cfg.n = 12;
    cfg.blocks = 4;
    cfg.trials = 300;
    cfg.seed = 2024;
    cfg.epsilon = 0.45;
    cfg.t_rate = 0.85;
    // identity strategies carry no state information on this channel, and
    // n=12 is far below what the block-Markov chain needs at this rate: both
    // simulators must report matching (near-certain) failure
    SimResult bm = run_block_markov(ch, rates, v_eq_s_law(ch, 0.3), cfg);
    SimResult ss = run_shannon_strategy(ch, rates, identity_strategies(ch), cfg);
    CHECK(bm.err_lo <= ss.err_hi);
    CHECK(ss.err_lo <= bm.err_hi);
    // and the state-cancelling strategies restore reliability for the causal scheme
    SimResult cancel = run_shannon_strategy(ch, rates, state_cancelling_strategies(ch), cfg);
    CHECK(cancel.err < 0.05);
  }

  TEST_CASE("resource cap rejects oversized codebook scans") {
    ChannelSpec ch = make_additive_binary_helper_channel(0.1);
    FactoredLaw law = v_eq_s_law(ch, 0.3);
    SimConfig cfg;
    cfg.n = 30;
    cfg.blocks = 4;
    cfg.trials = 10;
    cfg.resource_cap = 1000;
    CHECK_THROWS_AS(run_block_markov(ch, {0.0, 0.1}, law, cfg), resource_error);
  }
}
