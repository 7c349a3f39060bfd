#include <doctest.h>

#include "macregions/channel.hpp"
#include "macregions/io.hpp"
#include "macregions/search.hpp"

using namespace macregions;

TEST_SUITE("channel") {
  TEST_CASE("builtin constructors") {
    ChannelSpec sw = make_switch_channel();
    CHECK(sw.ns == 2);
    // Y = X_S exactly
    CHECK(sw.wat(0, 1, 0, 1) == 1.0);
    CHECK(sw.wat(1, 1, 0, 0) == 1.0);

    ChannelSpec m2 = make_mod2_selector_channel();
    double p = inverse_binary_entropy(0.5);
    // each state component is Bernoulli(p)
    double ps1 = m2.qs[2] + m2.qs[3];  // S0 = 1
    double ps1b = m2.qs[1] + m2.qs[3]; // S1 = 1
    CHECK(ps1 == doctest::Approx(p).epsilon(1e-9));
    CHECK(ps1b == doctest::Approx(p).epsilon(1e-9));
    CHECK(ps1 == doctest::Approx(0.110028).epsilon(1e-5));

    ChannelSpec clean = make_additive_binary_helper_channel(0.0);
    // p = 0: Y1 = X1 xor S noiselessly, Y2 = X2
    for (int s = 0; s < 2; ++s)
      for (int x1 = 0; x1 < 2; ++x1)
        for (int x2 = 0; x2 < 2; ++x2)
          CHECK(clean.wat(s, x1, x2, 2 * (x1 ^ s) + x2) == doctest::Approx(1.0));

    CHECK_THROWS_AS(builtin_channel("nonesuch"), validation_error);
    CHECK_THROWS_AS(builtin_channel("fading-binary"), validation_error);  // missing p
  }

  TEST_CASE("state determinism classification") {
    CHECK(is_state_deterministic(make_additive_binary_helper_channel(0.0)));
    CHECK(is_state_deterministic(make_fading_binary_channel(0.3)));
    CHECK_FALSE(is_state_deterministic(make_switch_channel()));
    CHECK_FALSE(is_state_deterministic(make_mod2_selector_channel()));
  }

  TEST_CASE("assemble_joint respects the inner-sc structure") {
    ChannelSpec ch = make_additive_binary_helper_channel(0.1);
    FactoredLaw law = lawspace::uniform_law(ch, BoundKind::InnerSc, 1, 1);
    JointPmf j = assemble_joint(ch, law);
    // |V| = 1: X1 independent of S, and (X1,X2) independent of S
    CHECK(j.cond_mutual_info({"X1"}, {"S"}) == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(j.cond_mutual_info({"X1", "X2"}, {"S"}) == doctest::Approx(0.0).epsilon(1e-9));
    // marginal on S equals Q_S
    auto qs = j.marginal_values({"S"});
    CHECK(qs[0] == doctest::Approx(ch.qs[0]).epsilon(1e-9));
    // chain-rule consistency of I(X1; V,S | X2)
    double direct = j.cond_mutual_info({"X1"}, {"V", "S"}, {"X2"});
    double chained = j.cond_mutual_info({"X1"}, {"V"}, {"X2"}) +
                     j.cond_mutual_info({"X1"}, {"S"}, {"V", "X2"});
    CHECK(direct == doctest::Approx(chained).epsilon(1e-9));
  }

  TEST_CASE("outer-sc V = S copy reveals the state") {
    ChannelSpec ch = make_switch_channel();
    FactoredLaw law = lawspace::uniform_law(ch, BoundKind::OuterSc, ch.ns, 1);
    std::fill(law.p_v_g_sx1x2.begin(), law.p_v_g_sx1x2.end(), 0.0);
    for (int s = 0; s < ch.ns; ++s)
      for (int x1 = 0; x1 < ch.nx1; ++x1)
        for (int x2 = 0; x2 < ch.nx2; ++x2)
          law.p_v_g_sx1x2[static_cast<std::size_t>(((s * ch.nx1 + x1) * ch.nx2 + x2) * ch.ns + s)] = 1.0;
    JointPmf j = assemble_joint(ch, law);
    CHECK(j.cond_mutual_info({"V"}, {"S"}, {"X1", "X2"}) ==
          doctest::Approx(j.entropy({"S"})).epsilon(1e-9));
  }

  TEST_CASE("causal laws keep (U,V) independent of S") {
    ChannelSpec ch = make_additive_binary_helper_channel(0.2);
    Rng rng(3);
    FactoredLaw law = lawspace::uniform_law(ch, BoundKind::Causal, 3, 2);
    lawspace::randomize(law, ch, rng);
    JointPmf j = assemble_joint(ch, law);
    CHECK(j.cond_mutual_info({"U", "V"}, {"S"}) == doctest::Approx(0.0).epsilon(1e-9));
  }

  TEST_CASE("law validation") {
    ChannelSpec ch = make_switch_channel();
    FactoredLaw law = lawspace::uniform_law(ch, BoundKind::InnerSc, 2, 1);
    law.p_x2[0] = 0.9;  // row no longer sums to 1
    CHECK_THROWS_AS(law.validate(ch), validation_error);

    FactoredLaw big = lawspace::uniform_law(ch, BoundKind::InnerSc, sufficient_card_v(ch) + 1, 1);
    CHECK_THROWS_AS(big.validate(ch), validation_error);
    CHECK_NOTHROW(big.validate(ch, /*allow_large_v=*/true));

    FactoredLaw wrong = lawspace::uniform_law(ch, BoundKind::JointInput, 1, 1);
    CHECK_THROWS_AS(eval_inner_sc(ch, wrong), validation_error);
  }

  TEST_CASE("channel JSON round trip") {
    ChannelSpec ch = make_mod2_selector_channel();
    json j = channel_to_json(ch);
    ChannelSpec back = channel_from_json(j);
    CHECK(back.ns == ch.ns);
    CHECK(back.ny == ch.ny);
    for (std::size_t i = 0; i < ch.w.size(); ++i) CHECK(back.w[i] == doctest::Approx(ch.w[i]));
    // malformed: kernel row broken
    j["W"][0][0][0][0] = 7.0;
    CHECK_THROWS_AS(channel_from_json(j), validation_error);
  }

  TEST_CASE("random channels validate") {
    Rng rng(99);
    for (int t = 0; t < 10; ++t) CHECK_NOTHROW(make_random_channel(rng, 3).validate());
  }
}
