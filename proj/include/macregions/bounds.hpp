#pragma once

// Per-distribution corner evaluators for every rate region in scope:
// strictly-causal inner/outer bounds, the joint-input outer bound, the
// asymmetric inner bound, the informed-helper capacity, the causal capacity
// region and the no-state / independent-states baselines.

#include <optional>
#include <vector>

#include "macregions/channel.hpp"
#include "macregions/prob.hpp"

namespace macregions {

// The per-distribution corner {R1 <= r1_cap, Rc+R1 <= sum_cap, Rc,R1 >= 0}.
// `feasible` means the corner is a nonempty member of the bound: the
// decodability constraint (when the bound has one) is satisfied and the caps
// are nonnegative up to round-off.
struct CornerEvaluation {
  double r1_cap = 0.0;
  double sum_cap = 0.0;
  std::optional<double> r1_cap_alt;       // second R1 cap (asym-inner only)
  std::optional<double> constraint_slack; // decodability constraint value
  bool feasible = true;

  double effective_r1_cap() const {
    return r1_cap_alt ? std::min(r1_cap, *r1_cap_alt) : r1_cap;
  }
};

namespace detail {
constexpr double kFeasTol = 1e-9;

inline bool corner_feasible(const CornerEvaluation& c) {
  if (c.constraint_slack && *c.constraint_slack < -kFeasTol) return false;
  if (c.sum_cap < -kFeasTol) return false;
  if (c.effective_r1_cap() < -kFeasTol) return false;
  return true;
}
}  // namespace detail

// Strictly-causal inner-bound corner; relax_constraint evaluates the
// no-binning variant (the constraint is dropped, not just ignored: slack is
// reported as absent).
inline CornerEvaluation eval_inner_sc(const ChannelSpec& ch, const FactoredLaw& law,
                                      bool relax_constraint = false, bool allow_large_v = false) {
  if (law.kind != BoundKind::InnerSc) throw validation_error("eval_inner_sc: wrong bound_kind");
  JointPmf j = assemble_joint(ch, law, allow_large_v);
  // one tensor pass for every entropy the three expressions need
  auto h = j.entropies({{"V", "X1", "X2"},           // 0
                        {"V", "X2", "Y"},            // 1
                        {"V", "X1", "X2", "Y"},      // 2
                        {"V", "X2"},                 // 3
                        {"Y"},                       // 4
                        {"S"},                       // 5
                        {"S", "V", "X1", "X2"},      // 6
                        {"S", "V", "X2"}});          // 7
  CornerEvaluation c;
  c.r1_cap = std::max(0.0, h[0] + h[1] - h[2] - h[3]);
  c.sum_cap = (h[0] + h[4] - h[2]) - (h[0] + h[5] - h[6]);
  if (!relax_constraint) c.constraint_slack = (h[3] + h[4] - h[1]) - (h[3] + h[5] - h[7]);
  c.feasible = detail::corner_feasible(c);
  return c;
}

// Strictly-causal outer-bound corner; a law carrying the optional U factor
// evaluates the two-auxiliary expressions instead.
inline CornerEvaluation eval_outer_sc(const ChannelSpec& ch, const FactoredLaw& law,
                                      bool allow_large_v = false) {
  if (law.kind != BoundKind::OuterSc) throw validation_error("eval_outer_sc: wrong bound_kind");
  JointPmf j = assemble_joint(ch, law, allow_large_v);
  CornerEvaluation c;
  if (law.has_u()) {
    c.r1_cap = j.cond_mutual_info({"U", "X1"}, {"Y"}, {"V", "X2"}) -
               j.cond_mutual_info({"U", "X1"}, {"S"}, {"V", "X2"});
    c.sum_cap = j.cond_mutual_info({"U", "V", "X1", "X2"}, {"Y"}) -
                j.cond_mutual_info({"U", "V", "X1", "X2"}, {"S"});
    c.constraint_slack = j.cond_mutual_info({"V", "X2"}, {"Y"}) - j.cond_mutual_info({"V", "X2"}, {"S"});
    c.feasible = detail::corner_feasible(c);
    return c;
  }
  auto h = j.entropies({{"V", "X1", "X2"},       // 0
                        {"V", "X2", "Y"},        // 1
                        {"V", "X1", "X2", "Y"},  // 2
                        {"V", "X2"},             // 3
                        {"Y"},                   // 4
                        {"S"},                   // 5
                        {"S", "V", "X1", "X2"},  // 6
                        {"S", "V", "X2"}});      // 7
  c.r1_cap = std::max(0.0, h[0] + h[1] - h[2] - h[3]);
  c.sum_cap = (h[0] + h[4] - h[2]) - (h[0] + h[5] - h[6]);
  c.constraint_slack = (h[3] + h[4] - h[1]) - (h[3] + h[5] - h[7]);
  c.feasible = detail::corner_feasible(c);
  return c;
}

// Joint-input outer corner over an arbitrary input law.
inline CornerEvaluation eval_prop1(const ChannelSpec& ch, const FactoredLaw& law) {
  if (law.kind != BoundKind::JointInput) throw validation_error("eval_prop1: wrong bound_kind");
  JointPmf j = assemble_joint(ch, law);
  CornerEvaluation c;
  c.r1_cap = j.cond_mutual_info({"X1"}, {"Y"}, {"X2", "S"});
  c.sum_cap = j.cond_mutual_info({"X1", "X2"}, {"Y"});
  c.feasible = detail::corner_feasible(c);
  return c;
}

// One-sided-CSI inner corner: two R1 caps (their min binds) plus the sum cap.
inline CornerEvaluation eval_asym_inner(const ChannelSpec& ch, const FactoredLaw& law) {
  if (law.kind != BoundKind::AsymInner) throw validation_error("eval_asym_inner: wrong bound_kind");
  JointPmf j = assemble_joint(ch, law);
  double wz = j.cond_mutual_info({"V"}, {"S"}, {"U", "X2"});
  CornerEvaluation c;
  c.r1_cap = j.cond_mutual_info({"X1"}, {"Y"}, {"U", "V", "X2"});
  c.r1_cap_alt = j.cond_mutual_info({"V", "X1", "X2"}, {"Y"}, {"U"}) - wz;
  c.sum_cap = j.cond_mutual_info({"U", "V", "X1", "X2"}, {"Y"}) - wz;
  c.feasible = detail::corner_feasible(c);
  return c;
}

// Informed helper: min{I(X1;Y|S,X2), I(X1,X2;Y)} for product inputs. The value is the
// capacity only on the deterministic-state class; elsewhere it is still an
// achievable rate, flagged via `capacity_interpretation`.
struct HelperValue {
  double value = 0.0;
  bool capacity_interpretation = true;
};

inline HelperValue eval_helper_capacity(const ChannelSpec& ch, const FactoredLaw& law) {
  if (law.kind != BoundKind::ProductInput) throw validation_error("eval_helper_capacity: wrong bound_kind");
  JointPmf j = assemble_joint(ch, law);
  HelperValue h;
  h.value = std::min(j.cond_mutual_info({"X1"}, {"Y"}, {"S", "X2"}),
                     j.cond_mutual_info({"X1", "X2"}, {"Y"}));
  h.capacity_interpretation = is_state_deterministic(ch);
  return h;
}

// Causal-CSI corner over strategy-letter distributions.
inline CornerEvaluation eval_causal(const ChannelSpec& ch, const FactoredLaw& law) {
  if (law.kind != BoundKind::Causal) throw validation_error("eval_causal: wrong bound_kind");
  JointPmf j = assemble_joint(ch, law);
  CornerEvaluation c;
  c.r1_cap = j.cond_mutual_info({"U"}, {"Y"}, {"V"});
  c.sum_cap = j.cond_mutual_info({"U", "V"}, {"Y"});
  c.feasible = detail::corner_feasible(c);
  return c;
}

// No-CSI baseline: the classical degraded-message-set pentagon.
inline CornerEvaluation eval_nostate(const ChannelSpec& ch, const FactoredLaw& law) {
  if (law.kind != BoundKind::NoState) throw validation_error("eval_nostate: wrong bound_kind");
  JointPmf j = assemble_joint(ch, law);
  CornerEvaluation c;
  c.r1_cap = j.cond_mutual_info({"X1"}, {"Y"}, {"X2"});
  c.sum_cap = j.cond_mutual_info({"X1", "X2"}, {"Y"});
  c.feasible = detail::corner_feasible(c);
  return c;
}

// Independent states, independent messages; three caps.
struct ThreeCaps {
  double r1_cap = 0.0;
  double r2_cap = 0.0;
  double sum_cap = 0.0;
};

inline ThreeCaps eval_indep_states(const TwoStateChannel& ch, const std::vector<double>& p_x1,
                                   const std::vector<double>& p_x2) {
  ch.validate();
  detail::check_rows(p_x1, 1, ch.nx1, "P_X1");
  detail::check_rows(p_x2, 1, ch.nx2, "P_X2");
  JointPmf j = JointPmf::zeros({{"S1", ch.ns1}, {"S2", ch.ns2}, {"X1", ch.nx1}, {"X2", ch.nx2}, {"Y", ch.ny}});
  auto& v = j.values();
  std::size_t f = 0;
  for (int s1 = 0; s1 < ch.ns1; ++s1)
    for (int s2 = 0; s2 < ch.ns2; ++s2)
      for (int x1 = 0; x1 < ch.nx1; ++x1)
        for (int x2 = 0; x2 < ch.nx2; ++x2) {
          double base = ch.qs1[static_cast<std::size_t>(s1)] * ch.qs2[static_cast<std::size_t>(s2)] *
                        p_x1[static_cast<std::size_t>(x1)] * p_x2[static_cast<std::size_t>(x2)];
          for (int y = 0; y < ch.ny; ++y) v[f++] = base * ch.wat(s1, s2, x1, x2, y);
        }
  j.validate();
  ThreeCaps caps;
  caps.r1_cap = j.cond_mutual_info({"X1"}, {"Y"}, {"X2", "S2"});
  caps.r2_cap = j.cond_mutual_info({"X2"}, {"Y"}, {"X1", "S1"});
  caps.sum_cap = j.cond_mutual_info({"X1", "X2"}, {"Y"});
  return caps;
}

// g(p,q2) of the fading-binary channel: the entropy of X2+Z over {+2,0,-2}.
inline double example6_g(double p, double q2) {
  double a = p * q2;                    // Pr{X2+Z = +2}
  double b = (1.0 - p) * (1.0 - q2);    // Pr{X2+Z = -2}
  double c = binary_convolve(p, q2);    // Pr{X2+Z = 0}
  return -xlog2x(a) - xlog2x(b) - xlog2x(c);
}

}  // namespace macregions
