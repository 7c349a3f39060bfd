#pragma once

// Channel specifications, the factored auxiliary/input distribution families
// behind each bound, joint-law assembly, and the built-in example channels.

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "macregions/prob.hpp"

namespace macregions {

// State-dependent MAC: state law Q_S and kernel W(y|s,x1,x2), all finite.
struct ChannelSpec {
  int ns = 0, nx1 = 0, nx2 = 0, ny = 0;
  std::vector<double> qs;  // [s]
  std::vector<double> w;   // [s][x1][x2][y], rows over y sum to 1

  std::size_t widx(int s, int x1, int x2, int y) const {
    return static_cast<std::size_t>(((s * nx1 + x1) * nx2 + x2) * ny + y);
  }
  double wat(int s, int x1, int x2, int y) const { return w[widx(s, x1, x2, y)]; }

  void validate() const {
    if (ns <= 0 || nx1 <= 0 || nx2 <= 0 || ny <= 0)
      throw validation_error("ChannelSpec: sizes must be positive");
    if (qs.size() != static_cast<std::size_t>(ns)) throw validation_error("ChannelSpec: Q_S length mismatch");
    if (w.size() != static_cast<std::size_t>(ns) * nx1 * nx2 * ny)
      throw validation_error("ChannelSpec: W size mismatch");
    double qsum = 0.0;
    for (double q : qs) {
      if (q < 0.0) throw validation_error("ChannelSpec: negative Q_S entry");
      qsum += q;
    }
    if (std::abs(qsum - 1.0) > 1e-9) throw validation_error("ChannelSpec: Q_S does not sum to 1");
    for (int s = 0; s < ns; ++s)
      for (int x1 = 0; x1 < nx1; ++x1)
        for (int x2 = 0; x2 < nx2; ++x2) {
          double rs = 0.0;
          for (int y = 0; y < ny; ++y) {
            double p = wat(s, x1, x2, y);
            if (p < 0.0) throw validation_error("ChannelSpec: negative W entry");
            rs += p;
          }
          if (std::abs(rs - 1.0) > 1e-9) throw validation_error("ChannelSpec: W row does not sum to 1");
        }
  }
};

// Channel with two independent state components, one observed per encoder.
struct TwoStateChannel {
  int ns1 = 0, ns2 = 0, nx1 = 0, nx2 = 0, ny = 0;
  std::vector<double> qs1, qs2;
  std::vector<double> w;  // [s1][s2][x1][x2][y]

  double wat(int s1, int s2, int x1, int x2, int y) const {
    return w[static_cast<std::size_t>((((s1 * ns2 + s2) * nx1 + x1) * nx2 + x2) * ny + y)];
  }

  void validate() const {
    if (ns1 <= 0 || ns2 <= 0 || nx1 <= 0 || nx2 <= 0 || ny <= 0)
      throw validation_error("TwoStateChannel: sizes must be positive");
    auto check_q = [](const std::vector<double>& q, int n, const char* tag) {
      if (q.size() != static_cast<std::size_t>(n)) throw validation_error(std::string(tag) + ": length mismatch");
      double s = 0.0;
      for (double x : q) {
        if (x < 0.0) throw validation_error(std::string(tag) + ": negative entry");
        s += x;
      }
      if (std::abs(s - 1.0) > 1e-9) throw validation_error(std::string(tag) + ": does not sum to 1");
    };
    check_q(qs1, ns1, "Q_S1");
    check_q(qs2, ns2, "Q_S2");
    if (w.size() != static_cast<std::size_t>(ns1) * ns2 * nx1 * nx2 * ny)
      throw validation_error("TwoStateChannel: W size mismatch");
    for (std::size_t base = 0; base < w.size(); base += static_cast<std::size_t>(ny)) {
      double rs = 0.0;
      for (int y = 0; y < ny; ++y) {
        if (w[base + static_cast<std::size_t>(y)] < 0.0) throw validation_error("TwoStateChannel: negative W entry");
        rs += w[base + static_cast<std::size_t>(y)];
      }
      if (std::abs(rs - 1.0) > 1e-9) throw validation_error("TwoStateChannel: W row does not sum to 1");
    }
  }
};

enum class BoundKind {
  InnerSc,       // strictly-causal inner bound: Q_S P_X2 P_X1|X2 P_V|S,X2
  OuterSc,       // strictly-causal outer bound: Q_S P_X2 P_X1|X2 P_V|S,X1,X2 (optional U factor)
  JointInput,    // joint-input outer bound: Q_S P_X1X2
  AsymInner,     // one-sided-CSI inner bound: Q_S P_U P_X2|U P_X1|U P_V|S,U,X2
  ProductInput,  // informed-helper model: Q_S P_X1 P_X2
  Causal,        // causal-CSI strategy letters: Q_S P_V P_U|V P_X2|V,S P_X1|S,V,U
  NoState,       // no-CSI baseline: Q_S P_X2 P_X1|X2 (states ignored)
};

inline const char* bound_kind_name(BoundKind k) {
  switch (k) {
    case BoundKind::InnerSc: return "inner-sc";
    case BoundKind::OuterSc: return "outer-sc";
    case BoundKind::JointInput: return "prop1";
    case BoundKind::AsymInner: return "asym-inner";
    case BoundKind::ProductInput: return "helper";
    case BoundKind::Causal: return "causal";
    case BoundKind::NoState: return "nostate";
  }
  return "?";
}

// sufficient auxiliary cardinality for the strictly-causal bounds
inline int sufficient_card_v(const ChannelSpec& ch) { return ch.ns * ch.nx1 * ch.nx2 + 2; }

// One factored distribution from the family of a given bound. Only the
// factors relevant to `kind` are populated; every conditional row sums to 1.
struct FactoredLaw {
  BoundKind kind = BoundKind::InnerSc;
  int card_v = 1, card_u = 1;

  std::vector<double> p_x2;           // [x2]
  std::vector<double> p_x1_g_x2;      // [x2][x1]
  std::vector<double> p_v_g_sx2;      // [s][x2][v]            inner-sc
  std::vector<double> p_v_g_sx1x2;    // [s][x1][x2][v]         outer-sc
  std::vector<double> p_u_g_svx1x2;   // [s][v][x1][x2][u]      outer-sc with U
  std::vector<double> p_x1x2;         // [x1][x2]               joint-input
  std::vector<double> p_u;            // [u]                    asym-inner
  std::vector<double> p_x2_g_u;       // [u][x2]
  std::vector<double> p_x1_g_u;       // [u][x1]
  std::vector<double> p_v_g_sux2;     // [s][u][x2][v]
  std::vector<double> p_x1;           // [x1]                   product-input
  std::vector<double> p_v;            // [v]                    causal
  std::vector<double> p_u_g_v;        // [v][u]
  std::vector<double> p_x2_g_vs;      // [v][s][x2]
  std::vector<double> p_x1_g_svu;     // [s][v][u][x1]

  bool has_u() const { return !p_u_g_svx1x2.empty(); }

  void validate(const ChannelSpec& ch, bool allow_large_v = false) const;
};

namespace detail {
inline void check_rows(const std::vector<double>& t, std::size_t rows, int k, const char* tag) {
  if (t.size() != rows * static_cast<std::size_t>(k))
    throw validation_error(std::string(tag) + ": size mismatch");
  for (std::size_t r = 0; r < rows; ++r) {
    double s = 0.0;
    for (int i = 0; i < k; ++i) {
      double p = t[r * static_cast<std::size_t>(k) + static_cast<std::size_t>(i)];
      if (p < -1e-12) throw validation_error(std::string(tag) + ": negative entry");
      s += p;
    }
    if (std::abs(s - 1.0) > 1e-9) throw validation_error(std::string(tag) + ": row does not sum to 1");
  }
}
}  // namespace detail

inline void FactoredLaw::validate(const ChannelSpec& ch, bool allow_large_v) const {
  using detail::check_rows;
  auto S = static_cast<std::size_t>(ch.ns);
  auto X1 = static_cast<std::size_t>(ch.nx1);
  auto X2 = static_cast<std::size_t>(ch.nx2);
  if (card_v < 1 || card_u < 1) throw validation_error("FactoredLaw: cardinalities must be positive");
  if ((kind == BoundKind::InnerSc || kind == BoundKind::OuterSc) && !allow_large_v &&
      card_v > sufficient_card_v(ch))
    throw validation_error("FactoredLaw: |V| exceeds the |S||X1||X2|+2 bound (pass allow_large_v to override)");
  switch (kind) {
    case BoundKind::InnerSc:
      check_rows(p_x2, 1, ch.nx2, "P_X2");
      check_rows(p_x1_g_x2, X2, ch.nx1, "P_X1|X2");
      check_rows(p_v_g_sx2, S * X2, card_v, "P_V|S,X2");
      break;
    case BoundKind::OuterSc:
      check_rows(p_x2, 1, ch.nx2, "P_X2");
      check_rows(p_x1_g_x2, X2, ch.nx1, "P_X1|X2");
      check_rows(p_v_g_sx1x2, S * X1 * X2, card_v, "P_V|S,X1,X2");
      if (has_u())
        check_rows(p_u_g_svx1x2, S * static_cast<std::size_t>(card_v) * X1 * X2, card_u, "P_U|S,V,X1,X2");
      break;
    case BoundKind::JointInput:
      check_rows(p_x1x2, 1, ch.nx1 * ch.nx2, "P_X1X2");
      break;
    case BoundKind::AsymInner:
      check_rows(p_u, 1, card_u, "P_U");
      check_rows(p_x2_g_u, static_cast<std::size_t>(card_u), ch.nx2, "P_X2|U");
      check_rows(p_x1_g_u, static_cast<std::size_t>(card_u), ch.nx1, "P_X1|U");
      check_rows(p_v_g_sux2, S * static_cast<std::size_t>(card_u) * X2, card_v, "P_V|S,U,X2");
      break;
    case BoundKind::ProductInput:
      check_rows(p_x1, 1, ch.nx1, "P_X1");
      check_rows(p_x2, 1, ch.nx2, "P_X2");
      break;
    case BoundKind::Causal:
      check_rows(p_v, 1, card_v, "P_V");
      check_rows(p_u_g_v, static_cast<std::size_t>(card_v), card_u, "P_U|V");
      check_rows(p_x2_g_vs, static_cast<std::size_t>(card_v) * S, ch.nx2, "P_X2|V,S");
      check_rows(p_x1_g_svu, S * static_cast<std::size_t>(card_v) * static_cast<std::size_t>(card_u),
                 ch.nx1, "P_X1|S,V,U");
      break;
    case BoundKind::NoState:
      check_rows(p_x2, 1, ch.nx2, "P_X2");
      check_rows(p_x1_g_x2, X2, ch.nx1, "P_X1|X2");
      break;
  }
}

// Joint law over (S,[U,][V,]X1,X2,Y) for the bound's factorization; the
// Markov structure of each bound holds by construction.
inline JointPmf assemble_joint(const ChannelSpec& ch, const FactoredLaw& law,
                               bool allow_large_v = false) {
  law.validate(ch, allow_large_v);
  auto at2 = [](const std::vector<double>& t, int k, int r, int i) {
    return t[static_cast<std::size_t>(r) * static_cast<std::size_t>(k) + static_cast<std::size_t>(i)];
  };
  switch (law.kind) {
    case BoundKind::InnerSc: {
      JointPmf j = JointPmf::zeros({{"S", ch.ns}, {"V", law.card_v}, {"X1", ch.nx1}, {"X2", ch.nx2}, {"Y", ch.ny}});
      auto& v = j.values();
      std::size_t f = 0;
      for (int s = 0; s < ch.ns; ++s)
        for (int vv = 0; vv < law.card_v; ++vv)
          for (int x1 = 0; x1 < ch.nx1; ++x1)
            for (int x2 = 0; x2 < ch.nx2; ++x2) {
              double base = ch.qs[static_cast<std::size_t>(s)] * law.p_x2[static_cast<std::size_t>(x2)] *
                            at2(law.p_x1_g_x2, ch.nx1, x2, x1) *
                            at2(law.p_v_g_sx2, law.card_v, s * ch.nx2 + x2, vv);
              for (int y = 0; y < ch.ny; ++y) v[f++] = base * ch.wat(s, x1, x2, y);
            }
      j.validate();
      return j;
    }
    case BoundKind::OuterSc: {
      if (!law.has_u()) {
        JointPmf j = JointPmf::zeros({{"S", ch.ns}, {"V", law.card_v}, {"X1", ch.nx1}, {"X2", ch.nx2}, {"Y", ch.ny}});
        auto& v = j.values();
        std::size_t f = 0;
        for (int s = 0; s < ch.ns; ++s)
          for (int vv = 0; vv < law.card_v; ++vv)
            for (int x1 = 0; x1 < ch.nx1; ++x1)
              for (int x2 = 0; x2 < ch.nx2; ++x2) {
                double base = ch.qs[static_cast<std::size_t>(s)] * law.p_x2[static_cast<std::size_t>(x2)] *
                              at2(law.p_x1_g_x2, ch.nx1, x2, x1) *
                              at2(law.p_v_g_sx1x2, law.card_v, (s * ch.nx1 + x1) * ch.nx2 + x2, vv);
                for (int y = 0; y < ch.ny; ++y) v[f++] = base * ch.wat(s, x1, x2, y);
              }
        j.validate();
        return j;
      }
      JointPmf j = JointPmf::zeros({{"S", ch.ns}, {"U", law.card_u}, {"V", law.card_v},
                                    {"X1", ch.nx1}, {"X2", ch.nx2}, {"Y", ch.ny}});
      auto& v = j.values();
      std::size_t f = 0;
      for (int s = 0; s < ch.ns; ++s)
        for (int uu = 0; uu < law.card_u; ++uu)
          for (int vv = 0; vv < law.card_v; ++vv)
            for (int x1 = 0; x1 < ch.nx1; ++x1)
              for (int x2 = 0; x2 < ch.nx2; ++x2) {
                double base = ch.qs[static_cast<std::size_t>(s)] * law.p_x2[static_cast<std::size_t>(x2)] *
                              at2(law.p_x1_g_x2, ch.nx1, x2, x1) *
                              at2(law.p_v_g_sx1x2, law.card_v, (s * ch.nx1 + x1) * ch.nx2 + x2, vv) *
                              at2(law.p_u_g_svx1x2, law.card_u,
                                  ((s * law.card_v + vv) * ch.nx1 + x1) * ch.nx2 + x2, uu);
                for (int y = 0; y < ch.ny; ++y) v[f++] = base * ch.wat(s, x1, x2, y);
              }
      j.validate();
      return j;
    }
    case BoundKind::JointInput: {
      JointPmf j = JointPmf::zeros({{"S", ch.ns}, {"X1", ch.nx1}, {"X2", ch.nx2}, {"Y", ch.ny}});
      auto& v = j.values();
      std::size_t f = 0;
      for (int s = 0; s < ch.ns; ++s)
        for (int x1 = 0; x1 < ch.nx1; ++x1)
          for (int x2 = 0; x2 < ch.nx2; ++x2) {
            double base = ch.qs[static_cast<std::size_t>(s)] *
                          law.p_x1x2[static_cast<std::size_t>(x1 * ch.nx2 + x2)];
            for (int y = 0; y < ch.ny; ++y) v[f++] = base * ch.wat(s, x1, x2, y);
          }
      j.validate();
      return j;
    }
    case BoundKind::AsymInner: {
      JointPmf j = JointPmf::zeros({{"S", ch.ns}, {"U", law.card_u}, {"V", law.card_v},
                                    {"X1", ch.nx1}, {"X2", ch.nx2}, {"Y", ch.ny}});
      auto& v = j.values();
      std::size_t f = 0;
      for (int s = 0; s < ch.ns; ++s)
        for (int uu = 0; uu < law.card_u; ++uu)
          for (int vv = 0; vv < law.card_v; ++vv)
            for (int x1 = 0; x1 < ch.nx1; ++x1)
              for (int x2 = 0; x2 < ch.nx2; ++x2) {
                double base = ch.qs[static_cast<std::size_t>(s)] * law.p_u[static_cast<std::size_t>(uu)] *
                              at2(law.p_x2_g_u, ch.nx2, uu, x2) * at2(law.p_x1_g_u, ch.nx1, uu, x1) *
                              at2(law.p_v_g_sux2, law.card_v, (s * law.card_u + uu) * ch.nx2 + x2, vv);
                for (int y = 0; y < ch.ny; ++y) v[f++] = base * ch.wat(s, x1, x2, y);
              }
      j.validate();
      return j;
    }
    case BoundKind::ProductInput: {
      JointPmf j = JointPmf::zeros({{"S", ch.ns}, {"X1", ch.nx1}, {"X2", ch.nx2}, {"Y", ch.ny}});
      auto& v = j.values();
      std::size_t f = 0;
      for (int s = 0; s < ch.ns; ++s)
        for (int x1 = 0; x1 < ch.nx1; ++x1)
          for (int x2 = 0; x2 < ch.nx2; ++x2) {
            double base = ch.qs[static_cast<std::size_t>(s)] * law.p_x1[static_cast<std::size_t>(x1)] *
                          law.p_x2[static_cast<std::size_t>(x2)];
            for (int y = 0; y < ch.ny; ++y) v[f++] = base * ch.wat(s, x1, x2, y);
          }
      j.validate();
      return j;
    }
    case BoundKind::Causal: {
      JointPmf j = JointPmf::zeros({{"S", ch.ns}, {"U", law.card_u}, {"V", law.card_v},
                                    {"X1", ch.nx1}, {"X2", ch.nx2}, {"Y", ch.ny}});
      auto& v = j.values();
      std::size_t f = 0;
      for (int s = 0; s < ch.ns; ++s)
        for (int uu = 0; uu < law.card_u; ++uu)
          for (int vv = 0; vv < law.card_v; ++vv)
            for (int x1 = 0; x1 < ch.nx1; ++x1)
              for (int x2 = 0; x2 < ch.nx2; ++x2) {
                double base = ch.qs[static_cast<std::size_t>(s)] * law.p_v[static_cast<std::size_t>(vv)] *
                              at2(law.p_u_g_v, law.card_u, vv, uu) *
                              at2(law.p_x2_g_vs, ch.nx2, vv * ch.ns + s, x2) *
                              at2(law.p_x1_g_svu, ch.nx1, (s * law.card_v + vv) * law.card_u + uu, x1);
                for (int y = 0; y < ch.ny; ++y) v[f++] = base * ch.wat(s, x1, x2, y);
              }
      j.validate();
      return j;
    }
    case BoundKind::NoState: {
      JointPmf j = JointPmf::zeros({{"S", ch.ns}, {"X1", ch.nx1}, {"X2", ch.nx2}, {"Y", ch.ny}});
      auto& v = j.values();
      std::size_t f = 0;
      for (int s = 0; s < ch.ns; ++s)
        for (int x1 = 0; x1 < ch.nx1; ++x1)
          for (int x2 = 0; x2 < ch.nx2; ++x2) {
            double base = ch.qs[static_cast<std::size_t>(s)] * law.p_x2[static_cast<std::size_t>(x2)] *
                          at2(law.p_x1_g_x2, ch.nx1, x2, x1);
            for (int y = 0; y < ch.ny; ++y) v[f++] = base * ch.wat(s, x1, x2, y);
          }
      j.validate();
      return j;
    }
  }
  throw validation_error("assemble_joint: unknown bound kind");
}

// True iff every (x1,x2,y) reachable with positive probability is explained
// by exactly one state, i.e. S is recoverable as f(X1,X2,Y).
inline bool is_state_deterministic(const ChannelSpec& ch) {
  for (int x1 = 0; x1 < ch.nx1; ++x1)
    for (int x2 = 0; x2 < ch.nx2; ++x2)
      for (int y = 0; y < ch.ny; ++y) {
        int explainers = 0;
        for (int s = 0; s < ch.ns; ++s)
          if (ch.qs[static_cast<std::size_t>(s)] * ch.wat(s, x1, x2, y) > 0.0) ++explainers;
        if (explainers > 1) return false;
      }
  return true;
}

// --- built-in example channels ------------------------------------------

// Y = X_S: uniform binary switch between the two inputs.
inline ChannelSpec make_switch_channel() {
  ChannelSpec ch;
  ch.ns = 2;
  ch.nx1 = 2;
  ch.nx2 = 2;
  ch.ny = 2;
  ch.qs = {0.5, 0.5};
  ch.w.assign(static_cast<std::size_t>(2 * 2 * 2 * 2), 0.0);
  for (int s = 0; s < 2; ++s)
    for (int x1 = 0; x1 < 2; ++x1)
      for (int x2 = 0; x2 < 2; ++x2) {
        int y = (s == 0) ? x1 : x2;
        ch.w[ch.widx(s, x1, x2, y)] = 1.0;
      }
  ch.validate();
  return ch;
}

// Y = (X1 + S_{X1+X2}, X2) with S = (S0,S1) i.i.d. Bernoulli(p),
// h2(p) = 1/2. State index s = 2*s0 + s1; output index y = 2*y1 + y2.
inline ChannelSpec make_mod2_selector_channel() {
  double p = inverse_binary_entropy(0.5);
  ChannelSpec ch;
  ch.ns = 4;
  ch.nx1 = 2;
  ch.nx2 = 2;
  ch.ny = 4;
  ch.qs.resize(4);
  for (int s0 = 0; s0 < 2; ++s0)
    for (int s1 = 0; s1 < 2; ++s1)
      ch.qs[static_cast<std::size_t>(2 * s0 + s1)] = (s0 ? p : 1.0 - p) * (s1 ? p : 1.0 - p);
  ch.w.assign(static_cast<std::size_t>(4 * 2 * 2 * 4), 0.0);
  for (int s0 = 0; s0 < 2; ++s0)
    for (int s1 = 0; s1 < 2; ++s1)
      for (int x1 = 0; x1 < 2; ++x1)
        for (int x2 = 0; x2 < 2; ++x2) {
          int sel = (x1 == x2) ? s0 : s1;
          int y1 = x1 ^ sel;
          ch.w[ch.widx(2 * s0 + s1, x1, x2, 2 * y1 + x2)] = 1.0;
        }
  ch.validate();
  return ch;
}

// Y = (X1 + S + Z1, X2), S ~ Bernoulli(1/2), Z1 ~ Bernoulli(p).
// Output index y = 2*y1 + y2.
inline ChannelSpec make_additive_binary_helper_channel(double p) {
  if (p < 0.0 || p > 1.0) throw validation_error("additive-binary-helper: p outside [0,1]");
  ChannelSpec ch;
  ch.ns = 2;
  ch.nx1 = 2;
  ch.nx2 = 2;
  ch.ny = 4;
  ch.qs = {0.5, 0.5};
  ch.w.assign(static_cast<std::size_t>(2 * 2 * 2 * 4), 0.0);
  for (int s = 0; s < 2; ++s)
    for (int x1 = 0; x1 < 2; ++x1)
      for (int x2 = 0; x2 < 2; ++x2)
        for (int z = 0; z < 2; ++z) {
          int y1 = x1 ^ s ^ z;
          ch.w[ch.widx(s, x1, x2, 2 * y1 + x2)] += (z ? p : 1.0 - p);
        }
  ch.validate();
  return ch;
}

// Y = (S*X1, X2 + Z) over the +/-1 alphabets; Pr{Z=+1} = p, S uniform.
// Index 0 maps to +1 and index 1 to -1 for S, X1, X2, Y1; the sum output
// Y2 in {+2, 0, -2} maps to {0, 1, 2}; y = 3*y1 + y2.
inline ChannelSpec make_fading_binary_channel(double p) {
  if (p < 0.0 || p > 1.0) throw validation_error("fading-binary: p outside [0,1]");
  ChannelSpec ch;
  ch.ns = 2;
  ch.nx1 = 2;
  ch.nx2 = 2;
  ch.ny = 6;
  ch.qs = {0.5, 0.5};
  ch.w.assign(static_cast<std::size_t>(2 * 2 * 2 * 6), 0.0);
  auto val = [](int idx) { return idx == 0 ? 1 : -1; };
  for (int s = 0; s < 2; ++s)
    for (int x1 = 0; x1 < 2; ++x1)
      for (int x2 = 0; x2 < 2; ++x2)
        for (int z = 0; z < 2; ++z) {
          int y1 = (val(s) * val(x1) == 1) ? 0 : 1;
          int sum = val(x2) + val(z);  // +2, 0, -2
          int y2 = (sum == 2) ? 0 : (sum == 0 ? 1 : 2);
          ch.w[ch.widx(s, x1, x2, 3 * y1 + y2)] += (z == 0 ? p : 1.0 - p);
        }
  ch.validate();
  return ch;
}

struct BuiltinParams {
  std::optional<double> p;
};

inline ChannelSpec builtin_channel(const std::string& name, const BuiltinParams& params = {}) {
  if (name == "switch") return make_switch_channel();
  if (name == "mod2-selector") return make_mod2_selector_channel();
  if (name == "additive-binary-helper") {
    if (!params.p) throw validation_error("additive-binary-helper requires parameter p");
    return make_additive_binary_helper_channel(*params.p);
  }
  if (name == "fading-binary") {
    if (!params.p) throw validation_error("fading-binary requires parameter p");
    return make_fading_binary_channel(*params.p);
  }
  throw validation_error("unknown builtin channel: " + name);
}

// Dense random channel with alphabet sizes drawn from {2..max_size} and
// Dirichlet(1) rows; used by the property suites.
inline ChannelSpec make_random_channel(Rng& rng, int max_size = 3) {
  auto draw_size = [&](int hi) { return 2 + static_cast<int>(rng.next_u64() % static_cast<std::uint64_t>(hi - 1)); };
  ChannelSpec ch;
  ch.ns = draw_size(max_size);
  ch.nx1 = draw_size(max_size);
  ch.nx2 = draw_size(max_size);
  ch.ny = draw_size(max_size);
  auto dirichlet = [&](double* row, int k) {
    double sum = 0.0;
    for (int i = 0; i < k; ++i) {
      row[i] = -std::log(1.0 - rng.next_double());
      sum += row[i];
    }
    for (int i = 0; i < k; ++i) row[i] /= sum;
  };
  ch.qs.assign(static_cast<std::size_t>(ch.ns), 0.0);
  dirichlet(ch.qs.data(), ch.ns);
  ch.w.assign(static_cast<std::size_t>(ch.ns) * ch.nx1 * ch.nx2 * ch.ny, 0.0);
  for (int s = 0; s < ch.ns; ++s)
    for (int x1 = 0; x1 < ch.nx1; ++x1)
      for (int x2 = 0; x2 < ch.nx2; ++x2) dirichlet(ch.w.data() + ch.widx(s, x1, x2, 0), ch.ny);
  ch.validate();
  return ch;
}

// A channel without state influence, Y = X1 + X2 over {0,1,2} (clean adder).
inline ChannelSpec make_clean_adder_channel() {
  ChannelSpec ch;
  ch.ns = 1;
  ch.nx1 = 2;
  ch.nx2 = 2;
  ch.ny = 3;
  ch.qs = {1.0};
  ch.w.assign(static_cast<std::size_t>(1 * 2 * 2 * 3), 0.0);
  for (int x1 = 0; x1 < 2; ++x1)
    for (int x2 = 0; x2 < 2; ++x2) ch.w[ch.widx(0, x1, x2, x1 + x2)] = 1.0;
  ch.validate();
  return ch;
}

}  // namespace macregions
