#pragma once

// Optimization of the corner evaluators over the factored-distribution space:
// lambda-weighted support sweeps with multi-start projected coordinate ascent
// on simplex coordinates, convex-hull assembly, sum capacity via
// Blahut-Arimoto, membership queries and the closed-form oracles.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <functional>
#include <limits>
#include <optional>
#include <vector>

#include "macregions/bounds.hpp"
#include "macregions/channel.hpp"
#include "macregions/gaussian.hpp"
#include "macregions/prob.hpp"

namespace macregions {

struct RatePoint {
  double rc = 0.0;
  double r1 = 0.0;
};

enum class RegionMode { PentagonUnion, Decoupled };

inline const char* region_mode_name(RegionMode m) {
  return m == RegionMode::PentagonUnion ? "pentagon-union" : "decoupled";
}

struct SearchConfig {
  int lambda_points = 33;
  int restarts = 6;
  int sweeps = 40;
  int grid_resolution = 9;  // depth of the step-size schedule
  int card_v = 0;           // 0 -> bound-specific default
  int card_u = 0;
  std::uint64_t seed = 1;
  std::optional<double> q1_cap;  // cap on Pr{X1 = 1} (binary X1)
  std::optional<double> q2_cap;  // cap on Pr{X2 = 1} (binary X2)
  double tol = 1e-9;
  bool relax_constraint = false;

  void validate() const {
    if (lambda_points < 1 || restarts < 0 || sweeps < 1 || grid_resolution < 2)
      throw validation_error("SearchConfig: budgets must be positive (grid_resolution >= 2)");
  }
};

// {R1 <= a, Rc+R1 <= b} clipped to the nonnegative quadrant.
struct Pentagon {
  double a = 0.0, b = 0.0;
  bool nonempty = false;
};

inline Pentagon pentagon_of(const CornerEvaluation& c) {
  if (!c.feasible) return {};
  Pentagon p;
  p.b = std::max(0.0, c.sum_cap);
  p.a = std::max(0.0, std::min(c.effective_r1_cap(), p.b));
  p.nonempty = true;
  return p;
}

struct SupportPoint {
  double value = 0.0;
  RatePoint at;
};

// max over the pentagon of lambda*Rc + (1-lambda)*R1; ties toward larger r1.
inline SupportPoint pentagon_support(const Pentagon& p, double lambda) {
  if (!p.nonempty) return {0.0, {0.0, 0.0}};
  double s_corner = lambda * (p.b - p.a) + (1.0 - lambda) * p.a;
  double s_axis = lambda * p.b;
  if (s_corner >= s_axis - 1e-15) return {s_corner, {p.b - p.a, p.a}};
  return {s_axis, {p.b, 0.0}};
}

inline std::vector<RatePoint> pentagon_vertices(const Pentagon& p) {
  if (!p.nonempty) return {{0.0, 0.0}};
  return {{0.0, 0.0}, {p.b, 0.0}, {p.b - p.a, p.a}, {0.0, p.a}};
}

// --- convex hull ------------------------------------------------------------

inline double cross(const RatePoint& o, const RatePoint& a, const RatePoint& b) {
  return (a.rc - o.rc) * (b.r1 - o.r1) - (a.r1 - o.r1) * (b.rc - o.rc);
}

inline std::vector<RatePoint> convex_hull(std::vector<RatePoint> pts) {
  std::sort(pts.begin(), pts.end(), [](const RatePoint& a, const RatePoint& b) {
    return a.rc < b.rc || (a.rc == b.rc && a.r1 < b.r1);
  });
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](const RatePoint& a, const RatePoint& b) {
                          return a.rc == b.rc && a.r1 == b.r1;
                        }),
            pts.end());
  if (pts.size() <= 2) return pts;
  std::vector<RatePoint> h(2 * pts.size());
  std::size_t k = 0;
  for (const auto& p : pts) {  // lower
    while (k >= 2 && cross(h[k - 2], h[k - 1], p) <= 0) --k;
    h[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {  // upper
    while (k >= t && cross(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
    h[k++] = pts[i];
  }
  h.resize(k - 1);
  return h;  // counter-clockwise
}

inline double dist_point_segment(const RatePoint& p, const RatePoint& a, const RatePoint& b) {
  double dx = b.rc - a.rc, dy = b.r1 - a.r1;
  double len2 = dx * dx + dy * dy;
  double t = len2 > 0.0 ? ((p.rc - a.rc) * dx + (p.r1 - a.r1) * dy) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  double qx = a.rc + t * dx - p.rc, qy = a.r1 + t * dy - p.r1;
  return std::sqrt(qx * qx + qy * qy);
}

// 0 inside, else distance to the hull boundary.
inline double distance_outside_hull(const RatePoint& p, const std::vector<RatePoint>& hull) {
  if (hull.empty()) return std::sqrt(p.rc * p.rc + p.r1 * p.r1);
  if (hull.size() == 1) return dist_point_segment(p, hull[0], hull[0]);
  if (hull.size() == 2) return dist_point_segment(p, hull[0], hull[1]);
  bool inside = true;
  for (std::size_t i = 0; i < hull.size(); ++i) {
    if (cross(hull[i], hull[(i + 1) % hull.size()], p) < 0) {
      inside = false;
      break;
    }
  }
  if (inside) return 0.0;
  double d = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < hull.size(); ++i)
    d = std::min(d, dist_point_segment(p, hull[i], hull[(i + 1) % hull.size()]));
  return d;
}

// max over A's vertices of the distance outside B: 0 when A subseteq B.
inline double hull_distance(const std::vector<RatePoint>& a, const std::vector<RatePoint>& b) {
  double d = 0.0;
  for (const auto& p : a) d = std::max(d, distance_outside_hull(p, b));
  return d;
}

// --- rate regions -----------------------------------------------------------

struct PentagonWitness {
  CornerEvaluation corner;
  FactoredLaw law;
  std::uint64_t digest = 0;
};

struct SupportSample {
  double lambda = 0.0;
  RatePoint best;
  double value = 0.0;
  double r1_cap = 0.0;
  double sum_cap = 0.0;
  bool feasible = true;
  std::uint64_t law_digest = 0;
};

struct RateRegion {
  RegionMode mode = RegionMode::PentagonUnion;
  std::vector<SupportSample> samples;
  std::vector<RatePoint> hull;
  std::vector<PentagonWitness> witnesses;

  double max_r1_at_rc0() const {
    double best = 0.0;
    for (const auto& w : witnesses) {
      Pentagon p = pentagon_of(w.corner);
      if (p.nonempty) best = std::max(best, p.a);
    }
    return best;
  }
  double max_sum() const {
    double best = 0.0;
    for (const auto& w : witnesses) {
      Pentagon p = pentagon_of(w.corner);
      if (p.nonempty) best = std::max(best, p.b);
    }
    return best;
  }
  double max_r1_cap() const {
    double best = 0.0;
    for (const auto& w : witnesses) {
      Pentagon p = pentagon_of(w.corner);
      if (p.nonempty) best = std::max(best, std::min(w.corner.effective_r1_cap(), p.b));
    }
    return best;
  }
};

enum class Membership { Inside, OutsideAtResolution };

// "Outside" can never be certified: the search produces inner approximations,
// so the negative verdict is explicitly resolution-qualified.
inline Membership membership(const RateRegion& region, const RatePoint& pt, double tol) {
  return distance_outside_hull(pt, region.hull) <= tol ? Membership::Inside
                                                       : Membership::OutsideAtResolution;
}

inline std::uint64_t law_digest(const FactoredLaw& law) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto mix = [&h](std::uint64_t x) { h = hash_combine(h, x); };
  mix(static_cast<std::uint64_t>(law.kind));
  mix(static_cast<std::uint64_t>(law.card_v));
  mix(static_cast<std::uint64_t>(law.card_u));
  auto mixv = [&](const std::vector<double>& v) {
    for (double x : v) {
      std::uint64_t bits;
      static_assert(sizeof(bits) == sizeof(x));
      std::memcpy(&bits, &x, sizeof(bits));
      mix(bits);
    }
  };
  mixv(law.p_x2);
  mixv(law.p_x1_g_x2);
  mixv(law.p_v_g_sx2);
  mixv(law.p_v_g_sx1x2);
  mixv(law.p_u_g_svx1x2);
  mixv(law.p_x1x2);
  mixv(law.p_u);
  mixv(law.p_x2_g_u);
  mixv(law.p_x1_g_u);
  mixv(law.p_v_g_sux2);
  mixv(law.p_x1);
  mixv(law.p_v);
  mixv(law.p_u_g_v);
  mixv(law.p_x2_g_vs);
  mixv(law.p_x1_g_svu);
  return h;
}

// --- law parameterization ----------------------------------------------------

namespace lawspace {

struct RowRef {
  std::vector<double>* tensor = nullptr;
  std::size_t offset = 0;
  int size = 0;
  double* data() const { return tensor->data() + offset; }
};

inline void push_rows(std::vector<RowRef>& rows, std::vector<double>& t, int width) {
  for (std::size_t off = 0; off < t.size(); off += static_cast<std::size_t>(width))
    rows.push_back({&t, off, width});
}

inline std::vector<RowRef> rows_of(FactoredLaw& law, const ChannelSpec& ch) {
  std::vector<RowRef> rows;
  switch (law.kind) {
    case BoundKind::InnerSc:
      push_rows(rows, law.p_x2, ch.nx2);
      push_rows(rows, law.p_x1_g_x2, ch.nx1);
      push_rows(rows, law.p_v_g_sx2, law.card_v);
      break;
    case BoundKind::OuterSc:
      push_rows(rows, law.p_x2, ch.nx2);
      push_rows(rows, law.p_x1_g_x2, ch.nx1);
      push_rows(rows, law.p_v_g_sx1x2, law.card_v);
      if (law.has_u()) push_rows(rows, law.p_u_g_svx1x2, law.card_u);
      break;
    case BoundKind::JointInput:
      push_rows(rows, law.p_x1x2, ch.nx1 * ch.nx2);
      break;
    case BoundKind::AsymInner:
      push_rows(rows, law.p_u, law.card_u);
      push_rows(rows, law.p_x2_g_u, ch.nx2);
      push_rows(rows, law.p_x1_g_u, ch.nx1);
      push_rows(rows, law.p_v_g_sux2, law.card_v);
      break;
    case BoundKind::ProductInput:
      push_rows(rows, law.p_x1, ch.nx1);
      push_rows(rows, law.p_x2, ch.nx2);
      break;
    case BoundKind::Causal:
      push_rows(rows, law.p_v, law.card_v);
      push_rows(rows, law.p_u_g_v, law.card_u);
      push_rows(rows, law.p_x2_g_vs, ch.nx2);
      push_rows(rows, law.p_x1_g_svu, ch.nx1);
      break;
    case BoundKind::NoState:
      push_rows(rows, law.p_x2, ch.nx2);
      push_rows(rows, law.p_x1_g_x2, ch.nx1);
      break;
  }
  return rows;
}

// Per-letter average-weight caps, enforced by marginal rescaling. Only binary
// alphabets carry a weight notion here.
inline void project_caps(FactoredLaw& law, const ChannelSpec& ch, const SearchConfig& cfg) {
  if (!cfg.q1_cap && !cfg.q2_cap) return;
  auto scale_binary_row = [](double* row, double target_p1) {
    row[1] = target_p1;
    row[0] = 1.0 - target_p1;
  };
  if (cfg.q2_cap) {
    if (ch.nx2 != 2) throw validation_error("q2 cap requires binary X2");
    double q2 = *cfg.q2_cap;
    if (law.kind == BoundKind::InnerSc || law.kind == BoundKind::OuterSc ||
        law.kind == BoundKind::NoState || law.kind == BoundKind::ProductInput) {
      if (law.p_x2[1] > q2) scale_binary_row(law.p_x2.data(), q2);
    } else if (law.kind == BoundKind::JointInput) {
      double m = law.p_x1x2[1] + law.p_x1x2[3];  // Pr{X2=1} over [x1][x2]
      if (m > q2) {
        double f = q2 / m;
        double rest = 1.0 - m;
        double g = rest > 0.0 ? (1.0 - q2) / rest : 0.0;
        law.p_x1x2[1] *= f;
        law.p_x1x2[3] *= f;
        if (rest > 0.0) {
          law.p_x1x2[0] *= g;
          law.p_x1x2[2] *= g;
        } else {
          law.p_x1x2[0] = law.p_x1x2[2] = (1.0 - q2) / 2.0;
        }
      }
    }
  }
  if (cfg.q1_cap) {
    if (ch.nx1 != 2) throw validation_error("q1 cap requires binary X1");
    double q1 = *cfg.q1_cap;
    if (law.kind == BoundKind::InnerSc || law.kind == BoundKind::OuterSc ||
        law.kind == BoundKind::NoState) {
      double m = 0.0;
      for (int x2 = 0; x2 < ch.nx2; ++x2)
        m += law.p_x2[static_cast<std::size_t>(x2)] *
             law.p_x1_g_x2[static_cast<std::size_t>(x2 * ch.nx1 + 1)];
      if (m > q1) {
        double f = q1 / m;
        for (int x2 = 0; x2 < ch.nx2; ++x2) {
          double p1 = law.p_x1_g_x2[static_cast<std::size_t>(x2 * ch.nx1 + 1)] * f;
          scale_binary_row(law.p_x1_g_x2.data() + x2 * ch.nx1, p1);
        }
      }
    } else if (law.kind == BoundKind::ProductInput) {
      if (law.p_x1[1] > q1) scale_binary_row(law.p_x1.data(), q1);
    } else if (law.kind == BoundKind::JointInput) {
      double m = law.p_x1x2[2] + law.p_x1x2[3];  // Pr{X1=1}
      if (m > q1) {
        double f = q1 / m;
        double rest = 1.0 - m;
        double g = rest > 0.0 ? (1.0 - q1) / rest : 0.0;
        law.p_x1x2[2] *= f;
        law.p_x1x2[3] *= f;
        if (rest > 0.0) {
          law.p_x1x2[0] *= g;
          law.p_x1x2[1] *= g;
        } else {
          law.p_x1x2[0] = law.p_x1x2[1] = (1.0 - q1) / 2.0;
        }
      }
    }
  }
}

inline void fill_uniform(std::vector<double>& t, int width) {
  for (auto& x : t) x = 1.0;
  for (std::size_t off = 0; off < t.size(); off += static_cast<std::size_t>(width))
    for (int i = 0; i < width; ++i) t[off + static_cast<std::size_t>(i)] = 1.0 / width;
}

inline FactoredLaw blank_law(const ChannelSpec& ch, BoundKind kind, int card_v, int card_u,
                             bool with_u_factor = false) {
  FactoredLaw law;
  law.kind = kind;
  law.card_v = std::max(1, card_v);
  law.card_u = std::max(1, card_u);
  auto S = static_cast<std::size_t>(ch.ns);
  auto X1 = static_cast<std::size_t>(ch.nx1);
  auto X2 = static_cast<std::size_t>(ch.nx2);
  switch (kind) {
    case BoundKind::InnerSc:
      law.p_x2.assign(X2, 0.0);
      law.p_x1_g_x2.assign(X2 * X1, 0.0);
      law.p_v_g_sx2.assign(S * X2 * static_cast<std::size_t>(law.card_v), 0.0);
      break;
    case BoundKind::OuterSc:
      law.p_x2.assign(X2, 0.0);
      law.p_x1_g_x2.assign(X2 * X1, 0.0);
      law.p_v_g_sx1x2.assign(S * X1 * X2 * static_cast<std::size_t>(law.card_v), 0.0);
      if (with_u_factor)
        law.p_u_g_svx1x2.assign(S * static_cast<std::size_t>(law.card_v) * X1 * X2 *
                                    static_cast<std::size_t>(law.card_u),
                                0.0);
      break;
    case BoundKind::JointInput:
      law.p_x1x2.assign(X1 * X2, 0.0);
      break;
    case BoundKind::AsymInner:
      law.p_u.assign(static_cast<std::size_t>(law.card_u), 0.0);
      law.p_x2_g_u.assign(static_cast<std::size_t>(law.card_u) * X2, 0.0);
      law.p_x1_g_u.assign(static_cast<std::size_t>(law.card_u) * X1, 0.0);
      law.p_v_g_sux2.assign(S * static_cast<std::size_t>(law.card_u) * X2 *
                                static_cast<std::size_t>(law.card_v),
                            0.0);
      break;
    case BoundKind::ProductInput:
      law.p_x1.assign(X1, 0.0);
      law.p_x2.assign(X2, 0.0);
      break;
    case BoundKind::Causal:
      law.p_v.assign(static_cast<std::size_t>(law.card_v), 0.0);
      law.p_u_g_v.assign(static_cast<std::size_t>(law.card_v) * static_cast<std::size_t>(law.card_u), 0.0);
      law.p_x2_g_vs.assign(static_cast<std::size_t>(law.card_v) * S * X2, 0.0);
      law.p_x1_g_svu.assign(S * static_cast<std::size_t>(law.card_v) *
                                static_cast<std::size_t>(law.card_u) * X1,
                            0.0);
      break;
    case BoundKind::NoState:
      law.p_x2.assign(X2, 0.0);
      law.p_x1_g_x2.assign(X2 * X1, 0.0);
      break;
  }
  return law;
}

inline FactoredLaw uniform_law(const ChannelSpec& ch, BoundKind kind, int card_v, int card_u,
                               bool with_u_factor = false) {
  FactoredLaw law = blank_law(ch, kind, card_v, card_u, with_u_factor);
  for (auto& r : rows_of(law, ch)) {
    double* d = r.data();
    for (int i = 0; i < r.size; ++i) d[i] = 1.0 / r.size;
  }
  return law;
}

inline void randomize(FactoredLaw& law, const ChannelSpec& ch, Rng& rng) {
  for (auto& r : rows_of(law, ch)) {
    double* d = r.data();
    double sum = 0.0;
    for (int i = 0; i < r.size; ++i) {
      d[i] = -std::log(1.0 - rng.next_double());
      sum += d[i];
    }
    for (int i = 0; i < r.size; ++i) d[i] /= sum;
  }
}

// Deterministic row: all mass on index i (i clamped to the row size).
inline void set_delta(double* row, int size, int i) {
  for (int k = 0; k < size; ++k) row[k] = 0.0;
  row[std::min(i, size - 1)] = 1.0;
}

}  // namespace lawspace

// Inner-sc laws are members of the outer-sc family with V not depending on X1.
inline FactoredLaw lift_inner_to_outer(const ChannelSpec& ch, const FactoredLaw& inner) {
  if (inner.kind != BoundKind::InnerSc) throw validation_error("lift_inner_to_outer: not an inner-sc law");
  FactoredLaw out = lawspace::blank_law(ch, BoundKind::OuterSc, inner.card_v, 1);
  out.p_x2 = inner.p_x2;
  out.p_x1_g_x2 = inner.p_x1_g_x2;
  for (int s = 0; s < ch.ns; ++s)
    for (int x1 = 0; x1 < ch.nx1; ++x1)
      for (int x2 = 0; x2 < ch.nx2; ++x2)
        for (int v = 0; v < inner.card_v; ++v)
          out.p_v_g_sx1x2[static_cast<std::size_t>(((s * ch.nx1 + x1) * ch.nx2 + x2) * inner.card_v + v)] =
              inner.p_v_g_sx2[static_cast<std::size_t>((s * ch.nx2 + x2) * inner.card_v + v)];
  return out;
}

// Input joint induced by any law, as a joint-input law.
inline FactoredLaw induced_joint_input(const ChannelSpec& ch, const FactoredLaw& law) {
  JointPmf j = assemble_joint(ch, law, true);
  std::vector<double> m = j.marginal_values({"X1", "X2"});
  FactoredLaw out = lawspace::blank_law(ch, BoundKind::JointInput, 1, 1);
  out.p_x1x2 = std::move(m);
  return out;
}

// --- search driver -----------------------------------------------------------

namespace detail_search {

inline int default_card_v(const ChannelSpec& ch, BoundKind kind, const SearchConfig& cfg) {
  if (cfg.card_v > 0) return cfg.card_v;
  switch (kind) {
    case BoundKind::InnerSc:
    case BoundKind::OuterSc:
      return sufficient_card_v(ch);
    case BoundKind::AsymInner:
      return sufficient_card_v(ch);
    case BoundKind::Causal: {
      // Shannon-strategy sufficiency heuristic: |V| = |X2|^|S|
      int c = 1;
      for (int i = 0; i < ch.ns; ++i) c *= ch.nx2;
      return c;
    }
    default:
      return 1;
  }
}

inline int default_card_u(const ChannelSpec& ch, BoundKind kind, const SearchConfig& cfg) {
  if (cfg.card_u > 0) return cfg.card_u;
  switch (kind) {
    case BoundKind::AsymInner:
      return std::min(4, ch.nx1 * ch.nx2 + 1);
    case BoundKind::Causal: {
      int c = 1;
      for (int i = 0; i < ch.ns; ++i) c *= ch.nx1;
      return c;
    }
    default:
      return 1;
  }
}

inline std::vector<FactoredLaw> structured_starts(const ChannelSpec& ch, BoundKind kind, int card_v,
                                                  int card_u, bool with_u, Rng& rng) {
  using namespace lawspace;
  std::vector<FactoredLaw> starts;
  FactoredLaw uni = uniform_law(ch, kind, card_v, card_u, with_u);
  starts.push_back(uni);
  switch (kind) {
    case BoundKind::InnerSc: {
      // V = S copy
      FactoredLaw l = uni;
      for (int s = 0; s < ch.ns; ++s)
        for (int x2 = 0; x2 < ch.nx2; ++x2)
          set_delta(l.p_v_g_sx2.data() + (s * ch.nx2 + x2) * card_v, card_v, s);
      starts.push_back(l);
      // V = (S,X2) pair
      if (card_v >= ch.ns * ch.nx2) {
        FactoredLaw l2 = uni;
        for (int s = 0; s < ch.ns; ++s)
          for (int x2 = 0; x2 < ch.nx2; ++x2)
            set_delta(l2.p_v_g_sx2.data() + (s * ch.nx2 + x2) * card_v, card_v, s * ch.nx2 + x2);
        starts.push_back(l2);
      }
      // V constant
      FactoredLaw l3 = uni;
      for (int s = 0; s < ch.ns; ++s)
        for (int x2 = 0; x2 < ch.nx2; ++x2)
          set_delta(l3.p_v_g_sx2.data() + (s * ch.nx2 + x2) * card_v, card_v, 0);
      starts.push_back(l3);
      // V = S copy with X1 = X2
      FactoredLaw l4 = starts[1];
      for (int x2 = 0; x2 < ch.nx2; ++x2)
        set_delta(l4.p_x1_g_x2.data() + x2 * ch.nx1, ch.nx1, std::min(x2, ch.nx1 - 1));
      starts.push_back(l4);
      break;
    }
    case BoundKind::OuterSc: {
      // V = S copy
      FactoredLaw l = uni;
      for (int s = 0; s < ch.ns; ++s)
        for (int x1 = 0; x1 < ch.nx1; ++x1)
          for (int x2 = 0; x2 < ch.nx2; ++x2)
            set_delta(l.p_v_g_sx1x2.data() + ((s * ch.nx1 + x1) * ch.nx2 + x2) * card_v, card_v, s);
      starts.push_back(l);
      // V constant
      FactoredLaw l2 = uni;
      for (int s = 0; s < ch.ns; ++s)
        for (int x1 = 0; x1 < ch.nx1; ++x1)
          for (int x2 = 0; x2 < ch.nx2; ++x2)
            set_delta(l2.p_v_g_sx1x2.data() + ((s * ch.nx1 + x1) * ch.nx2 + x2) * card_v, card_v, 0);
      starts.push_back(l2);
      // a few random deterministic V maps of (s,x1,x2)
      for (int k = 0; k < 3; ++k) {
        FactoredLaw l3 = uni;
        for (int s = 0; s < ch.ns; ++s)
          for (int x1 = 0; x1 < ch.nx1; ++x1)
            for (int x2 = 0; x2 < ch.nx2; ++x2)
              set_delta(l3.p_v_g_sx1x2.data() + ((s * ch.nx1 + x1) * ch.nx2 + x2) * card_v, card_v,
                        static_cast<int>(rng.next_u64() % static_cast<std::uint64_t>(card_v)));
        starts.push_back(l3);
      }
      break;
    }
    case BoundKind::JointInput: {
      // X1 = X2 uniform diagonal
      FactoredLaw l = uni;
      std::fill(l.p_x1x2.begin(), l.p_x1x2.end(), 0.0);
      int diag = std::min(ch.nx1, ch.nx2);
      for (int i = 0; i < diag; ++i)
        l.p_x1x2[static_cast<std::size_t>(i * ch.nx2 + i)] = 1.0 / diag;
      starts.push_back(l);
      break;
    }
    case BoundKind::AsymInner: {
      // U constant, V = S copy
      FactoredLaw l = uni;
      set_delta(l.p_u.data(), card_u, 0);
      for (int s = 0; s < ch.ns; ++s)
        for (int u = 0; u < card_u; ++u)
          for (int x2 = 0; x2 < ch.nx2; ++x2)
            set_delta(l.p_v_g_sux2.data() + ((s * card_u + u) * ch.nx2 + x2) * card_v, card_v, s);
      starts.push_back(l);
      // V constant (pure cooperation)
      FactoredLaw l2 = uni;
      for (int s = 0; s < ch.ns; ++s)
        for (int u = 0; u < card_u; ++u)
          for (int x2 = 0; x2 < ch.nx2; ++x2)
            set_delta(l2.p_v_g_sux2.data() + ((s * card_u + u) * ch.nx2 + x2) * card_v, card_v, 0);
      starts.push_back(l2);
      break;
    }
    case BoundKind::Causal: {
      // identity strategies: V indexes X2 letters, U indexes X1 letters
      FactoredLaw l = uni;
      for (int v = 0; v < card_v; ++v)
        for (int s = 0; s < ch.ns; ++s)
          set_delta(l.p_x2_g_vs.data() + (v * ch.ns + s) * ch.nx2, ch.nx2, v % ch.nx2);
      for (int s = 0; s < ch.ns; ++s)
        for (int v = 0; v < card_v; ++v)
          for (int u = 0; u < card_u; ++u)
            set_delta(l.p_x1_g_svu.data() + ((s * card_v + v) * card_u + u) * ch.nx1, ch.nx1,
                      u % ch.nx1);
      starts.push_back(l);
      // full Shannon strategies: V and U index maps S -> letter
      FactoredLaw l2 = uni;
      auto pow_int = [](int b, int e) {
        int r = 1;
        while (e-- > 0) r *= b;
        return r;
      };
      int nmaps2 = pow_int(ch.nx2, ch.ns), nmaps1 = pow_int(ch.nx1, ch.ns);
      for (int v = 0; v < card_v; ++v)
        for (int s = 0; s < ch.ns; ++s) {
          int map = v % nmaps2;
          for (int k = 0; k < s; ++k) map /= ch.nx2;
          set_delta(l2.p_x2_g_vs.data() + (v * ch.ns + s) * ch.nx2, ch.nx2, map % ch.nx2);
        }
      for (int s = 0; s < ch.ns; ++s)
        for (int v = 0; v < card_v; ++v)
          for (int u = 0; u < card_u; ++u) {
            int map = u % nmaps1;
            for (int k = 0; k < s; ++k) map /= ch.nx1;
            set_delta(l2.p_x1_g_svu.data() + ((s * card_v + v) * card_u + u) * ch.nx1, ch.nx1,
                      map % ch.nx1);
          }
      starts.push_back(l2);
      break;
    }
    default:
      break;
  }
  return starts;
}

}  // namespace detail_search

// Per-law corner under the requested bound.
inline CornerEvaluation eval_corner(const ChannelSpec& ch, const FactoredLaw& law,
                                    bool relax_constraint = false) {
  switch (law.kind) {
    case BoundKind::InnerSc: return eval_inner_sc(ch, law, relax_constraint, true);
    case BoundKind::OuterSc: return eval_outer_sc(ch, law, true);
    case BoundKind::JointInput: return eval_prop1(ch, law);
    case BoundKind::AsymInner: return eval_asym_inner(ch, law);
    case BoundKind::Causal: return eval_causal(ch, law);
    case BoundKind::NoState: return eval_nostate(ch, law);
    case BoundKind::ProductInput: {
      // helper model: R1 up to the min-cut value, no common rate
      HelperValue h = eval_helper_capacity(ch, law);
      CornerEvaluation c;
      c.r1_cap = h.value;
      c.sum_cap = h.value;
      c.feasible = h.value >= -1e-9;
      return c;
    }
  }
  throw validation_error("eval_corner: unknown bound kind");
}

// Multi-start projected coordinate ascent maximizing `score` over the law
// family. Deterministic for a fixed seed.
inline std::pair<FactoredLaw, CornerEvaluation> ascend_law(
    const ChannelSpec& ch, BoundKind kind, const SearchConfig& cfg, std::uint64_t stream,
    const std::function<double(const CornerEvaluation&)>& score,
    const std::vector<FactoredLaw>& extra_starts = {}, bool with_u = false) {
  using namespace lawspace;
  cfg.validate();
  int card_v = detail_search::default_card_v(ch, kind, cfg);
  int card_u = detail_search::default_card_u(ch, kind, cfg);

  std::vector<double> steps;
  for (int i = 0; i < cfg.grid_resolution; ++i) steps.push_back(std::pow(2.0, -i));

  Rng start_rng(hash_combine(cfg.seed, hash_combine(stream, 0x5eedULL)));
  std::vector<FactoredLaw> starts =
      detail_search::structured_starts(ch, kind, card_v, card_u, with_u, start_rng);
  for (const auto& s : extra_starts)
    if (s.kind == kind) starts.push_back(s);
  for (int r = 0; r < cfg.restarts; ++r) {
    FactoredLaw l = uniform_law(ch, kind, card_v, card_u, with_u);
    randomize(l, ch, start_rng);
    starts.push_back(std::move(l));
  }

  std::optional<FactoredLaw> best_law;
  CornerEvaluation best_corner;
  double best_score = -std::numeric_limits<double>::infinity();

  std::vector<double> saved;
  for (auto& start : starts) {
    FactoredLaw law = start;
    lawspace::project_caps(law, ch, cfg);
    CornerEvaluation cur = eval_corner(ch, law, cfg.relax_constraint);
    double cur_score = score(cur);
    auto rows = rows_of(law, ch);
    for (int sweep = 0; sweep < cfg.sweeps; ++sweep) {
      bool improved = false;
      for (auto& row : rows) {
        if (row.size < 2) continue;
        for (int vtx = 0; vtx < row.size; ++vtx) {
          for (double t : steps) {
            double* d = row.data();
            saved.assign(d, d + row.size);
            for (int i = 0; i < row.size; ++i) d[i] *= (1.0 - t);
            d[vtx] += t;
            lawspace::project_caps(law, ch, cfg);
            CornerEvaluation cand = eval_corner(ch, law, cfg.relax_constraint);
            double cand_score = score(cand);
            if (cand_score > cur_score + 1e-12) {
              cur_score = cand_score;
              cur = cand;
              improved = true;
              break;  // accept, continue from the new point
            }
            std::copy(saved.begin(), saved.end(), d);
          }
        }
      }
      if (!improved) break;
    }
    if (cur_score > best_score + 1e-12 ||
        (cur_score > best_score - 1e-12 && (!best_law || cur.r1_cap > best_corner.r1_cap))) {
      best_score = cur_score;
      best_corner = cur;
      best_law = law;
    }
  }
  return {*best_law, best_corner};
}

inline std::vector<double> lambda_grid(int points) {
  std::vector<double> g;
  if (points <= 1) return {0.0};
  for (int i = 0; i < points; ++i) g.push_back(static_cast<double>(i) / (points - 1));
  return g;
}

// Assemble samples and hull from a witness set over a lambda grid.
inline RateRegion region_from_witnesses(std::vector<PentagonWitness> witnesses,
                                        const std::vector<double>& lambdas, RegionMode mode) {
  RateRegion region;
  region.mode = mode;
  region.witnesses = std::move(witnesses);
  std::vector<RatePoint> pts{{0.0, 0.0}};
  for (const auto& w : region.witnesses) {
    for (const auto& v : pentagon_vertices(pentagon_of(w.corner))) pts.push_back(v);
  }
  region.hull = convex_hull(pts);
  for (double lam : lambdas) {
    SupportSample smp;
    smp.lambda = lam;
    smp.value = 0.0;
    smp.best = {0.0, 0.0};
    bool first = true;
    for (const auto& w : region.witnesses) {
      SupportPoint sp = pentagon_support(pentagon_of(w.corner), lam);
      bool better = first || sp.value > smp.value + 1e-12 ||
                    (sp.value > smp.value - 1e-12 && sp.at.r1 > smp.best.r1 + 1e-12);
      if (better) {
        smp.value = sp.value;
        smp.best = sp.at;
        smp.r1_cap = w.corner.effective_r1_cap();
        smp.sum_cap = w.corner.sum_cap;
        smp.feasible = w.corner.feasible;
        smp.law_digest = w.digest;
        first = false;
      }
    }
    region.samples.push_back(smp);
  }
  return region;
}

// The main entry: per-lambda maximization of the weighted support objective
// (pentagon-union mode) or separate cap maximization (decoupled mode).
// Extra seed laws participate as additional candidate pentagons, so a region
// computed with the witnesses of a narrower bound is guaranteed to contain it.
inline RateRegion compute_region(const ChannelSpec& ch, BoundKind kind, const SearchConfig& cfg,
                                 RegionMode mode = RegionMode::PentagonUnion,
                                 const std::vector<FactoredLaw>& seed_laws = {}) {
  cfg.validate();
  std::vector<double> lambdas = lambda_grid(cfg.lambda_points);
  std::vector<PentagonWitness> witnesses;

  auto add_witness = [&](const FactoredLaw& law, const CornerEvaluation& c) {
    witnesses.push_back({c, law, law_digest(law)});
  };

  if (mode == RegionMode::Decoupled) {
    auto [law_r1, c_r1] = ascend_law(ch, kind, cfg, 0xD1, [](const CornerEvaluation& c) {
      Pentagon p = pentagon_of(c);
      return p.nonempty ? p.a : 0.0;
    }, seed_laws);
    auto [law_sum, c_sum] = ascend_law(ch, kind, cfg, 0xD2, [](const CornerEvaluation& c) {
      Pentagon p = pentagon_of(c);
      return p.nonempty ? p.b : 0.0;
    }, seed_laws);
    double r1max = pentagon_of(c_r1).a;
    double summax = pentagon_of(c_sum).b;
    RateRegion region;
    region.mode = mode;
    add_witness(law_r1, c_r1);
    add_witness(law_sum, c_sum);
    region.witnesses = witnesses;
    // per-inequality reading: every inequality maximized independently
    double r1eff = std::min(r1max, summax);
    std::vector<RatePoint> pts = {{0.0, 0.0}, {summax, 0.0}, {summax - r1eff, r1eff}, {0.0, r1eff}};
    region.hull = convex_hull(pts);
    for (double lam : lambdas) {
      SupportSample smp;
      smp.lambda = lam;
      SupportPoint sp = pentagon_support({r1eff, summax, true}, lam);
      smp.value = sp.value;
      smp.best = sp.at;
      smp.r1_cap = r1max;
      smp.sum_cap = summax;
      smp.feasible = true;
      smp.law_digest = law_digest(law_sum);
      region.samples.push_back(smp);
    }
    return region;
  }

  for (std::size_t li = 0; li < lambdas.size(); ++li) {
    double lam = lambdas[li];
    auto [law, corner] =
        ascend_law(ch, kind, cfg, 0x1000 + li, [lam](const CornerEvaluation& c) {
          return pentagon_support(pentagon_of(c), lam).value;
        }, seed_laws);
    add_witness(law, corner);
  }
  for (const auto& s : seed_laws) {
    if (s.kind != kind) continue;
    add_witness(s, eval_corner(ch, s, cfg.relax_constraint));
  }
  return region_from_witnesses(std::move(witnesses), lambdas, mode);
}

// --- independent-states region (independent messages) --------------------------

// Support of {R1 <= a1, R2 <= a2, R1+R2 <= b} in the (rc==R2, r1==R1) plane.
inline SupportPoint three_cap_support(const ThreeCaps& caps, double lambda) {
  double a1 = std::max(0.0, caps.r1_cap), a2 = std::max(0.0, caps.r2_cap),
         b = std::max(0.0, caps.sum_cap);
  a1 = std::min(a1, b);
  a2 = std::min(a2, b);
  std::vector<RatePoint> vertices = {{0.0, 0.0}, {a2, 0.0}, {0.0, a1},
                                     {a2, std::min(a1, std::max(0.0, b - a2))},
                                     {std::min(a2, std::max(0.0, b - a1)), a1}};
  SupportPoint best{-1.0, {0.0, 0.0}};
  for (const auto& v : vertices) {
    double val = lambda * v.rc + (1.0 - lambda) * v.r1;
    if (val > best.value + 1e-15 || (val > best.value - 1e-15 && v.r1 > best.at.r1)) {
      best.value = val;
      best.at = v;
    }
  }
  return best;
}

inline std::vector<RatePoint> three_cap_vertices(const ThreeCaps& caps) {
  double a1 = std::max(0.0, caps.r1_cap), a2 = std::max(0.0, caps.r2_cap),
         b = std::max(0.0, caps.sum_cap);
  a1 = std::min(a1, b);
  a2 = std::min(a2, b);
  return {{0.0, 0.0}, {a2, 0.0}, {0.0, a1}, {a2, std::min(a1, std::max(0.0, b - a2))},
          {std::min(a2, std::max(0.0, b - a1)), a1}};
}

// Lambda sweep over product input laws for the independent-states three-cap region.
// The rc column of the result carries R2.
inline RateRegion compute_indep_states_region(const TwoStateChannel& ch, const SearchConfig& cfg) {
  cfg.validate();
  std::vector<double> lambdas = lambda_grid(cfg.lambda_points);
  RateRegion region;
  region.mode = RegionMode::PentagonUnion;
  std::vector<double> steps;
  for (int i = 0; i < cfg.grid_resolution; ++i) steps.push_back(std::pow(2.0, -i));
  std::vector<RatePoint> pts{{0.0, 0.0}};
  for (std::size_t li = 0; li < lambdas.size(); ++li) {
    double lam = lambdas[li];
    Rng rng(hash_combine(cfg.seed, 0xA110 + li));
    double best_val = -1.0;
    ThreeCaps best_caps;
    RatePoint best_at{0.0, 0.0};
    for (int start = 0; start < cfg.restarts + 1; ++start) {
      std::vector<double> p1(static_cast<std::size_t>(ch.nx1), 1.0 / ch.nx1),
          p2(static_cast<std::size_t>(ch.nx2), 1.0 / ch.nx2);
      if (start > 0) {
        auto draw = [&](std::vector<double>& p) {
          double s = 0.0;
          for (auto& x : p) {
            x = -std::log(1.0 - rng.next_double());
            s += x;
          }
          for (auto& x : p) x /= s;
        };
        draw(p1);
        draw(p2);
      }
      ThreeCaps cur = eval_indep_states(ch, p1, p2);
      double cur_val = three_cap_support(cur, lam).value;
      for (int sweep = 0; sweep < cfg.sweeps; ++sweep) {
        bool improved = false;
        for (std::vector<double>* row : {&p1, &p2}) {
          for (std::size_t vtx = 0; vtx < row->size(); ++vtx)
            for (double t : steps) {
              std::vector<double> saved = *row;
              for (auto& x : *row) x *= (1.0 - t);
              (*row)[vtx] += t;
              ThreeCaps cand = eval_indep_states(ch, p1, p2);
              double val = three_cap_support(cand, lam).value;
              if (val > cur_val + 1e-12) {
                cur_val = val;
                cur = cand;
                improved = true;
                break;
              }
              *row = saved;
            }
        }
        if (!improved) break;
      }
      if (cur_val > best_val) {
        best_val = cur_val;
        best_caps = cur;
        best_at = three_cap_support(cur, lam).at;
      }
    }
    SupportSample smp;
    smp.lambda = lam;
    smp.value = best_val;
    smp.best = best_at;
    smp.r1_cap = best_caps.r1_cap;
    smp.sum_cap = best_caps.sum_cap;
    smp.feasible = true;
    region.samples.push_back(smp);
    for (const auto& v : three_cap_vertices(best_caps)) pts.push_back(v);
  }
  region.hull = convex_hull(pts);
  return region;
}

// --- sum capacity --------------------------------------------------------------

// Blahut-Arimoto on the state-averaged product-alphabet channel; the
// objective is concave so the alternating maximization is globally optimal.
inline double sum_capacity(const ChannelSpec& ch, double tol = 1e-12, int max_iters = 20000) {
  ch.validate();
  int k = ch.nx1 * ch.nx2;
  std::vector<double> t(static_cast<std::size_t>(k) * ch.ny, 0.0);
  for (int x1 = 0; x1 < ch.nx1; ++x1)
    for (int x2 = 0; x2 < ch.nx2; ++x2)
      for (int y = 0; y < ch.ny; ++y) {
        double acc = 0.0;
        for (int s = 0; s < ch.ns; ++s) acc += ch.qs[static_cast<std::size_t>(s)] * ch.wat(s, x1, x2, y);
        t[static_cast<std::size_t>((x1 * ch.nx2 + x2) * ch.ny + y)] = acc;
      }
  std::vector<double> q(static_cast<std::size_t>(k), 1.0 / k), py(static_cast<std::size_t>(ch.ny)),
      d(static_cast<std::size_t>(k));
  double capacity = 0.0;
  for (int it = 0; it < max_iters; ++it) {
    std::fill(py.begin(), py.end(), 0.0);
    for (int i = 0; i < k; ++i)
      for (int y = 0; y < ch.ny; ++y)
        py[static_cast<std::size_t>(y)] +=
            q[static_cast<std::size_t>(i)] * t[static_cast<std::size_t>(i * ch.ny + y)];
    double lo = 0.0, hi = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < k; ++i) {
      double di = 0.0;
      for (int y = 0; y < ch.ny; ++y) {
        double tv = t[static_cast<std::size_t>(i * ch.ny + y)];
        if (tv > 0.0) di += tv * std::log2(tv / py[static_cast<std::size_t>(y)]);
      }
      d[static_cast<std::size_t>(i)] = di;
      lo += q[static_cast<std::size_t>(i)] * di;
      hi = std::max(hi, di);
    }
    capacity = lo;
    if (hi - lo < tol) break;
    double z = 0.0;
    for (int i = 0; i < k; ++i) {
      q[static_cast<std::size_t>(i)] *= std::exp2(d[static_cast<std::size_t>(i)]);
      z += q[static_cast<std::size_t>(i)];
    }
    for (auto& x : q) x /= z;
  }
  return std::max(0.0, capacity);
}

// --- closed-form oracles -------------------------------------------------------

// Helper-channel closed form: capacity at Rc = 0 under the weight cap q1.
inline double oracle_example3(double p, double q1) {
  if (p < 0.0 || p > 1.0 || q1 < 0.0 || q1 > 1.0)
    throw validation_error("oracle example3: arguments outside [0,1]");
  if (q1 >= 0.5) return 1.0 - binary_entropy(p);
  return binary_entropy(binary_convolve(p, q1)) - binary_entropy(p);
}

// Fading-binary channel: max over (q1,q2) of min{h2(q1), g(p,q2) - h2(p)} via a fine grid
// plus 1-D golden refinement of the q2 term.
inline double oracle_example6(double p) {
  if (p < 0.0 || p > 1.0) throw validation_error("oracle example6: p outside [0,1]");
  double h2p = binary_entropy(p);
  double best_g = -std::numeric_limits<double>::infinity();
  double best_q2 = 0.5;
  const int grid = 2000;
  for (int i = 0; i <= grid; ++i) {
    double q2 = static_cast<double>(i) / grid;
    double g = example6_g(p, q2) - h2p;
    if (g > best_g) {
      best_g = g;
      best_q2 = q2;
    }
  }
  double lo = std::max(0.0, best_q2 - 2.0 / grid), hi = std::min(1.0, best_q2 + 2.0 / grid);
  auto res = golden_section_max([&](double q2) { return example6_g(p, q2) - h2p; }, lo, hi);
  best_g = std::max(best_g, res.value);
  return std::min(1.0, std::max(0.0, best_g));  // h2(q1) maximized at q1 = 1/2
}

// Deterministic-state capacity region via exhaustive simplex grid over joint
// inputs (small alphabets
// only); independent of the coordinate-ascent path.
inline RateRegion oracle_thm4_pentagon(const ChannelSpec& ch, int resolution = 48,
                                       int lambda_points = 33) {
  int k = ch.nx1 * ch.nx2;
  if (k > 6) throw validation_error("oracle thm4-pentagon: alphabets too large for the grid");
  std::vector<PentagonWitness> witnesses;
  std::vector<int> comp(static_cast<std::size_t>(k), 0);
  // enumerate compositions of `resolution` into k parts
  std::function<void(int, int)> rec = [&](int idx, int left) {
    if (idx == k - 1) {
      comp[static_cast<std::size_t>(idx)] = left;
      FactoredLaw law = lawspace::blank_law(ch, BoundKind::JointInput, 1, 1);
      for (int i = 0; i < k; ++i)
        law.p_x1x2[static_cast<std::size_t>(i)] =
            static_cast<double>(comp[static_cast<std::size_t>(i)]) / resolution;
      CornerEvaluation c = eval_prop1(ch, law);
      witnesses.push_back({c, law, law_digest(law)});
      return;
    }
    for (int v = 0; v <= left; ++v) {
      comp[static_cast<std::size_t>(idx)] = v;
      rec(idx + 1, left - v);
    }
  };
  rec(0, resolution);
  return region_from_witnesses(std::move(witnesses), lambda_grid(lambda_points),
                               RegionMode::PentagonUnion);
}

}  // namespace macregions
