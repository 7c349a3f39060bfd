#pragma once

// Monte Carlo simulation of the block-Markov Wyner-Ziv scheme (strictly
// causal states) and of the single-block Shannon-strategy scheme (causal
// states) on tiny instances.
//
// Codewords are regenerated lazily from counter-based RNG streams so large
// compression codebooks never have to be materialized. Typicality is tested
// as total-variation distance between the empirical joint type and the
// reference joint.

#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "macregions/bounds.hpp"
#include "macregions/channel.hpp"
#include "macregions/prob.hpp"
#include "macregions/search.hpp"

namespace macregions {

struct SimConfig {
  int n = 8;           // block length
  int blocks = 4;      // B
  double epsilon = 0.30;  // typicality slack (TV distance)
  double delta = 0.05;    // margin for the default T / T-hat choices
  int trials = 200;
  std::uint64_t seed = 1;
  std::optional<double> t_rate;      // override T   (cell rate)
  std::optional<double> that_rate;   // override T^  (compression rate)
  std::uint64_t resource_cap = 200'000'000;  // decoder scan budget per trial
  bool diagnostics = false;  // tally per-step wrong-choice events too

  void validate() const {
    if (n < 1 || blocks < 2 || trials < 1 || epsilon <= 0.0)
      throw validation_error("SimConfig: need n >= 1, blocks >= 2, trials >= 1, epsilon > 0");
  }
};

struct SimResult {
  long trials = 0;
  long errors = 0;
  std::map<std::string, long> events;  // per-error-event tallies
  double err = 0.0, err_lo = 0.0, err_hi = 0.0;  // Wilson 95%
  double rate_rc = 0.0, rate_r1 = 0.0;
  int n = 0;

  void finalize() {
    err = trials > 0 ? static_cast<double>(errors) / trials : 0.0;
    const double z = 1.959963984540054;
    double nn = static_cast<double>(trials);
    if (nn > 0) {
      double z2 = z * z;
      double center = (err + z2 / (2 * nn)) / (1 + z2 / nn);
      double half = z * std::sqrt(err * (1 - err) / nn + z2 / (4 * nn * nn)) / (1 + z2 / nn);
      err_lo = std::max(0.0, center - half);
      err_hi = std::min(1.0, center + half);
    }
  }
};

namespace simdetail {

// Strong-typicality distance: total variation between the empirical type and
// the reference, with the zero-support clause (any mass on a zero-probability
// cell disqualifies the sequence; reported as a sentinel above every slack).
inline double tv_distance(const std::vector<int>& counts, const std::vector<double>& ref, int n) {
  double tv = 0.0;
  for (std::size_t i = 0; i < ref.size(); ++i) {
    if (ref[i] == 0.0 && counts[i] > 0) return 2.0 + static_cast<double>(counts[i]);
    tv += std::abs(static_cast<double>(counts[i]) / n - ref[i]);
  }
  return 0.5 * tv;
}

inline bool tv_typical(const std::vector<int>& counts, const std::vector<double>& ref, int n,
                       double eps) {
  return tv_distance(counts, ref, n) <= eps;
}

// deterministic per-object stream: (seed, trial, tag, a, b, c) -> Rng
inline Rng stream(std::uint64_t seed, std::uint64_t trial, std::uint64_t tag, std::uint64_t a = 0,
                  std::uint64_t b = 0, std::uint64_t c = 0) {
  std::uint64_t h = hash_combine(seed, trial);
  h = hash_combine(h, tag);
  h = hash_combine(h, a);
  h = hash_combine(h, b);
  h = hash_combine(h, c);
  return Rng(h);
}

inline long ceil_pow2_rate(double rate, int n) {
  double v = std::ceil(std::exp2(static_cast<double>(n) * rate));
  if (v < 1.0) v = 1.0;
  return static_cast<long>(v);
}

}  // namespace simdetail

// ---------------------------------------------------------------------------
// Block-Markov Wyner-Ziv scheme: per trial, fresh codebooks
//   x2(wc,s) ~ P_X2,  v(wc,s,z) ~ P_V|X2 on top of x2,  x1(wc,s,w1) ~ P_X1|X2,
// covering of the previous block's state, random binning of z into K cells,
// and five-step backward decoding.
// ---------------------------------------------------------------------------
inline SimResult run_block_markov(const ChannelSpec& ch, const RatePoint& rates,
                                  const FactoredLaw& law, const SimConfig& cfg) {
  cfg.validate();
  if (law.kind != BoundKind::InnerSc) throw validation_error("run_block_markov: law must be inner-sc");
  ch.validate();
  law.validate(ch, true);
  if (rates.rc < 0.0 || rates.r1 < 0.0) throw validation_error("run_block_markov: negative rate");

  JointPmf joint = assemble_joint(ch, law, true);
  const int nv = law.card_v;

  // reference joints for the typicality tests, in fixed variable orders
  std::vector<double> ref_vsx2 = joint.marginal_values({"V", "S", "X2"});
  std::vector<double> ref_x2y = joint.marginal_values({"X2", "Y"});
  std::vector<double> ref_vx2y = joint.marginal_values({"V", "X2", "Y"});
  std::vector<double> ref_x2vx1y = joint.marginal_values({"X2", "V", "X1", "Y"});
  std::vector<double> ref_s(ch.qs);

  // per-symbol log-likelihood tables for candidate arbitration: at these
  // block lengths many candidates pass the typicality gate, and the type
  // statistic alone cannot rank them
  const double kNegInf = -1e30;
  auto loglik_table = [&](const std::vector<double>& joint_ref, const std::vector<double>& cond_ref,
                          int ny) {
    std::vector<double> t(joint_ref.size());
    for (std::size_t i = 0; i < joint_ref.size(); ++i) {
      double denom = cond_ref[i / static_cast<std::size_t>(ny)];
      t[i] = (joint_ref[i] > 0.0 && denom > 0.0) ? std::log2(joint_ref[i] / denom) : kNegInf;
    }
    return t;
  };
  std::vector<double> ll_y_g_x2 = loglik_table(ref_x2y, joint.marginal_values({"X2"}), ch.ny);
  std::vector<double> ll_y_g_vx2 = loglik_table(ref_vx2y, joint.marginal_values({"V", "X2"}), ch.ny);
  std::vector<double> ll_y_g_x2vx1 =
      loglik_table(ref_x2vx1y, joint.marginal_values({"X2", "V", "X1"}), ch.ny);

  // conditional P_V|X2 induced by the law (marginalized over S)
  std::vector<double> p_v_g_x2(static_cast<std::size_t>(ch.nx2) * nv, 0.0);
  for (int x2 = 0; x2 < ch.nx2; ++x2)
    for (int v = 0; v < nv; ++v) {
      double acc = 0.0;
      for (int s = 0; s < ch.ns; ++s)
        acc += ch.qs[static_cast<std::size_t>(s)] *
               law.p_v_g_sx2[static_cast<std::size_t>((s * ch.nx2 + x2) * nv + v)];
      p_v_g_x2[static_cast<std::size_t>(x2 * nv + v)] = acc;
    }

  double i_x2y = joint.cond_mutual_info({"X2"}, {"Y"});
  double i_vs_x2 = joint.cond_mutual_info({"V"}, {"S"}, {"X2"});
  double t_rate = cfg.t_rate ? *cfg.t_rate : std::max(0.0, i_x2y - cfg.delta);
  double that_rate = cfg.that_rate ? *cfg.that_rate : i_vs_x2 + cfg.delta;

  const long mc = simdetail::ceil_pow2_rate(rates.rc, cfg.n);
  const long m1 = simdetail::ceil_pow2_rate(rates.r1, cfg.n);
  const long kcells = simdetail::ceil_pow2_rate(t_rate, cfg.n);
  const long khat = simdetail::ceil_pow2_rate(that_rate, cfg.n);
  const int n = cfg.n, B = cfg.blocks;

  {
    std::uint64_t scan = static_cast<std::uint64_t>(khat) * static_cast<std::uint64_t>(n) *
                         static_cast<std::uint64_t>(B);
    std::uint64_t decode = static_cast<std::uint64_t>(mc) * static_cast<std::uint64_t>(kcells) *
                           static_cast<std::uint64_t>(std::max<long>(1, khat / std::max<long>(1, kcells))) *
                           static_cast<std::uint64_t>(m1);
    if (scan > cfg.resource_cap || decode > cfg.resource_cap)
      throw resource_error("run_block_markov: codebook scans exceed the resource cap");
  }

  // lazy codeword generators (counter-based; identical indices reproduce
  // identical sequences within a trial)
  enum : std::uint64_t { TagX2 = 1, TagV = 2, TagX1 = 3, TagState = 4, TagNoise = 5, TagBin = 6 };

  SimResult out;
  out.n = n;
  out.rate_rc = rates.rc;
  out.rate_r1 = rates.r1;

  std::vector<int> x2seq(static_cast<std::size_t>(n)), vseq(static_cast<std::size_t>(n)),
      x1seq(static_cast<std::size_t>(n));

  auto gen_x2 = [&](std::uint64_t trial, long wc, long s, std::vector<int>& dst) {
    Rng g = simdetail::stream(cfg.seed, trial, TagX2, static_cast<std::uint64_t>(wc),
                              static_cast<std::uint64_t>(s));
    for (int t = 0; t < n; ++t) dst[static_cast<std::size_t>(t)] = g.sample(law.p_x2.data(), ch.nx2);
  };
  auto gen_v = [&](std::uint64_t trial, long wc, long s, long z, const std::vector<int>& x2,
                   std::vector<int>& dst) {
    Rng g = simdetail::stream(cfg.seed, trial, TagV, static_cast<std::uint64_t>(wc),
                              static_cast<std::uint64_t>(s), static_cast<std::uint64_t>(z));
    for (int t = 0; t < n; ++t)
      dst[static_cast<std::size_t>(t)] =
          g.sample(p_v_g_x2.data() + x2[static_cast<std::size_t>(t)] * nv, nv);
  };
  auto gen_x1 = [&](std::uint64_t trial, long wc, long s, long w1, const std::vector<int>& x2,
                    std::vector<int>& dst) {
    Rng g = simdetail::stream(cfg.seed, trial, TagX1, static_cast<std::uint64_t>(wc),
                              static_cast<std::uint64_t>(s), static_cast<std::uint64_t>(w1));
    for (int t = 0; t < n; ++t)
      dst[static_cast<std::size_t>(t)] =
          g.sample(law.p_x1_g_x2.data() + x2[static_cast<std::size_t>(t)] * ch.nx1, ch.nx1);
  };
  auto bin_of = [&](std::uint64_t trial, long z) -> long {
    Rng g = simdetail::stream(cfg.seed, trial, TagBin, static_cast<std::uint64_t>(z));
    return static_cast<long>(g.next_u64() % static_cast<std::uint64_t>(kcells));
  };

  auto support_mask = [](const std::vector<double>& ref) {
    std::vector<char> m(ref.size());
    for (std::size_t i = 0; i < ref.size(); ++i) m[i] = ref[i] > 0.0 ? 1 : 0;
    return m;
  };
  std::vector<char> mask_vsx2 = support_mask(ref_vsx2), mask_x2y = support_mask(ref_x2y),
                    mask_vx2y = support_mask(ref_vx2y), mask_x2vx1y = support_mask(ref_x2vx1y);

  // Candidate score: strong-typicality distance (with the zero-support
  // clause; most wrong candidates die within a couple of symbols) plus the
  // log-likelihood of y given the candidate, used to rank candidates inside
  // the typical set.
  struct Score {
    double tv = 3.0;
    double ll = -1e30;
  };
  // `a` better than `b`: typicality first, then likelihood
  auto better = [&](const Score& a, const Score& b) {
    bool at = a.tv <= cfg.epsilon, bt = b.tv <= cfg.epsilon;
    if (at != bt) return at;
    return a.ll > b.ll;
  };
  std::vector<int> counts;
  auto score2 = [&](const std::vector<int>& a, int ka, const std::vector<int>& b, int kb,
                    const std::vector<double>& ref, const std::vector<char>& mask,
                    const std::vector<double>& ll) {
    counts.assign(static_cast<std::size_t>(ka) * kb, 0);
    Score sc;
    sc.ll = 0.0;
    for (int t = 0; t < n; ++t) {
      auto cell = static_cast<std::size_t>(a[static_cast<std::size_t>(t)] * kb + b[static_cast<std::size_t>(t)]);
      if (!mask[cell]) return Score{};
      ++counts[cell];
      sc.ll += ll[cell];
    }
    sc.tv = simdetail::tv_distance(counts, ref, n);
    return sc;
  };
  auto score3 = [&](const std::vector<int>& a, int ka, const std::vector<int>& b, int kb,
                    const std::vector<int>& c, int kc, const std::vector<double>& ref,
                    const std::vector<char>& mask, const std::vector<double>& ll) {
    counts.assign(static_cast<std::size_t>(ka) * kb * kc, 0);
    Score sc;
    sc.ll = 0.0;
    for (int t = 0; t < n; ++t) {
      auto cell = static_cast<std::size_t>((a[static_cast<std::size_t>(t)] * kb + b[static_cast<std::size_t>(t)]) * kc +
                                           c[static_cast<std::size_t>(t)]);
      if (!mask[cell]) return Score{};
      ++counts[cell];
      sc.ll += ll[cell];
    }
    sc.tv = simdetail::tv_distance(counts, ref, n);
    return sc;
  };
  auto score4 = [&](const std::vector<int>& a, int ka, const std::vector<int>& b, int kb,
                    const std::vector<int>& c, int kc, const std::vector<int>& d, int kd,
                    const std::vector<double>& ref, const std::vector<char>& mask,
                    const std::vector<double>& ll) {
    counts.assign(static_cast<std::size_t>(ka) * kb * kc * kd, 0);
    Score sc;
    sc.ll = 0.0;
    for (int t = 0; t < n; ++t) {
      auto cell = static_cast<std::size_t>(((a[static_cast<std::size_t>(t)] * kb + b[static_cast<std::size_t>(t)]) * kc +
                                            c[static_cast<std::size_t>(t)]) *
                                               kd +
                                           d[static_cast<std::size_t>(t)]);
      if (!mask[cell]) return Score{};
      ++counts[cell];
      sc.ll += ll[cell];
    }
    sc.tv = simdetail::tv_distance(counts, ref, n);
    return sc;
  };

  std::vector<std::vector<int>> states(static_cast<std::size_t>(B + 1)),
      ys(static_cast<std::size_t>(B + 1));
  std::vector<int> vtmp(static_cast<std::size_t>(n)), x2b(static_cast<std::size_t>(n)),
      x1b(static_cast<std::size_t>(n));

  for (long trial = 0; trial < cfg.trials; ++trial) {
    bool trial_error = false;
    // events are diagnostics; a trial errs iff some block's (wc,w1) is wrong
    auto tally = [&](const char* ev) { ++out.events[ev]; };

    // messages for blocks 1..B-1 (block B sends defaults)
    std::vector<long> wcs(static_cast<std::size_t>(B + 1), 0), w1s(static_cast<std::size_t>(B + 1), 0);
    {
      Rng g = simdetail::stream(cfg.seed, static_cast<std::uint64_t>(trial), 7);
      for (int b = 1; b < B; ++b) {
        wcs[static_cast<std::size_t>(b)] = static_cast<long>(g.next_u64() % static_cast<std::uint64_t>(mc));
        w1s[static_cast<std::size_t>(b)] = static_cast<long>(g.next_u64() % static_cast<std::uint64_t>(m1));
      }
    }

    // states
    for (int b = 1; b <= B; ++b) {
      states[static_cast<std::size_t>(b)].resize(static_cast<std::size_t>(n));
      Rng g = simdetail::stream(cfg.seed, static_cast<std::uint64_t>(trial), TagState,
                                static_cast<std::uint64_t>(b));
      for (int t = 0; t < n; ++t)
        states[static_cast<std::size_t>(b)][static_cast<std::size_t>(t)] = g.sample(ch.qs.data(), ch.ns);
    }

    // encoding: cell chain s_0 = bin(z_0 = 0); block b transmits
    // x2(wc_b, s_{b-1}), x1(wc_b, s_{b-1}, w1_b)
    std::vector<long> zidx(static_cast<std::size_t>(B + 1), 0),
        cellidx(static_cast<std::size_t>(B + 1), 0);
    cellidx[0] = bin_of(static_cast<std::uint64_t>(trial), 0);

    for (int b = 1; b <= B; ++b) {
      long wc_prev = (b - 1 >= 1) ? wcs[static_cast<std::size_t>(b - 1)] : 0;
      if (b >= 2) {
        // cover s[b-1] against v(wc_{b-1}, s_{b-2}, .)
        long s_prev2 = cellidx[static_cast<std::size_t>(b - 2)];
        gen_x2(static_cast<std::uint64_t>(trial), wc_prev, s_prev2, x2seq);
        const std::vector<int>& sb = states[static_cast<std::size_t>(b - 1)];
        long found = -1;
        counts.assign(static_cast<std::size_t>(ch.ns), 0);
        for (int t = 0; t < n; ++t) ++counts[static_cast<std::size_t>(sb[static_cast<std::size_t>(t)])];
        bool s_typ = simdetail::tv_typical(counts, ref_s, n, cfg.epsilon);
        if (s_typ) {
          // among the typical covers take the closest-fitting one (ties
          // toward the smallest index); at these block lengths the first
          // passing index is routinely a poor cover. Candidates are grown
          // symbol by symbol and dropped at the first off-support cell.
          double best_cover = std::numeric_limits<double>::infinity();
          for (long z = 0; z < khat; ++z) {
            Rng g = simdetail::stream(cfg.seed, static_cast<std::uint64_t>(trial), TagV,
                                      static_cast<std::uint64_t>(wc_prev),
                                      static_cast<std::uint64_t>(s_prev2),
                                      static_cast<std::uint64_t>(z));
            counts.assign(static_cast<std::size_t>(nv) * ch.ns * ch.nx2, 0);
            bool alive = true;
            for (int t = 0; t < n; ++t) {
              int x2t = x2seq[static_cast<std::size_t>(t)];
              int vt = g.sample(p_v_g_x2.data() + x2t * nv, nv);
              auto cell = static_cast<std::size_t>(
                  (vt * ch.ns + sb[static_cast<std::size_t>(t)]) * ch.nx2 + x2t);
              if (!mask_vsx2[cell]) {
                alive = false;
                break;
              }
              ++counts[cell];
            }
            if (!alive) continue;
            double tv = simdetail::tv_distance(counts, ref_vsx2, n);
            if (tv <= cfg.epsilon && tv < best_cover) {
              best_cover = tv;
              found = z;
            }
          }
        }
        if (found < 0) {
          tally("covering-failure");
          found = 0;
        }
        zidx[static_cast<std::size_t>(b - 1)] = found;
        cellidx[static_cast<std::size_t>(b - 1)] = bin_of(static_cast<std::uint64_t>(trial), found);
      }
      // transmit block b
      long wc_b = (b <= B - 1) ? wcs[static_cast<std::size_t>(b)] : 0;
      long w1_b = (b <= B - 1) ? w1s[static_cast<std::size_t>(b)] : 0;
      long cell_prev = cellidx[static_cast<std::size_t>(b - 1)];
      gen_x2(static_cast<std::uint64_t>(trial), wc_b, cell_prev, x2b);
      gen_x1(static_cast<std::uint64_t>(trial), wc_b, cell_prev, w1_b, x2b, x1b);
      ys[static_cast<std::size_t>(b)].resize(static_cast<std::size_t>(n));
      Rng g = simdetail::stream(cfg.seed, static_cast<std::uint64_t>(trial), TagNoise,
                                static_cast<std::uint64_t>(b));
      for (int t = 0; t < n; ++t) {
        int s = states[static_cast<std::size_t>(b)][static_cast<std::size_t>(t)];
        const double* row =
            ch.w.data() + ch.widx(s, x1b[static_cast<std::size_t>(t)], x2b[static_cast<std::size_t>(t)], 0);
        ys[static_cast<std::size_t>(b)][static_cast<std::size_t>(t)] = g.sample(row, ch.ny);
      }
    }

    // backward decoding
    // cell membership lists for step (d)
    std::vector<std::vector<long>> cells(static_cast<std::size_t>(kcells));
    for (long z = 0; z < khat; ++z)
      cells[static_cast<std::size_t>(bin_of(static_cast<std::uint64_t>(trial), z))].push_back(z);

    // Each unique-decoding step ranks candidates by (typicality, likelihood):
    // at these block lengths several candidates routinely pass the epsilon
    // test, so the likelihood of y under the candidate settles the order. A
    // step whose best candidate is atypical tallies its event and decoding
    // continues with that best guess. The trial errs iff some block's
    // (wc,w1) is wrong.
    long wc_next = 0;  // w_{c,B} default
    std::optional<long> shat_next;  // carried over from step (c) below
    for (int b = B; b >= 2; --b) {
      // step (a): cell index s_{b-1} from y[b] given wc_b
      long shat_b1 = 0;
      if (shat_next && b < B) {
        shat_b1 = *shat_next;  // step (c) of the previous iteration
      } else {
        Score best;
        for (long s = 0; s < kcells; ++s) {
          gen_x2(static_cast<std::uint64_t>(trial), wc_next, s, x2seq);
          Score sc = score2(x2seq, ch.nx2, ys[static_cast<std::size_t>(b)], ch.ny, ref_x2y, mask_x2y,
                            ll_y_g_x2);
          if (s == 0 || better(sc, best)) {
            best = sc;
            shat_b1 = s;
          }
        }
        if (best.tv > cfg.epsilon) tally("cell-decode");
      }

      // step (b): decode wc_{b-1}; each candidate scores its best (s,z,w1) fit
      long wc_prev = 0;
      if (mc > 1) {
        Score best;
        for (long wc = 0; wc < mc; ++wc) {
          Score sc;
          bool first = true;
          for (long s = 0; s < kcells; ++s) {
            gen_x2(static_cast<std::uint64_t>(trial), wc, s, x2seq);
            for (long z : cells[static_cast<std::size_t>(shat_b1)]) {
              gen_v(static_cast<std::uint64_t>(trial), wc, s, z, x2seq, vtmp);
              for (long w1 = 0; w1 < m1; ++w1) {
                gen_x1(static_cast<std::uint64_t>(trial), wc, s, w1, x2seq, x1b);
                Score cand = score4(x2seq, ch.nx2, vtmp, nv, x1b, ch.nx1,
                                    ys[static_cast<std::size_t>(b - 1)], ch.ny, ref_x2vx1y,
                                    mask_x2vx1y, ll_y_g_x2vx1);
                if (first || better(cand, sc)) {
                  sc = cand;
                  first = false;
                }
              }
            }
          }
          if (wc == 0 || better(sc, best)) {
            best = sc;
            wc_prev = wc;
          }
        }
        if (best.tv > cfg.epsilon) tally("message-decode");
      }

      // step (c): cell index s_{b-2} from y[b-1] given wc_{b-1}
      long shat_b2 = 0;
      {
        Score best;
        for (long s = 0; s < kcells; ++s) {
          gen_x2(static_cast<std::uint64_t>(trial), wc_prev, s, x2seq);
          Score sc = score2(x2seq, ch.nx2, ys[static_cast<std::size_t>(b - 1)], ch.ny, ref_x2y,
                            mask_x2y, ll_y_g_x2);
          if (s == 0 || better(sc, best)) {
            best = sc;
            shat_b2 = s;
          }
        }
        if (best.tv > cfg.epsilon) tally("cell-decode");
      }

      // step (d): exact compression index z_{b-1} within C_{s_{b-1}} cap L(y[b-1])
      long zhat = 0;
      {
        gen_x2(static_cast<std::uint64_t>(trial), wc_prev, shat_b2, x2seq);
        Score best;
        bool first = true;
        for (long z : cells[static_cast<std::size_t>(shat_b1)]) {
          gen_v(static_cast<std::uint64_t>(trial), wc_prev, shat_b2, z, x2seq, vtmp);
          Score sc = score3(vtmp, nv, x2seq, ch.nx2, ys[static_cast<std::size_t>(b - 1)], ch.ny,
                            ref_vx2y, mask_vx2y, ll_y_g_vx2);
          if (first || better(sc, best)) {
            best = sc;
            zhat = z;
            first = false;
          }
        }
        if (first || best.tv > cfg.epsilon) tally("compression-index-decode");
      }

      // step (e): decode w1_{b-1}
      long w1_prev = 0;
      {
        gen_v(static_cast<std::uint64_t>(trial), wc_prev, shat_b2, zhat, x2seq, vtmp);
        Score best;
        for (long w1 = 0; w1 < m1; ++w1) {
          gen_x1(static_cast<std::uint64_t>(trial), wc_prev, shat_b2, w1, x2seq, x1b);
          Score sc = score4(x2seq, ch.nx2, vtmp, nv, x1b, ch.nx1, ys[static_cast<std::size_t>(b - 1)],
                            ch.ny, ref_x2vx1y, mask_x2vx1y, ll_y_g_x2vx1);
          if (w1 == 0 || better(sc, best)) {
            best = sc;
            w1_prev = w1;
          }
        }
        if (best.tv > cfg.epsilon) tally("private-decode");
      }

      if (cfg.diagnostics) {
        bool a_ok = shat_b1 == cellidx[static_cast<std::size_t>(b - 1)];
        bool c_ok = shat_b2 == cellidx[static_cast<std::size_t>(b - 2)];
        bool d_ok = zhat == zidx[static_cast<std::size_t>(b - 1)];
        if (!a_ok) ++out.events["dbg-a-wrong"];
        if (!c_ok) ++out.events["dbg-c-wrong"];
        if (!d_ok) ++out.events["dbg-d-wrong"];
        if (w1_prev != w1s[static_cast<std::size_t>(b - 1)]) ++out.events["dbg-e-wrong"];
        if (a_ok && c_ok) {
          ++out.events["dbg-d-scans-clean"];
          if (!d_ok) ++out.events["dbg-d-wrong-clean"];
        }
        if (a_ok && c_ok && d_ok) {
          ++out.events["dbg-e-scans-clean"];
          if (w1_prev != w1s[static_cast<std::size_t>(b - 1)]) ++out.events["dbg-e-wrong-clean"];
        }
      }
      if (wc_prev != wcs[static_cast<std::size_t>(b - 1)] ||
          w1_prev != w1s[static_cast<std::size_t>(b - 1)]) {
        if (!trial_error) {
          tally(wc_prev != wcs[static_cast<std::size_t>(b - 1)] ? "message-decode" : "private-decode");
        }
        trial_error = true;
      }
      wc_next = wc_prev;
      shat_next = shat_b2;
    }

    ++out.trials;
    if (trial_error) ++out.errors;
  }
  out.finalize();
  return out;
}

// ---------------------------------------------------------------------------
// Shannon-strategy scheme (causal states): single block, codebooks over the
// strategy letters v(wc) ~ P_V and u(wc,w1) ~ P_U|V, per-symbol strategy
// application, joint-typicality decoding of (wc,w1).
// ---------------------------------------------------------------------------
inline SimResult run_shannon_strategy(const ChannelSpec& ch, const RatePoint& rates,
                                      const FactoredLaw& law, const SimConfig& cfg) {
  cfg.validate();
  if (law.kind != BoundKind::Causal) throw validation_error("run_shannon_strategy: law must be causal");
  ch.validate();
  law.validate(ch, true);

  // deterministic strategy maps required
  auto is_deterministic = [](const std::vector<double>& t) {
    for (double x : t)
      if (x != 0.0 && x != 1.0) return false;
    return true;
  };
  if (!is_deterministic(law.p_x2_g_vs) || !is_deterministic(law.p_x1_g_svu))
    throw validation_error("run_shannon_strategy: strategy maps must be deterministic");

  JointPmf joint = assemble_joint(ch, law, true);
  std::vector<double> ref_vuy = joint.marginal_values({"V", "U", "Y"});
  std::vector<double> marg_vu = joint.marginal_values({"V", "U"});
  const int nv = law.card_v, nu = law.card_u;
  std::vector<double> ll_y_g_vu(ref_vuy.size());
  for (std::size_t i = 0; i < ref_vuy.size(); ++i) {
    double denom = marg_vu[i / static_cast<std::size_t>(ch.ny)];
    ll_y_g_vu[i] = (ref_vuy[i] > 0.0 && denom > 0.0) ? std::log2(ref_vuy[i] / denom) : -1e30;
  }
  const int n = cfg.n;
  const long mc = simdetail::ceil_pow2_rate(rates.rc, n);
  const long m1 = simdetail::ceil_pow2_rate(rates.r1, n);
  if (static_cast<std::uint64_t>(mc) * static_cast<std::uint64_t>(m1) *
          static_cast<std::uint64_t>(n) >
      cfg.resource_cap)
    throw resource_error("run_shannon_strategy: decoder scan exceeds the resource cap");

  auto x2_of = [&](int v, int s) {
    for (int x2 = 0; x2 < ch.nx2; ++x2)
      if (law.p_x2_g_vs[static_cast<std::size_t>((v * ch.ns + s) * ch.nx2 + x2)] == 1.0) return x2;
    return 0;
  };
  auto x1_of = [&](int s, int v, int u) {
    for (int x1 = 0; x1 < ch.nx1; ++x1)
      if (law.p_x1_g_svu[static_cast<std::size_t>(((s * nv + v) * nu + u) * ch.nx1 + x1)] == 1.0)
        return x1;
    return 0;
  };

  enum : std::uint64_t { TagV = 11, TagU = 12, TagState = 13, TagNoise = 14 };
  SimResult out;
  out.n = n;
  out.rate_rc = rates.rc;
  out.rate_r1 = rates.r1;

  std::vector<int> vseq(static_cast<std::size_t>(n)), useq(static_cast<std::size_t>(n)),
      sseq(static_cast<std::size_t>(n)), yseq(static_cast<std::size_t>(n));
  std::vector<int> counts;

  auto gen_v = [&](std::uint64_t trial, long wc, std::vector<int>& dst) {
    Rng g = simdetail::stream(cfg.seed, trial, TagV, static_cast<std::uint64_t>(wc));
    for (int t = 0; t < n; ++t) dst[static_cast<std::size_t>(t)] = g.sample(law.p_v.data(), nv);
  };
  auto gen_u = [&](std::uint64_t trial, long wc, long w1, const std::vector<int>& v,
                   std::vector<int>& dst) {
    Rng g = simdetail::stream(cfg.seed, trial, TagU, static_cast<std::uint64_t>(wc),
                              static_cast<std::uint64_t>(w1));
    for (int t = 0; t < n; ++t)
      dst[static_cast<std::size_t>(t)] =
          g.sample(law.p_u_g_v.data() + v[static_cast<std::size_t>(t)] * nu, nu);
  };

  auto score_vuy = [&](const std::vector<int>& v, const std::vector<int>& u,
                       const std::vector<int>& y) {
    counts.assign(static_cast<std::size_t>(nv) * nu * ch.ny, 0);
    double ll = 0.0;
    for (int t = 0; t < n; ++t) {
      auto cell = static_cast<std::size_t>((v[static_cast<std::size_t>(t)] * nu + u[static_cast<std::size_t>(t)]) *
                                               ch.ny +
                                           y[static_cast<std::size_t>(t)]);
      ++counts[cell];
      ll += ll_y_g_vu[cell];
    }
    return std::pair<double, double>(simdetail::tv_distance(counts, ref_vuy, n), ll);
  };

  for (long trial = 0; trial < cfg.trials; ++trial) {
    bool trial_error = false;
    Rng msg = simdetail::stream(cfg.seed, static_cast<std::uint64_t>(trial), 17);
    long wc = static_cast<long>(msg.next_u64() % static_cast<std::uint64_t>(mc));
    long w1 = static_cast<long>(msg.next_u64() % static_cast<std::uint64_t>(m1));

    Rng sg = simdetail::stream(cfg.seed, static_cast<std::uint64_t>(trial), TagState);
    for (int t = 0; t < n; ++t) sseq[static_cast<std::size_t>(t)] = sg.sample(ch.qs.data(), ch.ns);

    gen_v(static_cast<std::uint64_t>(trial), wc, vseq);
    gen_u(static_cast<std::uint64_t>(trial), wc, w1, vseq, useq);

    Rng cg = simdetail::stream(cfg.seed, static_cast<std::uint64_t>(trial), TagNoise);
    for (int t = 0; t < n; ++t) {
      int s = sseq[static_cast<std::size_t>(t)];
      int v = vseq[static_cast<std::size_t>(t)];
      int u = useq[static_cast<std::size_t>(t)];
      int x2 = x2_of(v, s);
      int x1 = x1_of(s, v, u);
      yseq[static_cast<std::size_t>(t)] = cg.sample(ch.w.data() + ch.widx(s, x1, x2, 0), ch.ny);
    }

    // joint decode of (wc, w1): typicality gate plus likelihood arbitration
    long hit_wc = -1, hit_w1 = -1;
    std::pair<double, double> best{3.0, -1e30};
    bool first = true;
    std::vector<int> vc(static_cast<std::size_t>(n)), uc(static_cast<std::size_t>(n));
    for (long c = 0; c < mc; ++c) {
      gen_v(static_cast<std::uint64_t>(trial), c, vc);
      for (long w = 0; w < m1; ++w) {
        gen_u(static_cast<std::uint64_t>(trial), c, w, vc, uc);
        auto sc = score_vuy(vc, uc, yseq);
        bool sc_typ = sc.first <= cfg.epsilon, best_typ = best.first <= cfg.epsilon;
        if (first || (sc_typ != best_typ ? sc_typ : sc.second > best.second)) {
          best = sc;
          hit_wc = c;
          hit_w1 = w;
          first = false;
        }
      }
    }
    if (best.first > cfg.epsilon) ++out.events["atypical-decode"];
    if (hit_wc != wc) {
      ++out.events["message-decode"];
      trial_error = true;
    } else if (hit_w1 != w1) {
      ++out.events["private-decode"];
      trial_error = true;
    }

    ++out.trials;
    if (trial_error) ++out.errors;
  }
  out.finalize();
  return out;
}

}  // namespace macregions
