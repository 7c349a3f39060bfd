#pragma once

// Closed-form Gaussian capacity expressions (single-output sum caps, the
// two-output helper examples) and the 1-D correlation maximization behind the
// two-output cooperative model. Logs are base 2 to match the DM modules.

#include <cmath>
#include <limits>
#include <string>

#include "macregions/prob.hpp"

namespace macregions {

struct GaussianParams {
  double P1 = 0.0, P2 = 0.0;  // input power budgets
  double Q = 0.0;             // state variance
  double N = 0.0;             // noise variance
  double rho12 = 0.0;         // input correlation in [-1,1]

  void validate() const {
    if (P1 < 0.0 || P2 < 0.0 || Q < 0.0 || N < 0.0)
      throw validation_error("GaussianParams: variances/powers must be nonnegative");
    if (rho12 < -1.0 || rho12 > 1.0) throw validation_error("GaussianParams: |rho12| must be <= 1");
  }
  double sigma12() const { return rho12 * std::sqrt(P1 * P2); }
};

// Sum-rate expression of the two-output cooperative model at correlation rho.
inline double theta(double P1, double P2, double rho, double Q, double N) {
  GaussianParams g{P1, P2, Q, N, rho};
  g.validate();
  if (Q == 0.0) return std::numeric_limits<double>::infinity();
  if (N == 0.0) {
    if (P2 > 0.0) return std::numeric_limits<double>::infinity();
    return 0.5 * std::log2(1.0 + P1 / Q);  // single-user limit
  }
  double num = (1.0 - rho * rho) * P1 * P2 +
               N * ((std::sqrt(P1) + rho * std::sqrt(P2)) * (std::sqrt(P1) + rho * std::sqrt(P2)) +
                    (1.0 - rho * rho) * P2);
  return 0.5 * std::log2(1.0 + num / (Q * (P2 + N))) + 0.5 * std::log2(1.0 + P2 / N);
}

// Same quantity via the covariance-determinant route, used as the
// independent cross-check of theta().
inline double theta_via_covariance(double P1, double P2, double rho, double Q, double N) {
  if (Q == 0.0 || N == 0.0) return std::numeric_limits<double>::infinity();
  double s12 = rho * std::sqrt(P1 * P2);
  double var_y1 = P1 + P2 + 2.0 * s12 + Q;
  double var_y2 = P2 + N;
  double cov = s12 + P2;
  double det = var_y1 * var_y2 - cov * cov;
  return 0.5 * std::log2(det / (Q * N));
}

struct GoldenSectionResult {
  double x = 0.0;
  double value = 0.0;
};

// Maximize f on [lo,hi]; 200-iteration cap, interval tolerance 1e-12.
template <typename F>
GoldenSectionResult golden_section_max(F&& f, double lo, double hi) {
  const double inv_phi = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = lo, b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c), fd = f(d);
  for (int it = 0; it < 200 && (b - a) > 1e-12; ++it) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  double xm = 0.5 * (a + b);
  return {xm, f(xm)};
}

struct GaussianResult {
  std::string model;
  double value = 0.0;
  double rho_star = 0.0;  // meaningful for example4 only
};

// model in {remark5, example4, remark7, example5}.
inline GaussianResult gaussian_capacity(const std::string& model, const GaussianParams& g) {
  g.validate();
  GaussianResult r;
  r.model = model;
  if (model == "remark5") {
    if (g.Q == 0.0) {
      r.value = std::numeric_limits<double>::infinity();
      return r;
    }
    double s = std::sqrt(g.P1) + std::sqrt(g.P2);
    r.value = 0.5 * std::log2(1.0 + s * s / g.Q);
    return r;
  }
  if (model == "remark7") {
    if (g.Q == 0.0) {
      r.value = std::numeric_limits<double>::infinity();
      return r;
    }
    r.value = 0.5 * std::log2(1.0 + (g.P1 + g.P2) / g.Q);
    return r;
  }
  if (model == "example5") {
    if (g.Q == 0.0 || (g.N == 0.0 && g.P2 > 0.0)) {
      r.value = std::numeric_limits<double>::infinity();
      return r;
    }
    double shrink = (g.P2 + g.N) > 0.0 ? g.N / (g.P2 + g.N) : 1.0;
    r.value = 0.5 * std::log2(1.0 + g.P1 / g.Q + (g.P2 / g.Q) * shrink) +
              (g.N > 0.0 ? 0.5 * std::log2(1.0 + g.P2 / g.N) : 0.0);
    return r;
  }
  if (model == "example4") {
    if (g.Q == 0.0 || (g.N == 0.0 && g.P2 > 0.0)) {
      r.value = std::numeric_limits<double>::infinity();
      return r;
    }
    auto res = golden_section_max([&](double rho) { return theta(g.P1, g.P2, rho, g.Q, g.N); }, 0.0, 1.0);
    r.value = res.value;
    r.rho_star = res.x;
    return r;
  }
  throw validation_error("gaussian_capacity: unknown model " + model);
}

}  // namespace macregions
