#include <doctest.h>

#include <cmath>

#include "macregions/gaussian.hpp"

using namespace macregions;

TEST_SUITE("gaussian") {
  TEST_CASE("theta edge cases") {
    // P2 = 0 collapses to the single-user rate
    CHECK(theta(1.0, 0.0, 0.0, 2.0, 0.5) == doctest::Approx(0.5 * std::log2(1.5)).epsilon(1e-12));
    // P1 = 0, rho = 0 keeps only the helper terms
    double v = theta(0.0, 0.5, 0.0, 1.0, 0.5);
    double expect = 0.5 * std::log2(1.0 + 0.5 * 0.5 / (1.0 * (0.5 + 0.5))) + 0.5 * std::log2(2.0);
    CHECK(v == doctest::Approx(expect).epsilon(1e-12));
    CHECK(std::isinf(theta(1.0, 1.0, 0.0, 0.0, 0.5)));   // Q = 0
    CHECK(std::isinf(theta(1.0, 1.0, 0.0, 1.0, 0.0)));   // N = 0, P2 > 0
    CHECK_THROWS_AS(theta(1.0, 1.0, 1.5, 1.0, 1.0), validation_error);
  }

  TEST_CASE("theta agrees with the covariance-determinant route") {
    for (double p1 : {0.25, 0.5, 1.0})
      for (double p2 : {0.25, 0.5, 2.0})
        for (double rho : {0.0, 0.3, 0.9})
          for (double q : {0.5, 1.0})
            for (double n : {0.25, 1.0})
              CHECK(theta(p1, p2, rho, q, n) ==
                    doctest::Approx(theta_via_covariance(p1, p2, rho, q, n)).epsilon(1e-12));
  }

  TEST_CASE("closed forms") {
    CHECK(gaussian_capacity("remark7", {1, 1, 1, 0, 0}).value ==
          doctest::Approx(0.5 * std::log2(3.0)).epsilon(1e-12));
    double r5 = gaussian_capacity("remark5", {1, 1, 1, 0, 0}).value;
    CHECK(r5 == doctest::Approx(0.5 * std::log2(5.0)).epsilon(1e-12));  // (1+1)^2/1 = 4
    // helper alone still enables a positive rate
    CHECK(gaussian_capacity("example5", {0.0, 0.5, 1.0, 0.5, 0}).value > 0.0);
    CHECK_THROWS_AS(gaussian_capacity("nonesuch", {1, 1, 1, 1, 0}), validation_error);
  }

  TEST_CASE("example4 maximization at the reference parameters") {
    GaussianResult r = gaussian_capacity("example4", {0.5, 0.5, 1.0, 0.5, 0});
    double grid_best = -1.0;
    for (int i = 0; i <= 20000; ++i)
      grid_best = std::max(grid_best, theta(0.5, 0.5, i / 20000.0, 1.0, 0.5));
    CHECK(r.value == doctest::Approx(grid_best).epsilon(1e-6));
    CHECK(r.value >= grid_best - 1e-10);
  }

  TEST_CASE("example4 approaches the remark-5 sum cap as the side noise grows") {
    double target = gaussian_capacity("remark5", {0.5, 0.5, 1.0, 0, 0}).value;
    double prev_gap = 1e18;
    for (double n : {1e2, 1e4, 1e6}) {
      double gap = std::abs(gaussian_capacity("example4", {0.5, 0.5, 1.0, n, 0}).value - target);
      CHECK(gap < prev_gap);
      prev_gap = gap;
    }
    CHECK(prev_gap < 1e-4);
  }

  TEST_CASE("monotonicity spot checks") {
    auto v = [](const char* m, double p1, double p2, double q) {
      return gaussian_capacity(m, {p1, p2, q, 0.5, 0}).value;
    };
    for (const char* m : {"remark5", "remark7", "example5"}) {
      CHECK(v(m, 1.0, 0.5, 1.0) >= v(m, 0.5, 0.5, 1.0) - 1e-12);
      CHECK(v(m, 0.5, 1.0, 1.0) >= v(m, 0.5, 0.5, 1.0) - 1e-12);
      CHECK(v(m, 0.5, 0.5, 2.0) <= v(m, 0.5, 0.5, 1.0) + 1e-12);
    }
  }

  TEST_CASE("golden section finds the interior maximum") {
    auto res = golden_section_max([](double x) { return -(x - 0.3) * (x - 0.3); }, 0.0, 1.0);
    CHECK(res.x == doctest::Approx(0.3).epsilon(1e-9));
  }
}
