#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "hmvp/quadrature.hpp"

using namespace hmvp::quadrature;

TEST(Quadrature, SimpsonPolynomialsAreExact) {
  EXPECT_NEAR(adaptive_simpson([](double x) { return x * x * x; }, -1.0, 2.0), 3.75, 1e-12);
  EXPECT_NEAR(adaptive_simpson([](double) { return 1.0; }, 0.0, 5.0), 5.0, 1e-14);
}

TEST(Quadrature, SimpsonSmoothFunction) {
  EXPECT_NEAR(adaptive_simpson([](double x) { return std::exp(x); }, 0.0, 3.0),
              std::exp(3.0) - 1.0, 1e-9);
}

TEST(Quadrature, PiecewiseAvoidsPole) {
  // 1/x * |x| integrates to the signed length; the pole at 0 is never sampled.
  const std::vector<double> bp{0.0};
  const double v = integrate_piecewise([](double x) { return std::abs(x) / x; }, -1.0, 3.0, bp);
  EXPECT_NEAR(v, 2.0, 1e-9);
}

TEST(Quadrature, GaussLegendreDegreeNine) {
  EXPECT_NEAR(gauss_legendre5([](double x) { return std::pow(x, 9) + x; }, 0.0, 1.0), 0.6,
              1e-14);
}
