#include <gtest/gtest.h>

#include <cmath>

#include "fixtures.hpp"
#include "hmvp/diagnostics.hpp"
#include "hmvp/errors.hpp"

using namespace hmvp;
using hmvp::testing::line;

namespace {
SamplePlan plan(std::vector<Point> centers, std::vector<double> radii) {
  SamplePlan p;
  p.centers = std::move(centers);
  p.radii = std::move(radii);
  return p;
}
}  // namespace

TEST(Diagnostics, Lebesgue) {
  const auto rep = measure_diagnostics(line(weights::lebesgue()),
                                       plan({-3.0, 0.0, 2.0}, {0.1, 0.5, 1.0, 4.0}));
  EXPECT_NEAR(rep.doubling_constant, 2.0, 1e-12);
  ASSERT_TRUE(rep.uniform_fit);
  EXPECT_NEAR(rep.uniform_fit->c, 2.0, 1e-9);
  EXPECT_NEAR(rep.uniform_fit->q, 1.0, 1e-9);
  ASSERT_TRUE(rep.annular_fit);
  EXPECT_NEAR(rep.annular_fit->delta, 1.0, 1e-12);
  EXPECT_NEAR(rep.annular_fit->a, 1.0, 1e-9);
  EXPECT_TRUE(rep.ahlfors.satisfied);
  ASSERT_EQ(rep.metric_continuity.size(), 4u);
  EXPECT_NEAR(rep.metric_continuity[0].sup_symmetric_difference, 0.2, 1e-12);
}

TEST(Diagnostics, AbsXIsNotUniform) {
  const auto rep = measure_diagnostics(line(weights::abs_x()),
                                       plan({0.0, 2.0, 5.0}, {0.25, 0.5, 1.0, 1.5}));
  EXPECT_FALSE(rep.uniform_fit.has_value());
  EXPECT_GE(rep.doubling_constant, 1.0);
}

TEST(Diagnostics, ExpNegAbsAnnularFitRejected) {
  SamplePlan p = plan({100.0}, {2, 4, 8, 16, 20, 40, 80});
  p.reciprocal_eps = true;
  const auto rep = measure_diagnostics(line(weights::exp_neg_abs_x()), p);
  EXPECT_FALSE(rep.annular_fit.has_value());
}

TEST(Diagnostics, AnnulusRatioClosedForm) {
  const auto s = line(weights::exp_neg_abs_x());
  const double r = 20.0;
  const double expected =
      1.0 - (std::exp(-1.0) - std::exp(-2 * r + 1)) / (1.0 - std::exp(-2 * r));
  EXPECT_NEAR(annulus_ratio(s, 40.0, r, 1.0 / r), expected, 1e-12);
  EXPECT_NEAR(expected, 1.0 - std::exp(-1.0), 1e-6);
}

TEST(Diagnostics, SingleRadiusIsDegenerate) {
  EXPECT_THROW(measure_diagnostics(line(weights::lebesgue()), plan({0.0}, {1.0})), InputError);
}

TEST(Diagnostics, UniformImpliesAnnular) {
  const auto rep = measure_diagnostics(line(weights::power(1.0, 3.0)),
                                       plan({-1.0, 0.0, 1.0}, {0.2, 1.0, 3.0}));
  ASSERT_TRUE(rep.uniform_fit);
  ASSERT_TRUE(rep.annular_fit);
  EXPECT_DOUBLE_EQ(rep.annular_fit->delta, 1.0);
}
