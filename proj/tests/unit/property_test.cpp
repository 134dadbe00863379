#include <gtest/gtest.h>

#include <random>

#include "properties.hpp"

using namespace hmvp::testing;

namespace {
void expect_ok(const PropertyResult& r) {
  EXPECT_EQ(r.cases, kPropertyCases) << r.name;
  EXPECT_EQ(r.failures, 0) << r.name << ": " << r.first_failure;
}
}  // namespace

TEST(Properties, DefectLinearity) { expect_ok(defect_linearity()); }
TEST(Properties, DefectShift) { expect_ok(defect_shift()); }
TEST(Properties, ConvexComposition) { expect_ok(convex_composition()); }
TEST(Properties, SymmetricDifferenceContainment) { expect_ok(symmetric_difference_containment()); }
TEST(Properties, BallAverageRange) { expect_ok(ball_average_range()); }
TEST(Properties, ModificationMonotonicity) { expect_ok(modification_monotonicity()); }
TEST(Properties, DpComparison) { expect_ok(dp_comparison()); }
TEST(Properties, DilatationOrder) { expect_ok(dilatation_order()); }

TEST(Properties, DpMonotoneBounded) {
  std::mt19937_64 rng(kPropertySeed + 8);
  std::vector<hmvp::DirichletProblem> problems;
  for (int i = 0; i < 30; ++i) problems.push_back(random_problem(rng));
  const auto r = dp_monotone_bounded(problems);
  EXPECT_EQ(r.failures, 0) << r.first_failure;
}
