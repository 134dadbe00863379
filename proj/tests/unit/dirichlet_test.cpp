#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "fixtures.hpp"
#include "hmvp/dirichlet.hpp"
#include "hmvp/errors.hpp"
#include "hmvp/meanvalue.hpp"

using namespace hmvp;
using hmvp::testing::path;
using hmvp::testing::unit_grid;

namespace {
std::vector<std::size_t> interior_of(const DiscreteSpace& g) {
  std::vector<std::size_t> v;
  for (std::size_t i = 1; i + 1 < g.size(); ++i) v.push_back(i);
  return v;
}
}  // namespace

TEST(Dirichlet, StripOnPath) {
  const auto s = boundary_strip(path(3), {1}, 1.5);
  EXPECT_EQ(s.gamma_eps, (std::vector<std::size_t>{0, 2}));
  EXPECT_EQ(s.omega_eps, (std::vector<std::size_t>{0, 1, 2}));
  EXPECT_THROW(boundary_strip(path(3), {1}, 0.5), InputError);
  EXPECT_THROW(boundary_strip(path(3), {0, 1, 2}, 1.5), InputError);
}

TEST(Dirichlet, StripOnGrid) {
  const auto g = unit_grid(-0.2, 1.2, 0.05);
  std::vector<std::size_t> omega;
  for (std::size_t i = 0; i < g.size(); ++i)
    if (g.coordinate(i) > 1e-9 && g.coordinate(i) < 1 - 1e-9) omega.push_back(i);
  const auto s = boundary_strip(g, omega, 0.1);
  std::vector<double> xs;
  for (auto j : s.gamma_eps) xs.push_back(g.coordinate(j));
  ASSERT_EQ(xs.size(), 4u);
  EXPECT_NEAR(xs[0], -0.05, 1e-12);
  EXPECT_NEAR(xs[1], 0.0, 1e-12);
  EXPECT_NEAR(xs[2], 1.0, 1e-12);
  EXPECT_NEAR(xs[3], 1.05, 1e-12);
}

TEST(Dirichlet, ThreePath) {
  auto p = make_measurable_problem(path(3), {1}, 1.5, {{0, 0.0}, {2, 1.0}});
  p.tol = 1e-14;
  SolveOptions o;
  o.keep_iterates = true;
  const auto sol = dp_solve_measurable(p, o);
  EXPECT_NEAR(sol.u.values()[1], 0.5, 1e-13);
  ASSERT_GE(sol.trace.iterates.size(), 3u);
  EXPECT_DOUBLE_EQ(sol.trace.iterates[0][1], 0.0);
  EXPECT_NEAR(sol.trace.iterates[1][1], 1.0 / 3.0, 1e-16);
  EXPECT_NEAR(sol.trace.iterates[2][1], 4.0 / 9.0, 1e-16);
  EXPECT_NEAR(direct_solve_oracle(p)[1], 0.5, 1e-15);
  EXPECT_EQ(sol.u.values()[0], 0.0);
  EXPECT_EQ(sol.u.values()[2], 1.0);
}

TEST(Dirichlet, ConstantData) {
  const auto g = unit_grid(0, 1, 0.1);
  const auto p = make_measurable_problem(g, interior_of(g), 0.15,
                                         {{0, 2.5}, {g.size() - 1, 2.5}});
  const auto sol = dp_solve_measurable(p);
  for (std::size_t i = 0; i < g.size(); ++i) EXPECT_NEAR(sol.u.values()[i], 2.5, 1e-9);
  const auto o = direct_solve_oracle(p);
  for (double v : o) EXPECT_NEAR(v, 2.5, 1e-12);
}

TEST(Dirichlet, BoundaryNodeMustBeInStrip) {
  EXPECT_THROW(make_measurable_problem(path(5), {2}, 1.5, {{0, 1.0}}), InputError);
}

TEST(Dirichlet, NonConvergenceCarriesTrace) {
  auto p = make_measurable_problem(unit_grid(0, 1, 0.05), interior_of(unit_grid(0, 1, 0.05)),
                                   0.075, {{0, 0.0}, {20, 1.0}});
  p.max_iters = 5;
  try {
    dp_solve_measurable(p);
    FAIL() << "expected ConvergenceError";
  } catch (const ConvergenceError& e) {
    EXPECT_EQ(e.trace().records.size(), 5u);
    EXPECT_EQ(e.trace().iterations, 5u);
  }
}

TEST(Dirichlet, ContinuousMatchesOracleAndIsMonotone) {
  const auto g = unit_grid(0, 1, 0.05);
  const std::size_t last = g.size() - 1;
  auto p = make_continuous_problem(g, interior_of(g), 0.2, {{0, 0.0}, {last, 1.0}});
  p.tol = 1e-12;
  const auto sol = dp_solve_continuous(p);
  const auto oracle = direct_solve_oracle(p);
  for (std::size_t i = 0; i < g.size(); ++i) {
    EXPECT_NEAR(sol.u.values()[i], oracle[i], 1e-8);
    if (i > 0) EXPECT_GE(sol.u.values()[i], sol.u.values()[i - 1] - 1e-12);
  }
  EXPECT_EQ(sol.u.values()[0], 0.0);
  EXPECT_EQ(sol.u.values()[last], 1.0);
}

TEST(Dirichlet, ContinuousUniqueness) {
  const auto g = unit_grid(0, 1, 0.05);
  auto p = make_continuous_problem(g, interior_of(g), 0.2, {{0, 0.0}, {g.size() - 1, 1.0}});
  p.tol = 1e-12;
  SolveOptions hi;
  hi.seed = 2.0;
  const auto a = dp_solve_continuous(p);
  const auto b = dp_solve_continuous(p, hi);
  for (std::size_t i = 0; i < g.size(); ++i)
    EXPECT_NEAR(a.u.values()[i], b.u.values()[i], 1e-8);
}

TEST(Dirichlet, ContinuousConstant) {
  const auto g = unit_grid(0, 1, 0.05);
  auto p = make_continuous_problem(g, interior_of(g), 0.2, {{0, 3.0}, {g.size() - 1, 3.0}});
  p.tol = 1e-13;
  const auto sol = dp_solve_continuous(p);
  for (double v : sol.u.values()) EXPECT_NEAR(v, 3.0, 1e-9);
}

TEST(Dirichlet, RandomProblemsAgreeWithOracle) {
  std::mt19937_64 rng(20240601);
  for (int k = 0; k < 20; ++k) {
    const auto p = hmvp::testing::random_problem(rng);
    const auto sol = dp_solve_measurable(p);
    const auto oracle = direct_solve_oracle(p);
    for (std::size_t i : p.strip.omega_eps)
      EXPECT_NEAR(sol.u.values()[i], oracle[i], 10 * p.tol + 1e-12);
  }
}

TEST(Dirichlet, OracleDetectsDegenerateProblem) {
  // Node 3 is far from everything: its eps-ball is itself, no strip reach.
  std::vector<std::vector<double>> d{{0, 1, 2, 10}, {1, 0, 1, 10}, {2, 1, 0, 10}, {10, 10, 10, 0}};
  const auto s = DiscreteSpace::from_table(d, {1, 1, 1, 1});
  const auto p = make_measurable_problem(s, {1, 3}, 1.5, {{0, 1.0}});
  EXPECT_THROW(direct_solve_oracle(p), NumericalError);
}

TEST(Dirichlet, SubharmonicLiftOfSquare) {
  const auto g = unit_grid(-1, 1, 0.05);
  const auto v = FieldFunction::sampled([&] {
    std::vector<double> out;
    for (std::size_t i = 0; i < g.size(); ++i) out.push_back(g.coordinate(i) * g.coordinate(i));
    return out;
  }());
  const auto lift = subharmonic_lift(g, interior_of(g), {0, g.size() - 1}, v, 1e-10, 200000, true);
  const auto& u = lift.solution.u.values();
  for (std::size_t i = 0; i < g.size(); ++i) EXPECT_GE(u[i], v.values()[i] - 1e-12);
  const MetricMeasureSpace ms(g);
  const auto omega = interior_of(g);
  for (std::size_t k = 0; k < omega.size(); ++k) {
    EXPECT_LT(std::abs(harmonic_defect(ms, lift.solution.u, NodeId{omega[k]}, lift.radii[k])),
              1e-6);
  }
  const auto& it = lift.solution.trace.iterates;
  for (std::size_t n = 1; n < it.size(); ++n)
    for (std::size_t i : omega) ASSERT_GE(it[n][i], it[n - 1][i] - 1e-15);
  EXPECT_EQ(u.front(), 1.0);
  EXPECT_EQ(u.back(), 1.0);
}

TEST(Dirichlet, LiftFixesHarmonicFunction) {
  const auto g = unit_grid(0, 1, 0.1);
  std::vector<double> vals;
  for (std::size_t i = 0; i < g.size(); ++i) vals.push_back(2 * g.coordinate(i) + 1);
  const auto v = FieldFunction::sampled(vals);
  const auto lift = subharmonic_lift(g, interior_of(g), {0, g.size() - 1}, v);
  for (std::size_t i = 0; i < g.size(); ++i) EXPECT_NEAR(lift.solution.u.values()[i], vals[i], 1e-10);
}

TEST(Dirichlet, LiftRejectsSuperharmonic) {
  const auto g = unit_grid(-1, 1, 0.1);
  std::vector<double> vals;
  for (std::size_t i = 0; i < g.size(); ++i) vals.push_back(-g.coordinate(i) * g.coordinate(i));
  EXPECT_THROW(subharmonic_lift(g, interior_of(g), {0, g.size() - 1}, FieldFunction::sampled(vals)),
               InputError);
}
