#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "fixtures.hpp"
#include "hmvp/domain.hpp"
#include "hmvp/errors.hpp"
#include "hmvp/field.hpp"
#include "hmvp/meanvalue.hpp"

using namespace hmvp;
using hmvp::testing::line;
using hmvp::testing::path;

TEST(Space, LineDistance) {
  const auto s = line(weights::lebesgue());
  EXPECT_DOUBLE_EQ(s.distance(1.0, 4.0), 3.0);
  EXPECT_DOUBLE_EQ(s.distance(2.5, 2.5), 0.0);
}

TEST(Space, PathDistanceFromEdges) {
  const std::vector<Edge> e{{0, 1, 1.0}, {1, 2, 1.0}};
  const auto d = DiscreteSpace::from_edges(3, e, {1, 1, 1});
  EXPECT_DOUBLE_EQ(d.distance(0, 2), 2.0);
  EXPECT_THROW(d.distance(0, 3), InputError);
}

TEST(Space, TableValidation) {
  EXPECT_THROW(DiscreteSpace::from_table({{0, 1}, {2, 0}}, {1, 1}), InputError);
  EXPECT_THROW(DiscreteSpace::from_table({{0, 1, 5}, {1, 0, 1}, {5, 1, 0}}, {1, 1, 1}),
               InputError);
  EXPECT_THROW(DiscreteSpace::from_table({{0, 1}, {1, 0}}, {1, 0}), InputError);
  const std::vector<Edge> e{{0, 1, 1.0}};
  EXPECT_THROW(DiscreteSpace::from_edges(3, e, {1, 1, 1}), InputError);
}

TEST(Space, ClosedFormBallMeasures) {
  const auto e = line(weights::exp_neg_x());
  for (double x : {-2.0, 0.0, 1.5})
    for (double r : {0.1, 1.0, 3.0})
      EXPECT_NEAR(e.ball_measure(x, r), std::exp(-x) * (std::exp(r) - std::exp(-r)),
                  1e-12 * std::exp(-x + r));
  EXPECT_DOUBLE_EQ(line(weights::lebesgue()).ball_measure(0.3, 2.0), 4.0);
  EXPECT_DOUBLE_EQ(line(weights::abs_x()).ball_measure(0.0, 1.0), 1.0);
  const auto c = line(weights::two_cosh());
  EXPECT_NEAR(c.ball_measure(0.7, 1.3), 4 * std::cosh(0.7) * std::sinh(1.3), 1e-12);
}

TEST(Space, EmptyDiscreteBall) {
  const MetricMeasureSpace s(path(3));
  EXPECT_THROW(s.ball_measure(NodeId{0}, 0.0), InputError);
}

TEST(Space, BallIntegralExamples) {
  const auto e = line(weights::exp_neg_x());
  const auto f = FieldFunction::analytic("exp2x", [](double t) { return std::exp(2 * t); });
  for (double x : {-1.0, 0.5})
    EXPECT_NEAR(e.ball_integral(f, x, 1.2), std::exp(x) * (std::exp(1.2) - std::exp(-1.2)), 1e-9);
  const auto a = line(weights::abs_x());
  EXPECT_NEAR(a.ball_integral(functions::reciprocal(), 2.0, 1.0), 2.0, 1e-10);
  EXPECT_NEAR(a.ball_integral(functions::constant(1.0), 0.4, 1.0), a.ball_measure(0.4, 1.0),
              1e-10);
}

TEST(Space, DiscreteBallIntegralIsWeightedSum) {
  const MetricMeasureSpace s(path(4, {1, 2, 3, 4}));
  const auto f = FieldFunction::sampled({1, 10, 100, 1000});
  EXPECT_DOUBLE_EQ(s.ball_integral(f, NodeId{1}, 1.5), 1 + 20 + 300);
}

TEST(Space, SymmetricDifferenceExamples) {
  const auto leb = line(weights::lebesgue());
  EXPECT_DOUBLE_EQ(leb.symm_diff_measure(0.0, 0.0, 1.0, 1.0), 0.0);
  EXPECT_NEAR(leb.symm_diff_measure(0.0, 1.0, 10.0, 10.0), 2.0, 1e-12);
  const auto e = line(weights::exp_neg_x());
  for (double r : {2.0, 5.0})
    EXPECT_NEAR(e.symm_diff_measure(0.0, 1.0, r, r),
                (1 - std::exp(-1.0)) * (std::exp(r) + std::exp(-r)), 1e-10 * std::exp(r));
  const MetricMeasureSpace d(path(4));
  EXPECT_DOUBLE_EQ(d.symm_diff_measure(NodeId{0}, NodeId{1}, 1.5, 1.5), 1.0);
}

TEST(Space, MetricContinuityModulus) {
  const auto leb = line(weights::lebesgue());
  const std::vector<double> probes{0.1, 0.01, 0.001};
  const auto m = leb.metric_continuity_modulus(0.0, 1.0, probes);
  EXPECT_NEAR(m[0], 0.2, 1e-12);
  EXPECT_NEAR(m[1], 0.02, 1e-12);
  EXPECT_NEAR(m[2], 0.002, 1e-12);
  const auto ea = line(weights::exp_neg_abs_x());
  const auto me = ea.metric_continuity_modulus(0.3, 1.0, probes);
  EXPECT_GT(me[0], me[1]);
  EXPECT_GT(me[1], me[2]);
  EXPECT_LT(me[2], 1e-2);
  const MetricMeasureSpace d(path(5));
  const auto md = d.metric_continuity_modulus(NodeId{2}, 1.5, probes);
  for (double v : md) EXPECT_GE(v, 1.0);
}

TEST(Space, TwoCoshMatchesQuadrature) {
  const WeightedLine l(weights::two_cosh());
  for (double x : {-1.0, 0.0, 2.0})
    EXPECT_NEAR(l.ball_measure(x, 0.8), l.ball_measure_by_quadrature(x, 0.8), 1e-9);
}

TEST(Space, AntiderivativeAgreesWithQuadrature) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> xs(-3, 3), rs(0.05, 2.5);
  for (const auto& name : weights::catalog_names()) {
    const WeightedLine l(weights::by_name(name));
    for (int i = 0; i < 100; ++i) {
      const double x = xs(rng), r = rs(rng);
      EXPECT_NEAR(l.ball_measure(x, r), l.ball_measure_by_quadrature(x, r), 1e-9) << name;
    }
  }
}

TEST(Space, GridCellMasses) {
  const auto g = DiscreteSpace::grid(WeightedLine(weights::exp_neg_x()), 0.0, 1.0, 0.25);
  ASSERT_EQ(g.size(), 5u);
  EXPECT_NEAR(g.mass(2), std::exp(-0.375) - std::exp(-0.625), 1e-14);
  EXPECT_DOUBLE_EQ(g.distance(0, 4), 1.0);
  EXPECT_DOUBLE_EQ(g.coordinate(3), 0.75);
}

TEST(Space, ReweightByOneIsIdentity) {
  const auto e = line(weights::exp_neg_x());
  const auto r = reweight(e, functions::constant(1.0));
  for (double x : {-2.0, 0.0, 1.0})
    for (double rr : {0.2, 1.0})
      EXPECT_NEAR(r.ball_measure(x, rr), e.ball_measure(x, rr), 1e-8 * e.ball_measure(x, rr));
}

TEST(Space, ReweightExpToTwoCosh) {
  const auto r = reweight(line(weights::exp_neg_x()), functions::one_plus_exp2x());
  const auto c = line(weights::two_cosh());
  for (double x : {-3.0, -0.5, 0.0, 1.0, 2.5})
    for (double rr : {0.1, 0.7, 2.0})
      EXPECT_NEAR(r.ball_measure(x, rr) / c.ball_measure(x, rr), 1.0, 1e-8) << x << " " << rr;
}

TEST(Space, ReweightRejectsNonPositive) {
  EXPECT_THROW(reweight(line(weights::lebesgue()), functions::affine(1.0, 0.0)), InputError);
  const MetricMeasureSpace d(path(3));
  EXPECT_THROW(reweight(d, FieldFunction::sampled({1, 0, 1})), InputError);
}

TEST(Space, ReweightTransfersHarmonicity) {
  // g = 1/(1+e^{2x}) on 2cosh x dx  <=>  g (1+e^{2x}) = 1 on e^{-x} dx.
  const auto base = line(weights::exp_neg_x());
  const auto h = functions::one_plus_exp2x();
  const auto re = reweight(base, h);
  const auto g = functions::logistic_inv();
  ClassifyOptions o;
  o.radii = {0.2, 0.5, 1.0};
  o.points = {-1.0, 0.0, 1.0};
  o.tol = 1e-6;
  EXPECT_EQ(classify(re, g, Domain::whole(), o).verdict, Verdict::strongly_harmonic);
  EXPECT_EQ(classify(base, product(g, h), Domain::whole(), o).verdict,
            Verdict::strongly_harmonic);
  const auto sq = functions::square();
  EXPECT_NE(classify(re, sq, Domain::whole(), o).verdict, Verdict::strongly_harmonic);
  EXPECT_NE(classify(base, product(sq, h), Domain::whole(), o).verdict,
            Verdict::strongly_harmonic);
}

TEST(Space, DomainDistances) {
  const auto leb = line(weights::lebesgue());
  const auto omega = Domain::interval(0.0, 1.0);
  EXPECT_DOUBLE_EQ(omega.distance_to_complement(leb, 0.3), 0.3);
  EXPECT_TRUE(omega.contains_ball(leb, 0.5, 0.4));
  EXPECT_FALSE(omega.contains_ball(leb, 0.5, 0.5));
  EXPECT_EQ(omega.boundary_samples(leb).size(), 2u);
  EXPECT_TRUE(std::isinf(Domain::whole().distance_to_complement(leb, 3.0)));
}
