#include "hmvp/line_space.hpp"

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include "hmvp/errors.hpp"

namespace hmvp {

WeightedLine::WeightedLine(WeightSpec weight, Interval domain,
                           quadrature::SimpsonOptions quad)
    : weight_(std::move(weight)), domain_(domain), quad_(quad) {
  if (!(domain_.hi > domain_.lo)) throw InputError("line domain must have lo < hi");
}

void WeightedLine::check_point(double x) const {
  if (!std::isfinite(x) || !domain_.contains(x)) {
    throw InputError("point outside the line's domain");
  }
}

double WeightedLine::distance(double x, double y) const {
  check_point(x);
  check_point(y);
  return std::abs(x - y);
}

Interval WeightedLine::ball(double x, double r) const {
  check_point(x);
  if (!(r > 0.0)) throw InputError("ball radius must be positive");
  return {std::max(x - r, domain_.lo), std::min(x + r, domain_.hi)};
}

double WeightedLine::ball_measure(double x, double r) const {
  const Interval b = ball(x, r);
  const double m = weight_.mass(b.lo, b.hi);
  if (!(m > 0.0)) throw InputError("ball has zero measure");
  return m;
}

double WeightedLine::ball_integral(const FieldFunction& f, double x,
                                   double r) const {
  const Interval b = ball(x, r);
  std::vector<double> cuts(weight_.kinks().begin(), weight_.kinks().end());
  cuts.insert(cuts.end(), f.singular_points().begin(), f.singular_points().end());
  auto integrand = [&](double t) {
    const double v = f(t);
    if (!std::isfinite(v)) {
      throw NumericalError("function '" + f.id() + "' is not finite inside the ball");
    }
    return v * weight_.density(t);
  };
  return quadrature::integrate_piecewise(integrand, b.lo, b.hi, cuts, quad_);
}

double WeightedLine::ball_measure_by_quadrature(double x, double r) const {
  const Interval b = ball(x, r);
  return quadrature::integrate_piecewise(
      [this](double t) { return weight_.density(t); }, b.lo, b.hi,
      weight_.kinks(), quad_);
}

double WeightedLine::symmetric_difference(double x, double y, double r1,
                                          double r2) const {
  const Interval a = ball(x, r1);
  const Interval b = ball(y, r2);
  // A \ B and B \ A, each at most two intervals.
  auto minus = [this](const Interval& p, const Interval& q) {
    if (q.hi <= p.lo || q.lo >= p.hi) return weight_.mass(p.lo, p.hi);
    return weight_.mass(p.lo, std::min(p.hi, q.lo)) +
           weight_.mass(std::max(p.lo, q.hi), p.hi);
  };
  return minus(a, b) + minus(b, a);
}

}  // namespace hmvp
