#pragma once

#include "hmvp/field.hpp"
#include "hmvp/quadrature.hpp"
#include "hmvp/weight.hpp"

namespace hmvp {

/// The real line (or a closed sub-interval of it) with the Euclidean metric
/// and the measure w(x) dx.  Balls (x - r, x + r) are clipped to the domain.
class WeightedLine {
 public:
  explicit WeightedLine(WeightSpec weight,
                        Interval domain = Interval::real_line(),
                        quadrature::SimpsonOptions quad = {});

  const WeightSpec& weight() const { return weight_; }
  const Interval& domain() const { return domain_; }
  const quadrature::SimpsonOptions& quadrature() const { return quad_; }

  double distance(double x, double y) const;
  /// Ball (x - r, x + r) intersected with the domain.
  Interval ball(double x, double r) const;
  double ball_measure(double x, double r) const;
  /// Adaptive quadrature of f w over the clipped ball.
  double ball_integral(const FieldFunction& f, double x, double r) const;
  /// Adaptive quadrature of w alone; cross-check for ball_measure.
  double ball_measure_by_quadrature(double x, double r) const;
  /// mu(I1 symmetric-difference I2) for I1 = B(x, r1), I2 = B(y, r2).
  double symmetric_difference(double x, double y, double r1, double r2) const;

 private:
  void check_point(double x) const;

  WeightSpec weight_;
  Interval domain_;
  quadrature::SimpsonOptions quad_;
};

}  // namespace hmvp
