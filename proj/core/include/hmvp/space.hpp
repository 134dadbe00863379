#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "hmvp/discrete_space.hpp"
#include "hmvp/field.hpp"
#include "hmvp/line_space.hpp"

namespace hmvp {

/// Index into a DiscreteSpace.
struct NodeId {
  std::size_t index = 0;
  auto operator<=>(const NodeId&) const = default;
};

/// A coordinate on a weighted line or a node of a discrete space.
using Point = std::variant<double, NodeId>;

struct Ball {
  Point center;
  double radius = 0.0;
};

/// Either backend behind one interface.  Immutable and cheap to copy.
class MetricMeasureSpace {
 public:
  MetricMeasureSpace(WeightedLine line);  // NOLINT(google-explicit-constructor)
  MetricMeasureSpace(DiscreteSpace space);  // NOLINT(google-explicit-constructor)

  bool is_line() const;
  bool is_discrete() const { return !is_line(); }
  const WeightedLine& line() const;
  const DiscreteSpace& discrete() const;

  double distance(const Point& x, const Point& y) const;
  double ball_measure(const Point& x, double r) const;
  double ball_integral(const FieldFunction& f, const Point& x, double r) const;
  double symm_diff_measure(const Point& x, const Point& y, double r1,
                           double r2) const;
  /// For each probe h: sup over y with d(x, y) = h of mu(B(x,r) sym-diff
  /// B(y,r)).  Line: y = x +- h.  Discrete: nodes with 0 < d(x,y) <= h, or
  /// the nearest neighbours of x when none is that close, so atoms show up
  /// as a floor instead of an empty supremum.
  std::vector<double> metric_continuity_modulus(
      const Point& x, double r, std::span<const double> probes) const;

  double evaluate(const FieldFunction& f, const Point& x) const;
  /// Sample points inside the open ball: the nodes of a discrete ball, or
  /// 2 n - 1 evenly spaced points on a line ball.
  std::vector<Point> ball_samples(const Point& x, double r,
                                  std::size_t resolution = 64) const;
  /// Coordinate or node label, for reports.
  std::string describe(const Point& x) const;
  /// Coordinate on the line; for discrete spaces the node coordinate when
  /// present, else the node index.
  double scalar(const Point& x) const;

 private:
  using Backend = std::variant<WeightedLine, DiscreteSpace>;
  std::shared_ptr<const Backend> impl_;
};

struct ReweightOptions {
  /// Window where the new antiderivative is tabulated.  Outside it the
  /// mass falls back to adaptive quadrature of h w.
  double grid_lo = -12.0;
  double grid_hi = 12.0;
  std::size_t cells = 6000;
};

/// Space with measure h dmu.  Lines get a monotone cubic Hermite table of
/// the new antiderivative (exact derivative h w at the nodes); discrete
/// spaces multiply masses.  h must be positive at every sampled point.
MetricMeasureSpace reweight(const MetricMeasureSpace& space,
                            const FieldFunction& h,
                            const ReweightOptions& opts = {});

}  // namespace hmvp
