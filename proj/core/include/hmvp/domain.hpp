#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "hmvp/space.hpp"

namespace hmvp {

/// An open set Omega inside a space: the whole space, an open interval of a
/// line, or a set of interior nodes (with its boundary nodes) of a discrete
/// space.
class Domain {
 public:
  static Domain whole();
  /// Open interval (a, b) on a line space; a or b may be infinite.
  static Domain interval(double a, double b);
  /// Interior nodes plus the nodes playing the role of the boundary.  An
  /// empty boundary list means: exterior nodes at minimal distance from the
  /// interior.
  static Domain nodes(std::vector<std::size_t> interior,
                      std::vector<std::size_t> boundary = {});

  bool is_whole() const { return kind_ == Kind::whole; }
  bool is_interval() const { return kind_ == Kind::interval; }
  bool is_nodes() const { return kind_ == Kind::nodes; }
  double lo() const { return lo_; }
  double hi() const { return hi_; }
  const std::vector<std::size_t>& interior_nodes() const { return interior_; }

  bool contains(const MetricMeasureSpace& space, const Point& x) const;
  /// dist(x, X \ Omega); +inf when the complement is empty.
  double distance_to_complement(const MetricMeasureSpace& space,
                                const Point& x) const;
  /// dist(x, boundary samples); +inf when there are none.
  double distance_to_boundary(const MetricMeasureSpace& space,
                              const Point& x) const;
  /// B(x, r) compactly contained: dist(x, complement) > r.
  bool contains_ball(const MetricMeasureSpace& space, const Point& x,
                     double r) const;
  /// Interior sample points.  Lines: `count` evenly spaced points strictly
  /// inside the interval (the window [window_lo, window_hi] replaces an
  /// infinite end).  Discrete: every interior node.
  std::vector<Point> interior_samples(const MetricMeasureSpace& space,
                                      std::size_t count = 41,
                                      double window_lo = -5.0,
                                      double window_hi = 5.0) const;
  /// Finite interval end points that lie in the space, or the boundary nodes.
  std::vector<Point> boundary_samples(const MetricMeasureSpace& space) const;

 private:
  enum class Kind { whole, interval, nodes };
  Kind kind_ = Kind::whole;
  double lo_ = 0.0;
  double hi_ = 0.0;
  std::vector<std::size_t> interior_;
  std::vector<std::size_t> boundary_;
};

}  // namespace hmvp
