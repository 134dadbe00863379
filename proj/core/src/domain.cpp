#include "hmvp/domain.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "hmvp/errors.hpp"

namespace hmvp {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool in_list(const std::vector<std::size_t>& v, std::size_t i) {
  return std::binary_search(v.begin(), v.end(), i);
}

}  // namespace

Domain Domain::whole() { return Domain{}; }

Domain Domain::interval(double a, double b) {
  if (!(b > a)) throw InputError("domain interval needs a < b");
  Domain d;
  d.kind_ = Kind::interval;
  d.lo_ = a;
  d.hi_ = b;
  return d;
}

Domain Domain::nodes(std::vector<std::size_t> interior,
                     std::vector<std::size_t> boundary) {
  if (interior.empty()) throw InputError("domain has no interior nodes");
  std::sort(interior.begin(), interior.end());
  interior.erase(std::unique(interior.begin(), interior.end()), interior.end());
  std::sort(boundary.begin(), boundary.end());
  boundary.erase(std::unique(boundary.begin(), boundary.end()), boundary.end());
  for (std::size_t b : boundary) {
    if (in_list(interior, b)) throw InputError("boundary node inside the domain");
  }
  Domain d;
  d.kind_ = Kind::nodes;
  d.interior_ = std::move(interior);
  d.boundary_ = std::move(boundary);
  return d;
}

bool Domain::contains(const MetricMeasureSpace& space, const Point& x) const {
  switch (kind_) {
    case Kind::whole:
      return true;
    case Kind::interval: {
      const double c = space.scalar(x);
      return c > lo_ && c < hi_;
    }
    case Kind::nodes:
      return in_list(interior_, std::get<NodeId>(x).index);
  }
  return false;
}

double Domain::distance_to_complement(const MetricMeasureSpace& space,
                                      const Point& x) const {
  switch (kind_) {
    case Kind::whole:
      return kInf;
    case Kind::interval: {
      if (space.is_line()) {
        const double c = std::get<double>(x);
        const Interval& dom = space.line().domain();
        double d = kInf;
        if (std::isfinite(lo_) && lo_ >= dom.lo) d = std::min(d, c - lo_);
        if (std::isfinite(hi_) && hi_ <= dom.hi) d = std::min(d, hi_ - c);
        return d;
      }
      const DiscreteSpace& s = space.discrete();
      double d = kInf;
      for (std::size_t j = 0; j < s.size(); ++j) {
        if (!contains(space, NodeId{j})) d = std::min(d, space.distance(x, NodeId{j}));
      }
      return d;
    }
    case Kind::nodes: {
      const DiscreteSpace& s = space.discrete();
      const std::size_t c = std::get<NodeId>(x).index;
      double d = kInf;
      for (std::size_t j = 0; j < s.size(); ++j) {
        if (!in_list(interior_, j)) d = std::min(d, s.distance(c, j));
      }
      return d;
    }
  }
  return kInf;
}

double Domain::distance_to_boundary(const MetricMeasureSpace& space,
                                    const Point& x) const {
  double d = kInf;
  for (const Point& b : boundary_samples(space)) {
    d = std::min(d, space.distance(x, b));
  }
  return d;
}

bool Domain::contains_ball(const MetricMeasureSpace& space, const Point& x,
                           double r) const {
  return distance_to_complement(space, x) > r;
}

std::vector<Point> Domain::interior_samples(const MetricMeasureSpace& space,
                                            std::size_t count, double window_lo,
                                            double window_hi) const {
  std::vector<Point> out;
  if (space.is_discrete()) {
    const DiscreteSpace& s = space.discrete();
    for (std::size_t j = 0; j < s.size(); ++j) {
      if (contains(space, NodeId{j})) out.emplace_back(NodeId{j});
    }
    return out;
  }
  const Interval& dom = space.line().domain();
  double a = kind_ == Kind::interval ? lo_ : dom.lo;
  double b = kind_ == Kind::interval ? hi_ : dom.hi;
  if (!std::isfinite(a)) a = std::min(window_lo, b - 1.0);
  if (!std::isfinite(b)) b = std::max(window_hi, a + 1.0);
  // Evenly spaced, strictly inside (a, b).
  for (std::size_t i = 1; i <= count; ++i) {
    out.emplace_back(a + (b - a) * static_cast<double>(i) /
                             static_cast<double>(count + 1));
  }
  return out;
}

std::vector<Point> Domain::boundary_samples(const MetricMeasureSpace& space) const {
  std::vector<Point> out;
  switch (kind_) {
    case Kind::whole:
      return out;
    case Kind::interval: {
      if (space.is_line()) {
        const Interval& dom = space.line().domain();
        if (std::isfinite(lo_) && dom.contains(lo_)) out.emplace_back(lo_);
        if (std::isfinite(hi_) && dom.contains(hi_)) out.emplace_back(hi_);
        return out;
      }
      // Discrete space with coordinates: the exterior nodes nearest to each end.
      const DiscreteSpace& s = space.discrete();
      double best_lo = kInf, best_hi = kInf;
      std::size_t at_lo = s.size(), at_hi = s.size();
      for (std::size_t j = 0; j < s.size(); ++j) {
        const double c = space.scalar(NodeId{j});
        if (c <= lo_ && lo_ - c < best_lo) { best_lo = lo_ - c; at_lo = j; }
        if (c >= hi_ && c - hi_ < best_hi) { best_hi = c - hi_; at_hi = j; }
      }
      if (at_lo < s.size()) out.emplace_back(NodeId{at_lo});
      if (at_hi < s.size()) out.emplace_back(NodeId{at_hi});
      return out;
    }
    case Kind::nodes: {
      if (!boundary_.empty()) {
        for (std::size_t b : boundary_) out.emplace_back(NodeId{b});
        return out;
      }
      const DiscreteSpace& s = space.discrete();
      double nearest = kInf;
      std::vector<double> dist(s.size(), kInf);
      for (std::size_t j = 0; j < s.size(); ++j) {
        if (in_list(interior_, j)) continue;
        for (std::size_t i : interior_) dist[j] = std::min(dist[j], s.distance(i, j));
        nearest = std::min(nearest, dist[j]);
      }
      for (std::size_t j = 0; j < s.size(); ++j) {
        if (!in_list(interior_, j) && dist[j] == nearest) out.emplace_back(NodeId{j});
      }
      return out;
    }
  }
  return out;
}

}  // namespace hmvp
