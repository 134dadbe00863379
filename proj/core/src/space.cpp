#include "hmvp/space.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <utility>

#include "hmvp/errors.hpp"
#include "hmvp/quadrature.hpp"

namespace hmvp {
namespace {

double coordinate_of(const Point& p) {
  if (const double* x = std::get_if<double>(&p)) return *x;
  throw InputError("expected a coordinate on a line space, got a node id");
}

std::size_t node_of(const Point& p) {
  if (const NodeId* n = std::get_if<NodeId>(&p)) return n->index;
  throw InputError("expected a node id on a discrete space, got a coordinate");
}

// Cubic Hermite table of an antiderivative over a uniform grid.
struct HermiteTable {
  double lo = 0.0;
  double step = 0.0;
  std::vector<double> values;
  std::vector<double> slopes;

  double hi() const { return lo + step * static_cast<double>(values.size() - 1); }

  double operator()(double x) const {
    const double s = (x - lo) / step;
    auto k = static_cast<std::size_t>(std::clamp(std::floor(s), 0.0,
                                                 static_cast<double>(values.size() - 2)));
    const double t = s - static_cast<double>(k);
    const double t2 = t * t;
    const double t3 = t2 * t;
    const double h00 = 2 * t3 - 3 * t2 + 1;
    const double h10 = t3 - 2 * t2 + t;
    const double h01 = -2 * t3 + 3 * t2;
    const double h11 = t3 - t2;
    return h00 * values[k] + h10 * step * slopes[k] + h01 * values[k + 1] +
           h11 * step * slopes[k + 1];
  }
};

WeightSpec reweighted_line_weight(const WeightedLine& line,
                                  const FieldFunction& h,
                                  const ReweightOptions& opts) {
  const WeightSpec base = line.weight();
  std::vector<double> kinks(base.kinks().begin(), base.kinks().end());
  kinks.insert(kinks.end(), h.singular_points().begin(), h.singular_points().end());
  std::sort(kinks.begin(), kinks.end());
  kinks.erase(std::unique(kinks.begin(), kinks.end()), kinks.end());

  auto density = [base, h](double t) {
    const double v = h(t);
    if (!(v > 0.0)) throw InputError("reweighting function must be positive");
    return v * base.density(t);
  };

  const double lo = std::max(opts.grid_lo, line.domain().lo);
  const double hi = std::min(opts.grid_hi, line.domain().hi);
  if (!(hi > lo) || opts.cells < 2) throw InputError("empty reweighting window");

  auto table = std::make_shared<HermiteTable>();
  table->lo = lo;
  table->step = (hi - lo) / static_cast<double>(opts.cells);
  table->values.resize(opts.cells + 1);
  table->slopes.resize(opts.cells + 1);
  table->values[0] = 0.0;
  for (std::size_t k = 0; k <= opts.cells; ++k) {
    const double x = lo + table->step * static_cast<double>(k);
    table->slopes[k] = density(x);
    if (k == 0) continue;
    const double a = x - table->step;
    double cell = 0.0;
    double left = a;
    for (double c : kinks) {
      if (c > a && c < x) {
        cell += quadrature::gauss_legendre5(density, left, c);
        left = c;
      }
    }
    cell += quadrature::gauss_legendre5(density, left, x);
    table->values[k] = table->values[k - 1] + cell;
  }
  // Fritsch-Carlson limiter keeps the interpolant monotone.
  for (std::size_t k = 0; k + 1 <= opts.cells; ++k) {
    const double secant = (table->values[k + 1] - table->values[k]) / table->step;
    if (secant <= 0.0) {
      table->slopes[k] = table->slopes[k + 1] = 0.0;
      continue;
    }
    const double alpha = table->slopes[k] / secant;
    const double beta = table->slopes[k + 1] / secant;
    const double norm = alpha * alpha + beta * beta;
    if (norm > 9.0) {
      const double tau = 3.0 / std::sqrt(norm);
      table->slopes[k] = tau * alpha * secant;
      table->slopes[k + 1] = tau * beta * secant;
    }
  }

  const quadrature::SimpsonOptions quad = line.quadrature();
  auto quad_mass = [density, kinks, quad](double a, double b) {
    return quadrature::integrate_piecewise(density, a, b, kinks, quad);
  };
  auto mass = [table, quad_mass](double a, double b) {
    const double tlo = table->lo;
    const double thi = table->hi();
    double m = 0.0;
    if (a < tlo) m += quad_mass(a, std::min(b, tlo));
    if (b > thi) m += quad_mass(std::max(a, thi), b);
    const double ia = std::max(a, tlo);
    const double ib = std::min(b, thi);
    if (ib > ia) m += (*table)(ib) - (*table)(ia);
    return m;
  };
  auto antiderivative = [table, mass](double x) {
    return x >= table->lo ? mass(table->lo, x) : -mass(x, table->lo);
  };
  return WeightSpec("reweighted(" + base.id() + "," + h.id() + ")", density,
                    antiderivative, mass, kinks);
}

}  // namespace

MetricMeasureSpace::MetricMeasureSpace(WeightedLine line)
    : impl_(std::make_shared<const Backend>(std::move(line))) {}

MetricMeasureSpace::MetricMeasureSpace(DiscreteSpace space)
    : impl_(std::make_shared<const Backend>(std::move(space))) {}

bool MetricMeasureSpace::is_line() const {
  return std::holds_alternative<WeightedLine>(*impl_);
}

const WeightedLine& MetricMeasureSpace::line() const {
  if (!is_line()) throw InputError("operation needs a weighted-line space");
  return std::get<WeightedLine>(*impl_);
}

const DiscreteSpace& MetricMeasureSpace::discrete() const {
  if (is_line()) throw InputError("operation needs a discrete space");
  return std::get<DiscreteSpace>(*impl_);
}

double MetricMeasureSpace::distance(const Point& x, const Point& y) const {
  if (is_line()) return line().distance(coordinate_of(x), coordinate_of(y));
  return discrete().distance(node_of(x), node_of(y));
}

double MetricMeasureSpace::ball_measure(const Point& x, double r) const {
  if (!(r > 0.0)) throw InputError("ball radius must be positive");
  if (is_line()) return line().ball_measure(coordinate_of(x), r);
  const double m = discrete().ball_measure(node_of(x), r);
  if (!(m > 0.0)) throw InputError("empty ball");
  return m;
}

double MetricMeasureSpace::ball_integral(const FieldFunction& f,
                                         const Point& x, double r) const {
  if (!(r > 0.0)) throw InputError("ball radius must be positive");
  if (is_line()) return line().ball_integral(f, coordinate_of(x), r);
  const DiscreteSpace& d = discrete();
  double sum = 0.0;
  for (std::size_t j : d.ball(node_of(x), r)) {
    const double v = f.at_node(d, j);
    if (!std::isfinite(v)) {
      throw NumericalError("function '" + f.id() + "' is not finite inside the ball");
    }
    sum += d.mass(j) * v;
  }
  return sum;
}

double MetricMeasureSpace::symm_diff_measure(const Point& x, const Point& y,
                                             double r1, double r2) const {
  if (!(r1 > 0.0) || !(r2 > 0.0)) throw InputError("ball radii must be positive");
  if (is_line()) {
    return line().symmetric_difference(coordinate_of(x), coordinate_of(y), r1, r2);
  }
  const DiscreteSpace& d = discrete();
  const std::size_t a = node_of(x);
  const std::size_t b = node_of(y);
  double m = 0.0;
  for (std::size_t j = 0; j < d.size(); ++j) {
    const bool in_a = d.distance(a, j) < r1;
    const bool in_b = d.distance(b, j) < r2;
    if (in_a != in_b) m += d.mass(j);
  }
  return m;
}

std::vector<double> MetricMeasureSpace::metric_continuity_modulus(
    const Point& x, double r, std::span<const double> probes) const {
  for (std::size_t i = 0; i < probes.size(); ++i) {
    if (!(probes[i] > 0.0) || (i > 0 && !(probes[i] < probes[i - 1]))) {
      throw InputError("probe distances must be positive and decreasing");
    }
  }
  std::vector<double> out;
  out.reserve(probes.size());
  if (is_line()) {
    const double c = coordinate_of(x);
    for (double h : probes) {
      double sup = 0.0;
      for (double y : {c - h, c + h}) {
        if (line().domain().contains(y)) {
          sup = std::max(sup, symm_diff_measure(x, y, r, r));
        }
      }
      out.push_back(sup);
    }
    return out;
  }
  const DiscreteSpace& d = discrete();
  const std::size_t c = node_of(x);
  double nearest = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < d.size(); ++j) {
    if (j != c) nearest = std::min(nearest, d.distance(c, j));
  }
  for (double h : probes) {
    const double reach = std::max(h, nearest);
    double sup = 0.0;
    for (std::size_t j = 0; j < d.size(); ++j) {
      if (j != c && d.distance(c, j) <= reach) {
        sup = std::max(sup, symm_diff_measure(x, NodeId{j}, r, r));
      }
    }
    out.push_back(sup);
  }
  return out;
}

double MetricMeasureSpace::evaluate(const FieldFunction& f,
                                    const Point& x) const {
  if (is_line()) return f(coordinate_of(x));
  return f.at_node(discrete(), node_of(x));
}

std::vector<Point> MetricMeasureSpace::ball_samples(const Point& x, double r,
                                                    std::size_t resolution) const {
  std::vector<Point> out;
  if (is_line()) {
    const Interval b = line().ball(coordinate_of(x), r);
    const double c = coordinate_of(x);
    const auto n = static_cast<double>(std::max<std::size_t>(resolution, 1));
    for (long k = -static_cast<long>(resolution) + 1;
         k < static_cast<long>(resolution); ++k) {
      const double y = c + r * static_cast<double>(k) / n;
      if (y > b.lo && y < b.hi) out.emplace_back(y);
      else if (y == c) out.emplace_back(y);
    }
    return out;
  }
  for (std::size_t j : discrete().ball(node_of(x), r)) out.emplace_back(NodeId{j});
  return out;
}

std::string MetricMeasureSpace::describe(const Point& x) const {
  if (const double* c = std::get_if<double>(&x)) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", *c);
    return buf;
  }
  return discrete().label(node_of(x));
}

double MetricMeasureSpace::scalar(const Point& x) const {
  if (const double* c = std::get_if<double>(&x)) return *c;
  const DiscreteSpace& d = discrete();
  const std::size_t n = node_of(x);
  return d.has_coordinates() ? d.coordinate(n) : static_cast<double>(n);
}

MetricMeasureSpace reweight(const MetricMeasureSpace& space,
                            const FieldFunction& h,
                            const ReweightOptions& opts) {
  if (space.is_discrete()) {
    const DiscreteSpace& d = space.discrete();
    std::vector<double> masses(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) {
      const double v = h.at_node(d, i);
      if (!(v > 0.0)) throw InputError("reweighting function must be positive");
      masses[i] = v * d.mass(i);
    }
    return d.with_masses(std::move(masses));
  }
  const WeightedLine& line = space.line();
  if (h.is_sampled()) throw InputError("line spaces need a closed-form reweighting function");
  return WeightedLine(reweighted_line_weight(line, h, opts), line.domain(),
                      line.quadrature());
}

}  // namespace hmvp
