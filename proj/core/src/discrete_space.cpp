#include "hmvp/discrete_space.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <utility>

#include "hmvp/errors.hpp"
#include "hmvp/line_space.hpp"

namespace hmvp {
namespace {

std::vector<std::string> default_labels(std::vector<std::string> labels,
                                        std::size_t n) {
  if (labels.empty()) {
    labels.reserve(n);
    for (std::size_t i = 0; i < n; ++i) labels.push_back(std::to_string(i));
  }
  if (labels.size() != n) throw InputError("label count does not match point count");
  return labels;
}

void check_masses(const std::vector<double>& masses) {
  for (double m : masses) {
    if (!(m > 0.0) || !std::isfinite(m)) {
      throw InputError("every point mass must be positive and finite");
    }
  }
}

}  // namespace

DiscreteSpace DiscreteSpace::from_table(
    std::vector<std::vector<double>> distances, std::vector<double> masses,
    std::vector<std::string> labels) {
  const std::size_t n = masses.size();
  if (n == 0) throw InputError("discrete space needs at least one point");
  if (distances.size() != n) throw InputError("metric table size does not match masses");
  check_masses(masses);

  DiscreteSpace s;
  s.table_.resize(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    if (distances[i].size() != n) throw InputError("metric table is not square");
    for (std::size_t j = 0; j < n; ++j) {
      const double d = distances[i][j];
      if (!(d >= 0.0) || !std::isfinite(d)) {
        throw InputError("distances must be finite and nonnegative");
      }
      s.table_[i * n + j] = d;
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (s.table_[i * n + i] != 0.0) throw InputError("metric diagonal must be zero");
    for (std::size_t j = i + 1; j < n; ++j) {
      if (s.table_[i * n + j] != s.table_[j * n + i]) {
        throw InputError("metric table is not symmetric");
      }
      if (s.table_[i * n + j] == 0.0) {
        throw InputError("distinct points at distance zero");
      }
    }
  }
  // Relative slack for round-off in tables produced by floating arithmetic.
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double dij = s.table_[i * n + j];
      for (std::size_t k = 0; k < n; ++k) {
        const double via = s.table_[i * n + k] + s.table_[k * n + j];
        if (dij > via * (1.0 + 1e-12)) {
          throw InputError("triangle inequality fails for (" + std::to_string(i) +
                           ", " + std::to_string(k) + ", " +
                           std::to_string(j) + ")");
        }
      }
    }
  }
  s.masses_ = std::move(masses);
  s.labels_ = default_labels(std::move(labels), n);
  return s;
}

DiscreteSpace DiscreteSpace::from_edges(std::size_t count,
                                        std::span<const Edge> edges,
                                        std::vector<double> masses,
                                        std::vector<std::string> labels) {
  if (masses.size() != count) throw InputError("mass count does not match point count");
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<std::vector<double>> d(count, std::vector<double>(count, inf));
  for (std::size_t i = 0; i < count; ++i) d[i][i] = 0.0;
  for (const Edge& e : edges) {
    if (e.from >= count || e.to >= count) throw InputError("edge references unknown node");
    if (!(e.length > 0.0)) throw InputError("edge lengths must be positive");
    d[e.from][e.to] = std::min(d[e.from][e.to], e.length);
    d[e.to][e.from] = std::min(d[e.to][e.from], e.length);
  }
  for (std::size_t k = 0; k < count; ++k) {
    for (std::size_t i = 0; i < count; ++i) {
      for (std::size_t j = 0; j < count; ++j) {
        d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
      }
    }
  }
  for (const auto& row : d) {
    for (double v : row) {
      if (!std::isfinite(v)) throw InputError("edge graph is disconnected");
    }
  }
  return from_table(std::move(d), std::move(masses), std::move(labels));
}

DiscreteSpace DiscreteSpace::grid(const WeightedLine& line, double lo,
                                  double hi, double spacing) {
  if (!(spacing > 0.0) || !(hi > lo)) throw InputError("grid needs lo < hi and spacing > 0");
  const double steps = (hi - lo) / spacing;
  const auto cells = static_cast<std::size_t>(std::llround(steps));
  if (std::abs(steps - static_cast<double>(cells)) > 1e-9 * std::max(1.0, steps)) {
    throw InputError("grid spacing does not divide [lo, hi]");
  }
  const std::size_t n = cells + 1;
  DiscreteSpace s;
  s.table_.resize(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t k = i > j ? i - j : j - i;
      s.table_[i * n + j] = static_cast<double>(k) * spacing;
    }
  }
  std::vector<double> coords(n);
  s.masses_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    coords[i] = lo + static_cast<double>(i) * spacing;
    if (!line.domain().contains(coords[i])) {
      throw InputError("grid node outside the line's domain");
    }
    const double a = std::max(coords[i] - 0.5 * spacing, line.domain().lo);
    const double b = std::min(coords[i] + 0.5 * spacing, line.domain().hi);
    s.masses_[i] = line.weight().mass(a, b);
  }
  check_masses(s.masses_);
  s.labels_.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", coords[i]);
    s.labels_.emplace_back(buf);
  }
  s.coordinates_ = std::move(coords);
  s.spacing_ = spacing;
  return s;
}

void DiscreteSpace::check_node(std::size_t i) const {
  if (i >= size()) {
    throw InputError("node id " + std::to_string(i) + " out of range (" +
                     std::to_string(size()) + " points)");
  }
}

double DiscreteSpace::distance(std::size_t i, std::size_t j) const {
  check_node(i);
  check_node(j);
  return table_[i * size() + j];
}

std::vector<std::size_t> DiscreteSpace::ball(std::size_t center,
                                             double r) const {
  check_node(center);
  if (!(r > 0.0)) throw InputError("ball radius must be positive");
  std::vector<std::size_t> out;
  const double* row = table_.data() + center * size();
  for (std::size_t j = 0; j < size(); ++j) {
    if (row[j] < r) out.push_back(j);
  }
  return out;
}

double DiscreteSpace::ball_measure(std::size_t center, double r) const {
  double m = 0.0;
  for (std::size_t j : ball(center, r)) m += masses_[j];
  return m;
}

double DiscreteSpace::min_positive_distance() const {
  double best = std::numeric_limits<double>::infinity();
  for (double d : table_) {
    if (d > 0.0) best = std::min(best, d);
  }
  return best;
}

DiscreteSpace DiscreteSpace::with_masses(std::vector<double> masses) const {
  if (masses.size() != size()) throw InputError("mass count does not match point count");
  check_masses(masses);
  DiscreteSpace s = *this;
  s.masses_ = std::move(masses);
  return s;
}

}  // namespace hmvp
