#pragma once

#include <cmath>
#include <cstddef>
#include <algorithm>
#include <map>
#include <random>
#include <vector>

#include "hmvp/discrete_space.hpp"
#include "hmvp/dirichlet.hpp"
#include "hmvp/line_space.hpp"
#include "hmvp/space.hpp"
#include "hmvp/weight.hpp"

namespace hmvp::testing {

inline MetricMeasureSpace line(const WeightSpec& w) { return MetricMeasureSpace(WeightedLine(w)); }

/// Path 0 - 1 - ... - (n-1) with unit edges.
inline DiscreteSpace path(std::size_t n, std::vector<double> masses = {}) {
  std::vector<std::vector<double>> d(n, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) d[i][j] = std::abs(double(i) - double(j));
  if (masses.empty()) masses.assign(n, 1.0);
  return DiscreteSpace::from_table(d, masses);
}

inline DiscreteSpace unit_grid(double lo, double hi, double h) {
  return DiscreteSpace::grid(WeightedLine(weights::lebesgue()), lo, hi, h);
}

/// Random metric space: shortest paths of a random connected weighted
/// graph, so the triangle inequality holds by construction.
inline DiscreteSpace random_space(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> len(0.5, 2.0), mass(0.2, 3.0);
  std::vector<Edge> edges;
  for (std::size_t i = 1; i < n; ++i) {
    std::uniform_int_distribution<std::size_t> pick(0, i - 1);
    edges.push_back({pick(rng), i, len(rng)});
  }
  std::uniform_int_distribution<std::size_t> any(0, n - 1);
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t a = any(rng), b = any(rng);
    if (a != b) edges.push_back({a, b, len(rng)});
  }
  std::vector<double> masses(n);
  for (double& m : masses) m = mass(rng);
  return DiscreteSpace::from_edges(n, edges, masses);
}


/// Random measurable problem: Omega = a random half of the nodes, eps
/// chosen so the strip is nonempty, random boundary data on part of it.
inline DirichletProblem random_problem(std::mt19937_64& rng, std::size_t max_nodes = 30) {
  std::uniform_int_distribution<std::size_t> size(6, max_nodes);
  for (;;) {
    const std::size_t n = size(rng);
    DiscreteSpace s = random_space(rng, n);
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::shuffle(order.begin(), order.end(), rng);
    std::vector<std::size_t> omega(order.begin(), order.begin() + static_cast<long>(n / 2));
    std::uniform_real_distribution<double> epsd(1.0, 3.0), val(-5.0, 5.0);
    const double eps = epsd(rng);
    try {
      BoundaryStrip strip = boundary_strip(s, omega, eps);
      std::map<std::size_t, double> g;
      for (std::size_t j : strip.gamma_eps) {
        if (rng() % 3 != 0) g[j] = val(rng);
      }
      DirichletProblem p = make_measurable_problem(s, omega, eps, g);
      p.tol = 1e-11;
      p.max_iters = 2000000;
      // Interior balls must stay in Omega_eps; retry otherwise.
      (void)direct_solve_oracle(p);
      return p;
    } catch (const std::exception&) {
      continue;
    }
  }
}

}  // namespace hmvp::testing
