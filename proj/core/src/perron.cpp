#include "hmvp/perron.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hmvp/errors.hpp"
#include "hmvp/meanvalue.hpp"

namespace hmvp {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct NodeSets {
  std::vector<std::size_t> interior;
  std::vector<std::size_t> boundary;
  std::vector<char> in_interior;
  std::vector<char> in_closure;
};

NodeSets node_sets(const DiscreteSpace& space, const Domain& omega) {
  if (!omega.is_nodes()) throw InputError("Perron constructions need a node domain");
  NodeSets s;
  s.interior = omega.interior_nodes();
  for (const Point& p : omega.boundary_samples(MetricMeasureSpace(space))) {
    s.boundary.push_back(std::get<NodeId>(p).index);
  }
  s.in_interior.assign(space.size(), 0);
  s.in_closure.assign(space.size(), 0);
  for (std::size_t i : s.interior) {
    if (i >= space.size()) throw InputError("interior node out of range");
    s.in_interior[i] = 1;
    s.in_closure[i] = 1;
  }
  for (std::size_t i : s.boundary) s.in_closure[i] = 1;
  return s;
}

double inner_radius(const DiscreteSpace& space, const ModificationOptions& opts) {
  const double eps = opts.inner_eps.value_or(1.5 * space.min_positive_distance());
  if (!(eps > 0.0)) throw InputError("inner radius must be positive");
  return eps;
}

// Replaces u on the ball nodes by the solution of the ball problem.
void modify(const DiscreteSpace& space, std::vector<double>& u, std::size_t x0,
            double r, const NodeSets& sets, double eps) {
  std::vector<std::size_t> ball = space.ball(x0, r);
  // The closed ball d(x0, y) <= r has to stay inside Omega.
  for (std::size_t j = 0; j < space.size(); ++j) {
    if (space.distance(x0, j) <= r && !sets.in_interior[j]) {
      throw InputError("ball not compactly contained in Omega");
    }
  }
  const BoundaryStrip strip = boundary_strip(space, ball, eps);
  std::map<std::size_t, double> data;
  for (std::size_t j : strip.gamma_eps) {
    if (!sets.in_closure[j]) throw InputError("ball not compactly contained in Omega");
    data[j] = u[j];
  }
  const DirichletProblem problem = make_measurable_problem(space, ball, eps, data);
  const std::vector<double> solved = direct_solve_oracle(problem);
  for (std::size_t j : ball) u[j] = solved[j];
}

double interior_defect(const DiscreteSpace& space, const std::vector<double>& u,
                       const NodeSets& sets, double eps, double* min_signed = nullptr) {
  double worst = 0.0;
  double lowest = std::numeric_limits<double>::infinity();
  for (std::size_t x : sets.interior) {
    double s = 0.0, m = 0.0;
    for (std::size_t j : space.ball(x, eps)) {
      if (!sets.in_closure[j]) throw InputError("an inner ball leaves the closure of Omega");
      s += space.mass(j) * u[j];
      m += space.mass(j);
    }
    const double d = s / m - u[x];
    worst = std::max(worst, std::abs(d));
    lowest = std::min(lowest, d);
  }
  if (min_signed) *min_signed = lowest;
  return worst;
}

}  // namespace

FieldFunction harmonic_modification(const DiscreteSpace& space,
                                    const FieldFunction& f, std::size_t x0,
                                    double r, const Domain& omega,
                                    const ModificationOptions& opts) {
  const NodeSets sets = node_sets(space, omega);
  if (x0 >= space.size() || !sets.in_interior[x0]) throw InputError("ball center not in Omega");
  if (!(r > 0.0)) throw InputError("radius must be positive");
  std::vector<double> u = f.values_on(space);
  modify(space, u, x0, r, sets, inner_radius(space, opts));
  return FieldFunction::sampled(std::move(u), f.id() + "~");
}

std::vector<ScheduledBall> default_schedule(const DiscreteSpace& space,
                                            const Domain& omega) {
  const MetricMeasureSpace s(space);
  std::vector<ScheduledBall> out;
  for (std::size_t x : omega.interior_nodes()) {
    const double r = 0.25 * omega.distance_to_boundary(s, NodeId{x});
    if (std::isfinite(r) && r > 0.0) out.push_back({x, r});
  }
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return a.radius > b.radius;
  });
  return out;
}

PerronResult lower_perron(const DiscreteSpace& space, const Domain& omega,
                          const std::map<std::size_t, double>& g,
                          const SubharmonicFamilyPlan& plan) {
  const NodeSets sets = node_sets(space, omega);
  if (plan.generators.empty()) throw InputError("Perron plan has no generators");
  const double eps = inner_radius(space, plan.modification);
  const double tol = 1e-10;

  std::vector<double> u(space.size(), kNaN);
  for (std::size_t b : sets.boundary) {
    auto it = g.find(b);
    if (it == g.end()) throw InputError("boundary data missing at node " + space.label(b));
    u[b] = it->second;
  }

  std::vector<double> vmax(space.size(), -std::numeric_limits<double>::infinity());
  for (const FieldFunction& gen : plan.generators) {
    std::vector<double> v = gen.values_on(space);
    for (std::size_t b : sets.boundary) {
      if (v[b] > u[b] + tol) {
        throw InputError("generator '" + gen.id() + "' exceeds g at boundary node " +
                         space.label(b));
      }
      v[b] = u[b];
    }
    for (std::size_t x : sets.interior) {
      if (!std::isfinite(v[x])) throw InputError("generator '" + gen.id() + "' is not finite");
    }
    double lowest = 0.0;
    interior_defect(space, v, sets, eps, &lowest);
    if (lowest < -tol) {
      throw InputError("generator '" + gen.id() + "' is not subharmonic (defect " +
                       std::to_string(lowest) + ")");
    }
    for (std::size_t x : sets.interior) vmax[x] = std::max(vmax[x], v[x]);
  }
  for (std::size_t x : sets.interior) u[x] = vmax[x];

  const std::vector<ScheduledBall> schedule =
      plan.schedule.empty() ? default_schedule(space, omega) : plan.schedule;
  PerronResult out{FieldFunction::sampled({}), {}, 0.0};
  auto max_value = [&] {
    double m = -std::numeric_limits<double>::infinity();
    for (std::size_t x : sets.interior) m = std::max(m, u[x]);
    return m;
  };
  out.rounds.push_back({0, 0.0, max_value(), interior_defect(space, u, sets, eps)});
  for (std::size_t k = 1; k <= plan.rounds && !schedule.empty(); ++k) {
    const std::vector<double> before = u;
    for (const ScheduledBall& b : schedule) modify(space, u, b.center, b.radius, sets, eps);
    PerronRound round{k, 0.0, max_value(), interior_defect(space, u, sets, eps)};
    for (std::size_t x : sets.interior) {
      round.max_change = std::max(round.max_change, std::abs(u[x] - before[x]));
    }
    out.rounds.push_back(round);
    if (round.max_change <= plan.round_tol) break;
  }
  out.defect = out.rounds.back().defect;
  out.u = FieldFunction::sampled(std::move(u), "perron");
  return out;
}

BarrierVerdict verify_barrier(const MetricMeasureSpace& space,
                              const Domain& omega,
                              const BarrierCandidate& candidate,
                              const BarrierOptions& opts) {
  BarrierVerdict v;
  v.min_defect = std::numeric_limits<double>::infinity();
  for (const Point& x : omega.interior_samples(space, opts.samples)) {
    double r = 0.5 * omega.distance_to_boundary(space, x);
    if (!std::isfinite(r)) r = opts.radius_cap;
    r = std::min(r, opts.radius_cap);
    if (!(r > 0.0)) continue;
    v.min_defect = std::min(v.min_defect, harmonic_defect(space, candidate.f, x, r));
  }
  v.subharmonic = v.min_defect >= -opts.tol;
  if (!v.subharmonic) v.failures.push_back("not locally subharmonic");

  v.value_at_x0 = space.evaluate(candidate.f, candidate.x0);
  v.vanishes = std::abs(v.value_at_x0) < opts.tol;
  if (!v.vanishes) v.failures.push_back("does not vanish at x0");

  v.max_other_boundary = -std::numeric_limits<double>::infinity();
  for (const Point& b : omega.boundary_samples(space)) {
    if (space.distance(b, candidate.x0) == 0.0) continue;
    v.max_other_boundary = std::max(v.max_other_boundary, space.evaluate(candidate.f, b));
  }
  v.negative_elsewhere = v.max_other_boundary < -opts.tol;
  if (!v.negative_elsewhere) v.failures.push_back("not negative on the rest of the boundary");
  v.valid = v.subharmonic && v.vanishes && v.negative_elsewhere;
  return v;
}

RegularityReport boundary_regularity_check(const MetricMeasureSpace& space,
                                           const FieldFunction& perron,
                                           const Point& x0, double g_x0,
                                           const BarrierVerdict& barrier,
                                           const std::vector<Point>& approach,
                                           double tol) {
  if (!barrier.valid) throw InputError("boundary regularity check needs a verified barrier");
  if (approach.empty()) throw InputError("no approach points");
  RegularityReport rep;
  for (const Point& y : approach) {
    const double value = space.evaluate(perron, y);
    rep.rows.push_back({space.distance(x0, y), value, std::abs(value - g_x0)});
  }
  std::stable_sort(rep.rows.begin(), rep.rows.end(),
                   [](const auto& a, const auto& b) { return a.distance > b.distance; });
  rep.monotone = true;
  for (std::size_t i = 1; i < rep.rows.size(); ++i) {
    if (rep.rows[i].deviation > rep.rows[i - 1].deviation) rep.monotone = false;
  }
  rep.pass = rep.monotone && rep.rows.back().deviation <= tol;
  return rep;
}

}  // namespace hmvp
