#include "hmvp/dirichlet.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <utility>

#include "hmvp/parallel.hpp"

namespace hmvp {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<std::size_t> sorted_unique(std::vector<std::size_t> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

bool member(const std::vector<std::size_t>& sorted, std::size_t i) {
  return std::binary_search(sorted.begin(), sorted.end(), i);
}

std::vector<std::size_t> merge(const std::vector<std::size_t>& a,
                               const std::vector<std::size_t>& b) {
  std::vector<std::size_t> out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

void check_nodes(const DiscreteSpace& space, const std::vector<std::size_t>& v) {
  for (std::size_t i : v) {
    if (i >= space.size()) throw InputError("node id " + std::to_string(i) + " out of range");
  }
}

double dist_to_set(const DiscreteSpace& s, std::size_t x,
                   const std::vector<std::size_t>& set) {
  double d = kInf;
  for (std::size_t j : set) d = std::min(d, s.distance(x, j));
  return d;
}

// Averaging stencil of one updated node: Tu(x) = (1 - theta) anchor +
// theta * sum(m_j u_j) / total.
struct Stencil {
  std::size_t node = 0;
  std::vector<std::size_t> members;
  std::vector<double> masses;
  double total = 0.0;
  double theta = 1.0;
  double anchor = 0.0;

  double apply(const std::vector<double>& u) const {
    double s = 0.0;
    for (std::size_t k = 0; k < members.size(); ++k) s += masses[k] * u[members[k]];
    const double avg = s / total;
    if (theta == 1.0) return avg;
    return (1.0 - theta) * anchor + theta * avg;
  }
};

Stencil make_stencil(const DiscreteSpace& s, std::size_t x, double r) {
  Stencil st;
  st.node = x;
  st.members = s.ball(x, r);
  for (std::size_t j : st.members) {
    st.masses.push_back(s.mass(j));
    st.total += s.mass(j);
  }
  return st;
}

void require_inside(const Stencil& st, const std::vector<std::size_t>& allowed,
                    const char* what) {
  for (std::size_t j : st.members) {
    if (!member(allowed, j)) throw InputError(what);
  }
}

std::vector<double> apply_all(const std::vector<Stencil>& ops,
                              const std::vector<double>& u) {
  std::vector<double> out(ops.size());
  parallel::for_each_index(
      ops.size(), [&](std::size_t k) { out[k] = ops[k].apply(u); }, 512);
  return out;
}

Solution iterate(const std::vector<Stencil>& ops, std::vector<double> u,
                 const std::vector<std::size_t>& support, double tol,
                 std::size_t max_iters, bool keep_iterates) {
  if (!(tol > 0.0)) throw InputError("tolerance must be positive");
  SolveTrace trace;
  if (keep_iterates) trace.iterates.push_back(u);
  auto sup_abs = [&](const std::vector<double>& v) {
    double m = 0.0;
    for (std::size_t j : support) m = std::max(m, std::abs(v[j]));
    return m;
  };

  std::vector<double> next = apply_all(ops, u);
  for (std::size_t k = 1;; ++k) {
    IterationRecord rec;
    rec.iter = k;
    rec.min_increment = kInf;
    rec.max_increment = -kInf;
    for (std::size_t i = 0; i < ops.size(); ++i) {
      const double inc = next[i] - u[ops[i].node];
      rec.sup_delta = std::max(rec.sup_delta, std::abs(inc));
      rec.min_increment = std::min(rec.min_increment, inc);
      rec.max_increment = std::max(rec.max_increment, inc);
      u[ops[i].node] = next[i];
    }
    if (ops.empty()) rec.min_increment = rec.max_increment = 0.0;
    rec.sup_abs = sup_abs(u);
    if (keep_iterates) trace.iterates.push_back(u);

    // Residual of u_k, which is also the size of the next step.
    next = apply_all(ops, u);
    for (std::size_t i = 0; i < ops.size(); ++i) {
      rec.residual = std::max(rec.residual, std::abs(next[i] - u[ops[i].node]));
    }
    trace.records.push_back(rec);
    trace.iterations = k;
    trace.residual = rec.residual;
    if (!std::isfinite(rec.sup_delta)) {
      trace.final_values = u;
      throw ConvergenceError("iteration produced non-finite values", std::move(trace));
    }
    if (rec.sup_delta < tol && rec.residual < tol) break;
    if (k >= max_iters) {
      trace.final_values = u;
      throw ConvergenceError("no convergence within " + std::to_string(max_iters) +
                                 " iterations",
                             std::move(trace));
    }
  }
  trace.final_values = u;
  Solution sol{FieldFunction::sampled(u, "u"), std::move(trace)};
  return sol;
}

std::vector<Stencil> stencils_for(const DirichletProblem& p) {
  const DiscreteSpace& s = p.space.discrete();
  std::vector<Stencil> ops;
  ops.reserve(p.strip.omega.size());
  std::vector<double> dist_gamma;
  for (std::size_t x : p.strip.omega) {
    Stencil st = make_stencil(s, x, p.strip.eps);
    require_inside(st, p.strip.omega_eps, "an eps-ball of an interior node leaves Omega_eps");
    if (p.variant == DirichletVariant::continuous &&
        member(p.strip.gamma_eps_eps, x)) {
      // theta = 1 off Gamma_{eps,eps}; clamp at 1 inside.
      st.theta = std::min(1.0, dist_to_set(s, x, p.strip.gamma_eps) / p.strip.eps);
      st.anchor = p.data[x];
      if (st.theta < 1.0 && !std::isfinite(st.anchor)) {
        throw InputError("boundary data missing on Gamma_{eps,eps}");
      }
    }
    ops.push_back(std::move(st));
  }
  return ops;
}

std::vector<std::size_t> fixed_nodes(const DirichletProblem& p) {
  std::vector<std::size_t> out;
  std::set_difference(p.strip.omega_eps.begin(), p.strip.omega_eps.end(),
                      p.strip.omega.begin(), p.strip.omega.end(),
                      std::back_inserter(out));
  return out;
}

std::pair<double, double> data_range(const DirichletProblem& p) {
  double lo = kInf, hi = -kInf;
  const auto& nodes = p.variant == DirichletVariant::continuous ? p.strip.gamma_eps_eps
                                                                : p.strip.gamma_eps;
  for (std::size_t j : nodes) {
    const double v = p.data[j];
    if (!std::isfinite(v)) throw InputError("boundary data must be finite on the strip");
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  return {lo, hi};
}

}  // namespace

BoundaryStrip boundary_strip(const DiscreteSpace& space,
                             std::vector<std::size_t> omega, double eps) {
  if (!(eps > 0.0)) throw InputError("eps must be positive");
  omega = sorted_unique(std::move(omega));
  if (omega.empty()) throw InputError("Omega is empty");
  check_nodes(space, omega);
  BoundaryStrip s;
  s.eps = eps;
  s.omega = omega;
  for (std::size_t j = 0; j < space.size(); ++j) {
    if (member(omega, j)) continue;
    if (dist_to_set(space, j, omega) <= eps) s.gamma_eps.push_back(j);
  }
  if (s.gamma_eps.empty()) throw InputError("no boundary strip");
  s.omega_eps = merge(s.omega, s.gamma_eps);
  return s;
}

BoundaryStrip continuous_strip(const DiscreteSpace& space,
                               std::vector<std::size_t> omega,
                               std::vector<std::size_t> boundary, double eps) {
  if (!(eps > 0.0)) throw InputError("eps must be positive");
  omega = sorted_unique(std::move(omega));
  boundary = sorted_unique(std::move(boundary));
  if (omega.empty()) throw InputError("Omega is empty");
  if (boundary.empty()) throw InputError("continuous variant needs boundary nodes");
  check_nodes(space, omega);
  check_nodes(space, boundary);
  for (std::size_t b : boundary) {
    if (member(omega, b)) throw InputError("boundary node inside Omega");
  }
  BoundaryStrip s;
  s.eps = eps;
  s.omega = omega;
  s.boundary = boundary;
  for (std::size_t j = 0; j < space.size(); ++j) {
    if (dist_to_set(space, j, boundary) <= eps) s.gamma_eps_eps.push_back(j);
  }
  std::set_difference(s.gamma_eps_eps.begin(), s.gamma_eps_eps.end(), omega.begin(),
                      omega.end(), std::back_inserter(s.gamma_eps));
  if (s.gamma_eps.empty()) throw InputError("no boundary strip");
  s.omega_eps = merge(s.omega, s.gamma_eps_eps);
  return s;
}

DirichletProblem make_measurable_problem(const DiscreteSpace& space,
                                         std::vector<std::size_t> omega,
                                         double eps,
                                         const std::map<std::size_t, double>& g) {
  DirichletProblem p{space, DirichletVariant::measurable,
                     boundary_strip(space, std::move(omega), eps),
                     std::vector<double>(space.size(), kNaN)};
  for (std::size_t j : p.strip.gamma_eps) p.data[j] = 0.0;
  for (const auto& [node, value] : g) {
    if (!member(p.strip.gamma_eps, node)) {
      throw InputError("boundary node " + std::to_string(node) + " is not in Gamma_eps");
    }
    if (!std::isfinite(value)) throw InputError("boundary data must be finite");
    p.data[node] = value;
  }
  return p;
}

DirichletProblem make_continuous_problem(
    const DiscreteSpace& space, std::vector<std::size_t> omega, double eps,
    const std::map<std::size_t, double>& g,
    const std::optional<FieldFunction>& extension) {
  std::vector<std::size_t> boundary;
  for (const auto& [node, value] : g) {
    if (!std::isfinite(value)) throw InputError("boundary data must be finite");
    boundary.push_back(node);
  }
  DirichletProblem p{space, DirichletVariant::continuous,
                     continuous_strip(space, std::move(omega), boundary, eps),
                     std::vector<double>(space.size(), kNaN)};
  for (std::size_t j : p.strip.gamma_eps_eps) {
    if (auto it = g.find(j); it != g.end()) {
      p.data[j] = it->second;
    } else if (extension) {
      p.data[j] = extension->at_node(space, j);
    } else {
      double best = kInf;
      for (const auto& [node, value] : g) {
        const double d = space.distance(j, node);
        if (d < best) {
          best = d;
          p.data[j] = value;
        }
      }
    }
  }
  return p;
}

Solution dp_solve_measurable(const DirichletProblem& problem,
                             const SolveOptions& opts) {
  if (problem.variant != DirichletVariant::measurable) {
    throw InputError("problem is not a measurable-data problem");
  }
  const auto [lo, hi] = data_range(problem);
  (void)hi;
  const std::vector<Stencil> ops = stencils_for(problem);
  std::vector<double> u(problem.space.discrete().size(), kNaN);
  for (std::size_t j : problem.strip.gamma_eps) u[j] = problem.data[j];
  const double seed = opts.seed.value_or(lo);
  for (std::size_t x : problem.strip.omega) u[x] = seed;
  return iterate(ops, std::move(u), problem.strip.omega_eps, problem.tol,
                 problem.max_iters, opts.keep_iterates);
}

Solution dp_solve_continuous(const DirichletProblem& problem,
                             const SolveOptions& opts) {
  if (problem.variant != DirichletVariant::continuous) {
    throw InputError("problem is not a continuous-data problem");
  }
  const auto [lo, hi] = data_range(problem);
  (void)hi;
  const std::vector<Stencil> ops = stencils_for(problem);
  std::vector<double> u(problem.space.discrete().size(), kNaN);
  for (std::size_t j : fixed_nodes(problem)) u[j] = problem.data[j];
  const double seed = opts.seed.value_or(lo - 1.0);
  for (std::size_t x : problem.strip.omega) u[x] = seed;
  return iterate(ops, std::move(u), problem.strip.omega_eps, problem.tol,
                 problem.max_iters, opts.keep_iterates);
}

std::vector<double> direct_solve_oracle(const DirichletProblem& problem) {
  const DiscreteSpace& s = problem.space.discrete();
  data_range(problem);
  const std::vector<Stencil> ops = stencils_for(problem);
  const std::vector<std::size_t>& omega = problem.strip.omega;
  const auto n = static_cast<Eigen::Index>(omega.size());
  std::vector<Eigen::Index> slot(s.size(), -1);
  for (Eigen::Index i = 0; i < n; ++i) slot[omega[static_cast<std::size_t>(i)]] = i;

  // Every interior node must reach an anchored node (one whose ball touches
  // the strip or whose blend weight is below one) along ball memberships.
  std::vector<char> anchored(omega.size(), 0);
  std::vector<std::vector<std::size_t>> reverse(omega.size());
  for (std::size_t i = 0; i < ops.size(); ++i) {
    if (ops[i].theta < 1.0) anchored[i] = 1;
    for (std::size_t j : ops[i].members) {
      if (slot[j] < 0) anchored[i] = 1;
      else if (static_cast<std::size_t>(slot[j]) != i) reverse[static_cast<std::size_t>(slot[j])].push_back(i);
    }
  }
  std::vector<char> reached(anchored);
  std::deque<std::size_t> queue;
  for (std::size_t i = 0; i < anchored.size(); ++i) {
    if (anchored[i]) queue.push_back(i);
  }
  while (!queue.empty()) {
    const std::size_t j = queue.front();
    queue.pop_front();
    for (std::size_t i : reverse[j]) {
      if (!reached[i]) {
        reached[i] = 1;
        queue.push_back(i);
      }
    }
  }
  if (std::find(reached.begin(), reached.end(), 0) != reached.end()) {
    throw NumericalError("degenerate problem: interior component without access to the strip");
  }

  Eigen::MatrixXd a = Eigen::MatrixXd::Identity(n, n);
  Eigen::VectorXd b = Eigen::VectorXd::Zero(n);
  for (std::size_t i = 0; i < ops.size(); ++i) {
    const Stencil& st = ops[i];
    const auto row = static_cast<Eigen::Index>(i);
    if (st.theta < 1.0) b[row] += (1.0 - st.theta) * st.anchor;
    for (std::size_t k = 0; k < st.members.size(); ++k) {
      const double w = st.theta * st.masses[k] / st.total;
      const std::size_t j = st.members[k];
      if (slot[j] >= 0) a(row, slot[j]) -= w;
      else b[row] += w * problem.data[j];
    }
  }
  const Eigen::FullPivLU<Eigen::MatrixXd> lu(a);
  if (!lu.isInvertible()) throw NumericalError("degenerate problem: singular system");
  const Eigen::VectorXd x = lu.solve(b);

  std::vector<double> u(s.size(), kNaN);
  for (std::size_t j : fixed_nodes(problem)) u[j] = problem.data[j];
  for (Eigen::Index i = 0; i < n; ++i) u[omega[static_cast<std::size_t>(i)]] = x[i];
  return u;
}

LiftResult subharmonic_lift(const DiscreteSpace& space,
                            std::vector<std::size_t> omega,
                            std::vector<std::size_t> boundary,
                            const FieldFunction& v, double tol,
                            std::size_t max_iters, bool keep_iterates) {
  omega = sorted_unique(std::move(omega));
  boundary = sorted_unique(std::move(boundary));
  if (omega.empty() || boundary.empty()) throw InputError("lift needs interior and boundary nodes");
  check_nodes(space, omega);
  check_nodes(space, boundary);
  const std::vector<std::size_t> closure = merge(omega, boundary);

  const std::vector<double> vv = v.values_on(space);
  std::vector<Stencil> ops;
  std::vector<double> radii;
  for (std::size_t x : omega) {
    if (member(boundary, x)) throw InputError("boundary node inside Omega");
    const double r = 0.5 * dist_to_set(space, x, boundary);
    Stencil st = make_stencil(space, x, r);
    require_inside(st, omega, "a lift ball B(x, r_x) leaves Omega");
    const double defect = st.apply(vv) - vv[x];
    if (defect < -tol) {
      throw InputError("v is not subharmonic at node " + std::to_string(x) +
                       " (defect " + std::to_string(defect) + ")");
    }
    radii.push_back(r);
    ops.push_back(std::move(st));
  }
  std::vector<double> u(space.size(), kNaN);
  for (std::size_t j : closure) u[j] = vv[j];
  LiftResult out{iterate(ops, std::move(u), closure, tol, max_iters, keep_iterates),
                 std::move(radii)};
  return out;
}

}  // namespace hmvp
