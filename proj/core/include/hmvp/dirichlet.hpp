#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "hmvp/errors.hpp"
#include "hmvp/field.hpp"
#include "hmvp/space.hpp"

namespace hmvp {

/// Omega, the exterior strip Gamma_eps = {x outside Omega : dist(x, Omega) <= eps}
/// and their union.  The continuous variant additionally carries the
/// boundary nodes and Gamma_{eps,eps} = {x : dist(x, boundary) <= eps}; its
/// Gamma_eps is then Gamma_{eps,eps} \ Omega.  Node lists are sorted.
struct BoundaryStrip {
  std::vector<std::size_t> omega;
  std::vector<std::size_t> gamma_eps;
  std::vector<std::size_t> omega_eps;
  double eps = 0.0;
  std::vector<std::size_t> boundary;
  std::vector<std::size_t> gamma_eps_eps;
};

/// Throws InputError("no boundary strip") when Gamma_eps is empty.
BoundaryStrip boundary_strip(const DiscreteSpace& space,
                             std::vector<std::size_t> omega, double eps);
BoundaryStrip continuous_strip(const DiscreteSpace& space,
                               std::vector<std::size_t> omega,
                               std::vector<std::size_t> boundary, double eps);

enum class DirichletVariant { measurable, continuous };

struct DirichletProblem {
  MetricMeasureSpace space;
  DirichletVariant variant = DirichletVariant::measurable;
  BoundaryStrip strip;
  /// F per node; meaningful on the strip only (NaN elsewhere).
  std::vector<double> data;
  double tol = 1e-10;
  std::size_t max_iters = 100000;
};

/// F = g on the given boundary nodes (which must lie in Gamma_eps) and 0 on
/// the rest of the strip.
DirichletProblem make_measurable_problem(const DiscreteSpace& space,
                                         std::vector<std::size_t> omega,
                                         double eps,
                                         const std::map<std::size_t, double>& g);

/// F = g on the boundary nodes; elsewhere on Gamma_{eps,eps} the extension
/// when given, else the value at the nearest boundary node (lowest index on
/// ties).
DirichletProblem make_continuous_problem(
    const DiscreteSpace& space, std::vector<std::size_t> omega, double eps,
    const std::map<std::size_t, double>& g,
    const std::optional<FieldFunction>& extension = std::nullopt);

struct IterationRecord {
  std::size_t iter = 0;
  double sup_delta = 0.0;     // max |u_k - u_{k-1}|
  double residual = 0.0;      // max |T u_k - u_k|
  double min_increment = 0.0; // min (u_k - u_{k-1}) over Omega
  double max_increment = 0.0; // max (u_k - u_{k-1}) over Omega
  double sup_abs = 0.0;       // max |u_k| over Omega_eps
};

struct SolveTrace {
  std::vector<IterationRecord> records;
  /// Full per-node tables u_0, u_1, ... when requested.
  std::vector<std::vector<double>> iterates;
  std::vector<double> final_values;
  double residual = 0.0;
  std::size_t iterations = 0;
};

class ConvergenceError : public NumericalError {
 public:
  ConvergenceError(const std::string& what, SolveTrace trace)
      : NumericalError(what), trace_(std::move(trace)) {}
  const SolveTrace& trace() const { return trace_; }

 private:
  SolveTrace trace_;
};

struct SolveOptions {
  bool keep_iterates = false;
  /// Constant seed on Omega.  Default: inf F over the strip (measurable),
  /// one below inf F (continuous).
  std::optional<double> seed;
};

struct Solution {
  FieldFunction u;  // sampled on every node; NaN off Omega_eps
  SolveTrace trace;
};

/// Jacobi iteration u_{i+1} = T u_i with T u(x) = average of u over
/// B(x, eps) for x in Omega and T u = F on Gamma_eps.  Stops when the step
/// and the residual are both below tol; throws ConvergenceError carrying
/// the trace after max_iters.
Solution dp_solve_measurable(const DirichletProblem& problem,
                             const SolveOptions& opts = {});

/// Blended operator (1 - theta) F + theta * average over B(x, eps) with
/// theta = dist(x, Gamma_eps)/eps on Omega within eps of the boundary and
/// theta = 1 deeper inside; F is kept on Gamma_{eps,eps} \ Omega.
Solution dp_solve_continuous(const DirichletProblem& problem,
                             const SolveOptions& opts = {});

/// Solves the fixed-point equation as a linear system over Omega.  Throws
/// NumericalError("degenerate problem") when some interior node cannot
/// reach the strip through chains of eps-balls or the system is singular.
std::vector<double> direct_solve_oracle(const DirichletProblem& problem);

struct LiftResult {
  Solution solution;
  /// r_x = dist(x, boundary) / 2 per interior node (same order as omega).
  std::vector<double> radii;
};

/// Starting from a subharmonic v with v = g on the boundary, iterates
/// T u(x) = average of u over B(x, r_x), r_x = dist(x, boundary)/2, on
/// Omega and keeps u = v on the boundary nodes.  The iterates increase to a
/// function that is weakly harmonic with radii r_x.
LiftResult subharmonic_lift(const DiscreteSpace& space,
                            std::vector<std::size_t> omega,
                            std::vector<std::size_t> boundary,
                            const FieldFunction& v, double tol = 1e-10,
                            std::size_t max_iters = 200000,
                            bool keep_iterates = false);

}  // namespace hmvp
