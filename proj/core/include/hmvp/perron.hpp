#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hmvp/dirichlet.hpp"
#include "hmvp/domain.hpp"
#include "hmvp/field.hpp"
#include "hmvp/space.hpp"

namespace hmvp {

struct ModificationOptions {
  /// Averaging radius of the inner ball problem; default 1.5 x the smallest
  /// node spacing.
  std::optional<double> inner_eps;
};

/// Keeps f outside B(x0, r) and replaces it inside by the solution of the
/// averaging problem on the ball nodes, with strip data taken from f.  The
/// ball and its strip must lie in omega together with its boundary nodes.
FieldFunction harmonic_modification(const DiscreteSpace& space,
                                    const FieldFunction& f, std::size_t x0,
                                    double r, const Domain& omega,
                                    const ModificationOptions& opts = {});

struct ScheduledBall {
  std::size_t center = 0;
  double radius = 0.0;
};

struct SubharmonicFamilyPlan {
  std::vector<FieldFunction> generators;
  /// Empty: balls at every interior node with radius dist-to-boundary / 4,
  /// largest first (ties by node).
  std::vector<ScheduledBall> schedule;
  std::size_t rounds = 200;
  /// Stop early once a whole round moves no value by more than this.
  double round_tol = 1e-13;
  ModificationOptions modification;
};

std::vector<ScheduledBall> default_schedule(const DiscreteSpace& space,
                                            const Domain& omega);

struct PerronRound {
  std::size_t round = 0;
  double max_change = 0.0;
  double max_value = 0.0;
  double defect = 0.0;  // max |defect| over interior at the inner radius
};

struct PerronResult {
  FieldFunction u;
  std::vector<PerronRound> rounds;
  double defect = 0.0;
};

/// Lower Perron solution over the finite family generated by the plan: the
/// pointwise maximum of the generators on omega (g on the boundary nodes),
/// followed by rounds of harmonic modifications along the schedule.
/// Requires every generator to be subharmonic at the inner radius and
/// below g on the boundary.
PerronResult lower_perron(const DiscreteSpace& space, const Domain& omega,
                          const std::map<std::size_t, double>& g,
                          const SubharmonicFamilyPlan& plan);

struct BarrierCandidate {
  FieldFunction f;
  Point x0;
};

struct BarrierVerdict {
  bool valid = false;
  bool subharmonic = false;
  bool vanishes = false;
  bool negative_elsewhere = false;
  double min_defect = 0.0;
  double value_at_x0 = 0.0;
  double max_other_boundary = 0.0;
  std::vector<std::string> failures;
};

struct BarrierOptions {
  double tol = 1e-8;
  /// Cap on the local radius R_x = dist(x, boundary) / 2.
  double radius_cap = 0.25;
  std::size_t samples = 41;
};

BarrierVerdict verify_barrier(const MetricMeasureSpace& space,
                              const Domain& omega,
                              const BarrierCandidate& candidate,
                              const BarrierOptions& opts = {});

struct ApproachRow {
  double distance = 0.0;
  double value = 0.0;
  double deviation = 0.0;
};

struct RegularityReport {
  std::vector<ApproachRow> rows;
  bool monotone = false;
  bool pass = false;
};

/// |P[g](y) - g(x0)| along the approach points, sorted by decreasing
/// distance to x0.  Passes when the deviations never increase and the last
/// one is at most tol.  Throws InputError unless the barrier is valid.
RegularityReport boundary_regularity_check(const MetricMeasureSpace& space,
                                           const FieldFunction& perron,
                                           const Point& x0, double g_x0,
                                           const BarrierVerdict& barrier,
                                           const std::vector<Point>& approach,
                                           double tol);

}  // namespace hmvp
