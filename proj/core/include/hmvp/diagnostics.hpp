#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hmvp/space.hpp"

namespace hmvp {

/// Where measure_diagnostics samples the space.
struct SamplePlan {
  std::vector<Point> centers;
  std::vector<double> radii;
  /// Annulus thickness fractions eps in (0, 1).  Ignored when
  /// reciprocal_eps is set, in which case eps = 1/r for every radius r > 1.
  std::vector<double> epsilons{0.5, 0.2, 0.1, 0.05, 0.02, 0.01, 0.005, 0.002, 0.001};
  bool reciprocal_eps = false;
  /// Accepted fits have relative residual (or envelope drift) at most this.
  double threshold = 1e-3;
  /// Ahlfors regularity is reported satisfied when the two-sided constant
  /// needed on the samples stays below this.
  double ahlfors_max_constant = 100.0;
  /// Probe distances for the metric-continuity table (first center, radius
  /// = median of radii).
  std::vector<double> continuity_probes{0.1, 0.01, 0.001, 0.0001};
  /// eps used for the annulus_ratio CSV column (when not reciprocal).
  double report_eps = 0.1;
};

struct AnnularFit {
  double a = 1.0;
  double delta = 1.0;
};

struct UniformFit {
  double c = 0.0;
  double q = 0.0;
  double residual = 0.0;
};

struct AhlforsReport {
  double c = 0.0;
  double q = 0.0;
  bool satisfied = false;
};

struct ContinuityRow {
  double probe = 0.0;
  double sup_symmetric_difference = 0.0;
};

struct DiagnosticsRow {
  std::string x;
  double r = 0.0;
  double mu_b = 0.0;
  double ratio_2b = 0.0;
  double annulus_ratio = 0.0;
};

struct DiagnosticsReport {
  double doubling_constant = 1.0;
  std::optional<AnnularFit> annular_fit;     // nullopt: "no fit"
  std::optional<UniformFit> uniform_fit;     // nullopt: "not uniform"
  /// Regression of log mu(B) on log r, reported even when rejected.
  UniformFit uniform_regression;
  AhlforsReport ahlfors;
  std::vector<ContinuityRow> metric_continuity;
  std::vector<DiagnosticsRow> rows;
};

/// mu(B(x, r) \ B(x, r (1 - eps))) / mu(B(x, r)).
double annulus_ratio(const MetricMeasureSpace& space, const Point& x, double r,
                     double eps);

/// Doubling constant, annular-decay and uniform fits, Ahlfors bounds and a
/// metric-continuity table over the plan's samples.
///
/// Annular decay: for delta = 1, 0.95, ..., 0.05 the smallest admissible
/// envelope max a / eps^delta is computed on all samples and on the samples
/// with eps at least the median eps.  delta is accepted when the two agree
/// to the relative threshold, i.e. the envelope has saturated; the largest
/// accepted delta is reported with A = max(1, envelope).
DiagnosticsReport measure_diagnostics(const MetricMeasureSpace& space,
                                      const SamplePlan& plan);

}  // namespace hmvp
