#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hmvp/domain.hpp"
#include "hmvp/field.hpp"
#include "hmvp/space.hpp"

namespace hmvp {

/// (1 / mu(B(x, r))) * integral of f over B(x, r).
double ball_average(const MetricMeasureSpace& space, const FieldFunction& f,
                    const Point& x, double r);

/// ball_average(f, x, r) - f(x).  Positive where f is locally below its
/// averages (subharmonic side).
double harmonic_defect(const MetricMeasureSpace& space, const FieldFunction& f,
                       const Point& x, double r);

/// One admissible radius: a grid radius with |defect| < tol (lo == hi), or
/// a sign change of the defect refined by bisection to [lo, hi].
struct AdmissibleRadius {
  double lo = 0.0;
  double hi = 0.0;
  double defect = 0.0;
  double radius() const { return 0.5 * (lo + hi); }
};

/// Admissible radii at one point.
struct RadiusSet {
  Point center;
  std::vector<AdmissibleRadius> entries;  // sorted by radius

  bool empty() const { return entries.empty(); }
  std::vector<double> radii() const;
  double r_min() const;  // r^x_m
  double r_max() const;  // r^x_M
};

/// r^Omega_m and r^Omega_M over a family of radius sets.
double region_r_min(const std::vector<RadiusSet>& sets);
double region_r_max(const std::vector<RadiusSet>& sets);

enum class RadiusGridKind { geometric, linear };

std::vector<double> radius_grid(double r_min, double r_max, std::size_t count,
                                RadiusGridKind kind = RadiusGridKind::geometric);

/// Scans the defect over a radius grid, reports grid radii with
/// |defect| < tol and refines every sign change by bisection.  Throws
/// InputError("ball escapes domain") when B(x, r_max) is not compactly
/// contained in `domain`.
RadiusSet admissible_radii(const MetricMeasureSpace& space,
                           const FieldFunction& f, const Point& x,
                           const Domain& domain, double r_min, double r_max,
                           std::size_t grid, double tol,
                           RadiusGridKind kind = RadiusGridKind::geometric);

enum class Verdict {
  strongly_harmonic,
  weakly_harmonic,
  subharmonic,
  superharmonic,
  none
};

std::string_view to_string(Verdict v);

struct Violation {
  Point center;
  double radius = 0.0;
  double defect = 0.0;
};

struct Classification {
  Verdict verdict = Verdict::none;
  /// Largest |defect| over every tested ball.
  double max_defect = 0.0;
  double min_signed_defect = 0.0;
  double max_signed_defect = 0.0;
  /// Per sampled point, the tested radii with |defect| < tol.
  std::vector<RadiusSet> witness;
  /// The tested ball with the largest |defect|.
  std::optional<Violation> violation;
  std::size_t balls_tested = 0;
};

struct ClassifyOptions {
  std::vector<Point> points;   // empty: domain.interior_samples(space)
  std::vector<double> radii;   // candidate radii; balls leaving Omega are skipped
  double tol = 1e-8;
};

/// Verdict on the sampled set only:
///   strongly-harmonic  every tested |defect| < tol;
///   weakly-harmonic    every sampled point has at least one such radius;
///   subharmonic        every defect >= -tol (f below its averages);
///   superharmonic      every defect <= tol;
///   none               otherwise.
/// Results are reduced in sample order so verdicts are reproducible.
Classification classify(const MetricMeasureSpace& space, const FieldFunction& f,
                        const Domain& domain, const ClassifyOptions& opts);

}  // namespace hmvp
