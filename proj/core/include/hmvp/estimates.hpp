#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hmvp/domain.hpp"
#include "hmvp/field.hpp"
#include "hmvp/space.hpp"

namespace hmvp {

/// Inputs of the constants in sections 4-5.  Q and C of the large-scale
/// estimate default to log2 C_mu and C_mu^2.
struct ConstantParams {
  double c_mu = 2.0;
  double t = 5.0;
  double delta = 1.0;
  double r_min = 1.0;  // smallest admissible radius on the ball
  double r_max = 3.0;  // largest admissible radius on the ball
  std::size_t chain_length = 1;
  double r_min_omega = 1.0;
  double r_max_omega = 3.0;
  double sup_norm = 1.0;  // ||f|| on B(x0, 3r)
  double annular_a = 1.0;
  double q = 1.0;         // exponent of the Q-uniform measure
  double m = 1.0;         // ||f|| on K
  double dist = 1.0;      // dist(K, X \ Omega)
  std::optional<double> large_q;
  std::optional<double> large_c;
  double l1_norm = 1.0;
  double mu_ball_2r = 1.0;
  double r = 1.0;
};

struct ConstantSheet {
  double harnack_strong = 0.0;
  double harnack_weak_ball = 0.0;
  double harnack_compact_weak = 0.0;
  double holder_alpha = 0.0;
  double annular_ball_constant = 0.0;
  double lipschitz_uniform = 0.0;
  double large_scale_c = 0.0;
  double large_scale_gap = 0.0;
};

ConstantSheet constant_sheet(const ConstantParams& p);

struct HarnackResult {
  double sup = 0.0;
  double inf = 0.0;
  double ratio = 0.0;  // +inf when inf = 0 < sup
  double bound = 0.0;
  bool unbounded = false;
  bool pass = false;
};

/// sup_B f / inf_B f over ball samples of B = B(x, r), compared with
/// C_mu^3.  Requires B(x, 6r) inside omega and f >= 0 on the samples.
HarnackResult empirical_harnack(const MetricMeasureSpace& space,
                                const FieldFunction& f, const Point& x,
                                double r, const Domain& omega, double c_mu,
                                std::size_t resolution = 64);

/// Greedy chain of overlapping balls through the points, in the given
/// order: each next center is the last point closer than `radius` to the
/// current one.  Throws InputError when the points have a gap.
std::vector<Point> ball_chain(const MetricMeasureSpace& space,
                              const std::vector<Point>& points, double radius);

struct ModulusBound {
  double constant = 0.0;
  double exponent = 1.0;
};

struct ModulusRow {
  double distance = 0.0;
  double increment = 0.0;
};

struct ModulusFit {
  double constant = 0.0;
  double exponent = 0.0;
  bool degenerate = false;
  std::size_t skipped = 0;  // pairs closer than the noise floor
  double window_lo = 0.0;
  double window_hi = 0.0;
  std::vector<ModulusRow> rows;
  /// max increment / (constant d^exponent) of the supplied bound.
  std::optional<double> worst_ratio;
  bool bound_holds = true;
};

/// Fits |f(x) - f(y)| <= K d(x, y)^e: e is the least-squares slope in
/// log-log coordinates, K the smallest constant for that e.  Pairs with
/// d < min_distance are skipped.
ModulusFit empirical_modulus(const MetricMeasureSpace& space,
                             const FieldFunction& f,
                             const std::vector<std::pair<Point, Point>>& pairs,
                             std::optional<ModulusBound> bound = std::nullopt,
                             double min_distance = 1e-6);

struct LiouvilleScan {
  Point x;
  Point y;
  double d = 0.0;
  std::vector<double> radii;
  std::vector<double> ratios;
  double liminf = 0.0;
  std::size_t skipped = 0;  // radii whose measures overflow
};

/// Geometric radii from 2 d to 1e4 d.
std::vector<double> default_liouville_radii(double d, std::size_t count = 61);

LiouvilleScan liouville_scan(const MetricMeasureSpace& space, const Point& x,
                             const Point& y, std::vector<double> radii = {});

/// [mu(B(x, r + d)) - mu(B(x, r - d))] / mu(B(x, r)).
double liouville_containment_bound(const MetricMeasureSpace& space,
                                   const Point& x, double d, double r);

struct Dilatation {
  std::vector<double> radii;
  std::vector<double> quotients;
  double lip = 0.0;
  double upper_lip = 0.0;
};

/// sup over ball samples of |f(x) - f(y)| / r for each radius (decreasing);
/// lip and Lip are the min and max over the last third.
Dilatation pointwise_dilatation(const MetricMeasureSpace& space,
                                const FieldFunction& f, const Point& x,
                                const std::vector<double>& radii,
                                std::size_t resolution = 64);

struct ExtremumProbe {
  std::string function;
  bool constant = false;
  bool max_on_boundary_only = false;
  bool min_on_boundary_only = false;
  std::vector<std::string> argmax;
  std::vector<std::string> argmin;
  bool pass = false;
};

struct WeakMaxProbe {
  std::string function;
  double interior_sup = 0.0;
  double boundary_sup = 0.0;
  double interior_inf = 0.0;
  double boundary_inf = 0.0;
  bool pass = false;
};

struct ComparisonProbe {
  std::string upper;
  std::string lower;
  bool hypothesis = false;  // upper >= lower on the boundary samples
  bool conclusion = false;  // upper >= lower on the interior samples
  bool pass = false;        // hypothesis implies conclusion
};

struct DimensionProbe {
  std::vector<std::string> basis;
  std::vector<double> max_defects;
  std::vector<double> singular_values;
  std::size_t rows = 0;
  std::size_t kernel_dimension = 0;
};

struct PrincipleOptions {
  double tol = 1e-8;
  /// Samples; empty means interior_samples of the domain.
  std::vector<Point> points;
  /// Probe radii of the dimension probe (those < dist to the complement).
  std::vector<double> radii{0.1, 0.25, 0.5, 1.0};
  /// Relative singular-value cut: sigma counts when > rank_tol sqrt(rows).
  double rank_tol = 1e-6;
  /// Candidate basis for the dimension probe; empty means the functions.
  std::vector<FieldFunction> basis;
};

struct PrincipleReport {
  std::vector<ExtremumProbe> strong_max;
  std::vector<WeakMaxProbe> weak_max;
  std::vector<ComparisonProbe> comparison;
  DimensionProbe dimension;
  bool pass = false;  // strong, weak and comparison probes all pass
};

DimensionProbe dimension_probe(const MetricMeasureSpace& space,
                               const std::vector<FieldFunction>& basis,
                               const Domain& domain,
                               const PrincipleOptions& opts = {});

PrincipleReport principle_checks(const MetricMeasureSpace& space,
                                 const std::vector<FieldFunction>& functions,
                                 const Domain& domain,
                                 const PrincipleOptions& opts = {});

}  // namespace hmvp
