#include "hmvp/estimates.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>

#include "hmvp/errors.hpp"
#include "hmvp/meanvalue.hpp"
#include "hmvp/parallel.hpp"

namespace hmvp {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_positive(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw InputError(std::string(name) + " must be positive and finite");
  }
}

void require_nonnegative(double v, const char* name) {
  if (!(v >= 0.0) || !std::isfinite(v)) {
    throw InputError(std::string(name) + " must be nonnegative and finite");
  }
}

std::size_t tail_start(std::size_t n) { return n - std::max<std::size_t>(1, n / 3); }

}  // namespace

ConstantSheet constant_sheet(const ConstantParams& p) {
  if (!(p.c_mu > 1.0) || !std::isfinite(p.c_mu)) throw InputError("C_mu must exceed 1");
  if (!(p.t > 4.0) || !std::isfinite(p.t)) throw InputError("t must exceed 4");
  if (!(p.delta > 0.0 && p.delta <= 1.0)) throw InputError("delta must lie in (0, 1]");
  require_positive(p.r_min, "r_m");
  require_positive(p.r_max, "r_M");
  require_positive(p.r_min_omega, "r_m of Omega");
  require_positive(p.r_max_omega, "r_M of Omega");
  if (p.r_max < p.r_min || p.r_max_omega < p.r_min_omega) throw InputError("r_M must be at least r_m");
  if (p.chain_length == 0) throw InputError("chain length must be positive");
  require_nonnegative(p.sup_norm, "sup norm");
  require_positive(p.annular_a, "A");
  require_positive(p.q, "Q");
  require_nonnegative(p.m, "M");
  require_positive(p.dist, "dist");
  require_nonnegative(p.l1_norm, "L1 norm");
  require_positive(p.mu_ball_2r, "mu(B(x0, 2r))");
  require_positive(p.r, "r");

  const double c = p.c_mu;
  ConstantSheet s;
  s.harnack_strong = c * c * c;
  s.harnack_weak_ball = std::pow(c, std::log2(5.0 * p.r_max / (3.0 * p.r_min)) + 1.0);
  s.harnack_compact_weak =
      std::pow(c, static_cast<double>(p.chain_length) *
                      (std::log2(5.0 * p.r_max_omega / (3.0 * p.r_min_omega)) + 1.0));
  s.holder_alpha = std::log(c * c / (c * c - 1.0)) / std::log(p.t);
  s.annular_ball_constant = 4.0 * std::pow(9.0, p.delta) * p.sup_norm * c * c * c * p.annular_a;
  s.lipschitz_uniform = p.q * std::pow(2.0, p.q + 1.0) * p.m / p.dist;

  const double lq = p.large_q.value_or(std::log2(c));
  const double lc = p.large_c.value_or(c * c);
  require_positive(lq, "Q of the large-scale estimate");
  if (!(lc > 1.0)) throw InputError("C of the large-scale estimate must exceed 1");
  s.large_scale_c = lq * lc * lc * p.l1_norm / p.mu_ball_2r;
  s.large_scale_gap = p.r * (std::pow(lc, 1.0 / (lq * (lc - 1.0))) - 1.0);
  return s;
}

HarnackResult empirical_harnack(const MetricMeasureSpace& space,
                                const FieldFunction& f, const Point& x,
                                double r, const Domain& omega, double c_mu,
                                std::size_t resolution) {
  require_positive(r, "radius");
  if (!(c_mu >= 1.0)) throw InputError("C_mu must be at least 1");
  if (!omega.contains_ball(space, x, 6.0 * r)) throw InputError("B(x, 6r) is not inside Omega");
  HarnackResult h;
  h.sup = -kInf;
  h.inf = kInf;
  for (const Point& y : space.ball_samples(x, r, resolution)) {
    const double v = space.evaluate(f, y);
    if (v < 0.0) throw InputError("Harnack test function must be nonnegative");
    h.sup = std::max(h.sup, v);
    h.inf = std::min(h.inf, v);
  }
  h.bound = c_mu * c_mu * c_mu;
  if (h.inf == 0.0) {
    h.unbounded = h.sup > 0.0;
    h.ratio = h.unbounded ? kInf : 1.0;
  } else {
    h.ratio = h.sup / h.inf;
  }
  h.pass = !h.unbounded && h.ratio <= h.bound;
  return h;
}

std::vector<Point> ball_chain(const MetricMeasureSpace& space,
                              const std::vector<Point>& points, double radius) {
  require_positive(radius, "chain radius");
  if (points.empty()) throw InputError("no points to chain");
  std::vector<Point> chain{points.front()};
  std::size_t at = 0;
  while (at + 1 < points.size()) {
    std::size_t next = at;
    for (std::size_t k = at + 1; k < points.size(); ++k) {
      if (space.distance(points[at], points[k]) < radius) next = k;
    }
    if (next == at) throw InputError("sample points have a gap wider than the chain radius");
    chain.push_back(points[next]);
    at = next;
  }
  return chain;
}

ModulusFit empirical_modulus(const MetricMeasureSpace& space,
                             const FieldFunction& f,
                             const std::vector<std::pair<Point, Point>>& pairs,
                             std::optional<ModulusBound> bound,
                             double min_distance) {
  ModulusFit fit;
  fit.window_lo = kInf;
  fit.window_hi = 0.0;
  for (const auto& [x, y] : pairs) {
    const double d = space.distance(x, y);
    if (d < min_distance) {
      ++fit.skipped;
      continue;
    }
    const double inc = std::abs(space.evaluate(f, x) - space.evaluate(f, y));
    fit.rows.push_back({d, inc});
    fit.window_lo = std::min(fit.window_lo, d);
    fit.window_hi = std::max(fit.window_hi, d);
  }
  if (fit.rows.empty()) throw InputError("no pair above the distance floor");

  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::size_t n = 0;
  for (const auto& row : fit.rows) {
    if (row.increment <= 0.0) continue;
    const double lx = std::log(row.distance), ly = std::log(row.increment);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++n;
  }
  const double denom = static_cast<double>(n) * sxx - sx * sx;
  if (n < 2 || !(denom > 1e-12 * std::max(1.0, static_cast<double>(n) * sxx))) {
    fit.degenerate = true;
  } else {
    fit.exponent = (static_cast<double>(n) * sxy - sx * sy) / denom;
    for (const auto& row : fit.rows) {
      fit.constant = std::max(fit.constant, row.increment / std::pow(row.distance, fit.exponent));
    }
  }
  if (bound) {
    double worst = 0.0;
    for (const auto& row : fit.rows) {
      const double b = bound->constant * std::pow(row.distance, bound->exponent);
      worst = std::max(worst, b > 0.0 ? row.increment / b : (row.increment > 0.0 ? kInf : 0.0));
    }
    fit.worst_ratio = worst;
    fit.bound_holds = worst <= 1.0;
  }
  return fit;
}

std::vector<double> default_liouville_radii(double d, std::size_t count) {
  require_positive(d, "d(x, y)");
  return radius_grid(2.0 * d, 1e4 * d, count, RadiusGridKind::geometric);
}

LiouvilleScan liouville_scan(const MetricMeasureSpace& space, const Point& x,
                             const Point& y, std::vector<double> radii) {
  LiouvilleScan s{x, y, space.distance(x, y), {}, {}, 0.0, 0};
  if (radii.empty()) radii = default_liouville_radii(s.d);
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (!(radii[i] > s.d)) throw InputError("scan radii must exceed d(x, y)");
    if (i > 0 && !(radii[i] > radii[i - 1])) throw InputError("scan radii must increase");
  }
  std::vector<double> ratios(radii.size());
  parallel::for_each_index(radii.size(), [&](std::size_t i) {
    const double mu = space.ball_measure(x, radii[i]);
    const double sd = space.symm_diff_measure(x, y, radii[i], radii[i]);
    ratios[i] = std::isfinite(mu) && std::isfinite(sd) ? sd / mu
                                                       : std::numeric_limits<double>::quiet_NaN();
  }, 8);
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (!std::isfinite(ratios[i])) {
      ++s.skipped;
      continue;
    }
    s.radii.push_back(radii[i]);
    s.ratios.push_back(ratios[i]);
  }
  if (s.ratios.empty()) throw NumericalError("every scan radius overflows the measure");
  s.liminf = *std::min_element(s.ratios.begin() + static_cast<long>(tail_start(s.ratios.size())),
                               s.ratios.end());
  return s;
}

double liouville_containment_bound(const MetricMeasureSpace& space,
                                   const Point& x, double d, double r) {
  if (!(r > d)) throw InputError("containment bound needs r > d");
  return (space.ball_measure(x, r + d) - space.ball_measure(x, r - d)) /
         space.ball_measure(x, r);
}

Dilatation pointwise_dilatation(const MetricMeasureSpace& space,
                                const FieldFunction& f, const Point& x,
                                const std::vector<double>& radii,
                                std::size_t resolution) {
  if (radii.empty()) throw InputError("dilatation needs radii");
  for (std::size_t i = 0; i < radii.size(); ++i) {
    require_positive(radii[i], "radius");
    if (i > 0 && !(radii[i] < radii[i - 1])) throw InputError("dilatation radii must decrease");
  }
  Dilatation out;
  out.radii = radii;
  const double fx = space.evaluate(f, x);
  for (double r : radii) {
    double q = 0.0;
    for (const Point& y : space.ball_samples(x, r, resolution)) {
      q = std::max(q, std::abs(space.evaluate(f, y) - fx) / r);
    }
    out.quotients.push_back(q);
  }
  const auto tail = out.quotients.begin() + static_cast<long>(tail_start(out.quotients.size()));
  out.lip = *std::min_element(tail, out.quotients.end());
  out.upper_lip = *std::max_element(tail, out.quotients.end());
  return out;
}

DimensionProbe dimension_probe(const MetricMeasureSpace& space,
                               const std::vector<FieldFunction>& basis,
                               const Domain& domain, const PrincipleOptions& opts) {
  if (basis.empty()) throw InputError("dimension probe needs a candidate basis");
  const std::vector<Point> points =
      opts.points.empty() ? domain.interior_samples(space) : opts.points;
  std::vector<std::pair<Point, double>> balls;
  for (const Point& p : points) {
    const double reach = domain.distance_to_complement(space, p);
    for (double r : opts.radii) {
      if (r < reach) balls.emplace_back(p, r);
    }
  }
  if (balls.empty()) throw InputError("no probe ball fits inside the domain");

  DimensionProbe probe;
  probe.rows = balls.size();
  Eigen::MatrixXd m(static_cast<Eigen::Index>(balls.size()),
                    static_cast<Eigen::Index>(basis.size()));
  parallel::for_each_index(balls.size(), [&](std::size_t i) {
    for (std::size_t j = 0; j < basis.size(); ++j) {
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          harmonic_defect(space, basis[j], balls[i].first, balls[i].second);
    }
  }, 4);
  for (std::size_t j = 0; j < basis.size(); ++j) {
    probe.basis.push_back(basis[j].id());
    probe.max_defects.push_back(m.col(static_cast<Eigen::Index>(j)).cwiseAbs().maxCoeff());
  }
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const Eigen::VectorXd sv = svd.singularValues();
  const double cut = opts.rank_tol * std::sqrt(static_cast<double>(balls.size()));
  std::size_t rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    probe.singular_values.push_back(sv[i]);
    if (sv[i] > cut) ++rank;
  }
  probe.kernel_dimension = basis.size() - rank;
  return probe;
}

PrincipleReport principle_checks(const MetricMeasureSpace& space,
                                 const std::vector<FieldFunction>& functions,
                                 const Domain& domain, const PrincipleOptions& opts) {
  if (functions.empty()) throw InputError("principle checks need functions");
  const std::vector<Point> interior =
      opts.points.empty() ? domain.interior_samples(space) : opts.points;
  const std::vector<Point> boundary = domain.boundary_samples(space);
  if (boundary.empty()) throw InputError("principle checks need boundary samples");

  PrincipleReport rep;
  std::vector<std::vector<double>> vin, vbd;
  for (const FieldFunction& f : functions) {
    std::vector<double> a, b;
    for (const Point& p : interior) a.push_back(space.evaluate(f, p));
    for (const Point& p : boundary) b.push_back(space.evaluate(f, p));
    const double imax = *std::max_element(a.begin(), a.end());
    const double imin = *std::min_element(a.begin(), a.end());
    const double bmax = *std::max_element(b.begin(), b.end());
    const double bmin = *std::min_element(b.begin(), b.end());
    const double hi = std::max(imax, bmax), lo = std::min(imin, bmin);

    ExtremumProbe e;
    e.function = f.id();
    e.constant = hi - lo <= opts.tol;
    bool max_inside = false, min_inside = false;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i] >= hi - opts.tol) {
        max_inside = true;
        e.argmax.push_back(space.describe(interior[i]));
      }
      if (a[i] <= lo + opts.tol) {
        min_inside = true;
        e.argmin.push_back(space.describe(interior[i]));
      }
    }
    for (std::size_t i = 0; i < b.size(); ++i) {
      if (b[i] >= hi - opts.tol) e.argmax.push_back(space.describe(boundary[i]));
      if (b[i] <= lo + opts.tol) e.argmin.push_back(space.describe(boundary[i]));
    }
    e.max_on_boundary_only = !max_inside;
    e.min_on_boundary_only = !min_inside;
    e.pass = e.constant || (e.max_on_boundary_only && e.min_on_boundary_only);
    rep.strong_max.push_back(e);

    WeakMaxProbe w{f.id(), imax, bmax, imin, bmin, false};
    w.pass = imax <= bmax + opts.tol && imin >= bmin - opts.tol;
    rep.weak_max.push_back(w);
    vin.push_back(std::move(a));
    vbd.push_back(std::move(b));
  }

  for (std::size_t i = 0; i < functions.size(); ++i) {
    for (std::size_t j = 0; j < functions.size(); ++j) {
      if (i == j) continue;
      ComparisonProbe c{functions[i].id(), functions[j].id(), true, true, false};
      for (std::size_t k = 0; k < boundary.size(); ++k) {
        if (vbd[i][k] < vbd[j][k] - opts.tol) c.hypothesis = false;
      }
      for (std::size_t k = 0; k < interior.size(); ++k) {
        if (vin[i][k] < vin[j][k] - opts.tol) c.conclusion = false;
      }
      c.pass = !c.hypothesis || c.conclusion;
      rep.comparison.push_back(c);
    }
  }

  rep.dimension = dimension_probe(space, opts.basis.empty() ? functions : opts.basis,
                                  domain, opts);
  rep.pass = true;
  for (const auto& e : rep.strong_max) rep.pass = rep.pass && e.pass;
  for (const auto& w : rep.weak_max) rep.pass = rep.pass && w.pass;
  for (const auto& c : rep.comparison) rep.pass = rep.pass && c.pass;
  return rep;
}

}  // namespace hmvp
