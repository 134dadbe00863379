#include "hmvp/meanvalue.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hmvp/errors.hpp"
#include "hmvp/parallel.hpp"

namespace hmvp {

double ball_average(const MetricMeasureSpace& space, const FieldFunction& f,
                    const Point& x, double r) {
  const double mu = space.ball_measure(x, r);
  return space.ball_integral(f, x, r) / mu;
}

double harmonic_defect(const MetricMeasureSpace& space, const FieldFunction& f,
                       const Point& x, double r) {
  return ball_average(space, f, x, r) - space.evaluate(f, x);
}

std::vector<double> RadiusSet::radii() const {
  std::vector<double> out;
  out.reserve(entries.size());
  for (const auto& e : entries) out.push_back(e.radius());
  return out;
}

double RadiusSet::r_min() const {
  if (entries.empty()) throw InputError("empty radius set");
  return entries.front().radius();
}

double RadiusSet::r_max() const {
  if (entries.empty()) throw InputError("empty radius set");
  return entries.back().radius();
}

double region_r_min(const std::vector<RadiusSet>& sets) {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& s : sets) m = std::min(m, s.r_min());
  return m;
}

double region_r_max(const std::vector<RadiusSet>& sets) {
  double m = 0.0;
  for (const auto& s : sets) m = std::max(m, s.r_max());
  return m;
}

std::vector<double> radius_grid(double r_min, double r_max, std::size_t count,
                                RadiusGridKind kind) {
  if (!(r_min > 0.0) || !(r_max > r_min)) throw InputError("radius grid needs 0 < r_min < r_max");
  if (count < 2) throw InputError("radius grid needs at least two points");
  std::vector<double> out(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(count - 1);
    out[i] = kind == RadiusGridKind::geometric
                 ? r_min * std::pow(r_max / r_min, t)
                 : r_min + (r_max - r_min) * t;
  }
  out.back() = r_max;
  return out;
}

RadiusSet admissible_radii(const MetricMeasureSpace& space,
                           const FieldFunction& f, const Point& x,
                           const Domain& domain, double r_min, double r_max,
                           std::size_t grid, double tol, RadiusGridKind kind) {
  if (!domain.contains_ball(space, x, r_max)) throw InputError("ball escapes domain");
  const std::vector<double> radii = radius_grid(r_min, r_max, grid, kind);
  std::vector<double> defects(radii.size());
  for (std::size_t i = 0; i < radii.size(); ++i) {
    defects[i] = harmonic_defect(space, f, x, radii[i]);
  }

  RadiusSet out{x, {}};
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (std::abs(defects[i]) < tol) out.entries.push_back({radii[i], radii[i], defects[i]});
    if (i + 1 == radii.size()) break;
    const double d0 = defects[i];
    const double d1 = defects[i + 1];
    if (std::abs(d0) < tol || std::abs(d1) < tol || (d0 > 0) == (d1 > 0)) continue;
    double lo = radii[i], hi = radii[i + 1], dlo = d0;
    double dmid = d0;
    for (int it = 0; it < 200 && hi - lo > 1e-12 * hi; ++it) {
      const double mid = 0.5 * (lo + hi);
      dmid = harmonic_defect(space, f, x, mid);
      if (std::abs(dmid) < tol * 1e-3) {
        lo = hi = mid;
        break;
      }
      if ((dmid > 0) == (dlo > 0)) {
        lo = mid;
        dlo = dmid;
      } else {
        hi = mid;
      }
    }
    const double final_defect = harmonic_defect(space, f, x, 0.5 * (lo + hi));
    // A jump (discrete balls) rather than a root shows up as a large defect.
    if (std::abs(final_defect) < tol) out.entries.push_back({lo, hi, final_defect});
  }
  std::sort(out.entries.begin(), out.entries.end(),
            [](const auto& a, const auto& b) { return a.radius() < b.radius(); });
  return out;
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::strongly_harmonic: return "strongly-harmonic";
    case Verdict::weakly_harmonic: return "weakly-harmonic";
    case Verdict::subharmonic: return "subharmonic";
    case Verdict::superharmonic: return "superharmonic";
    case Verdict::none: return "none";
  }
  return "none";
}

Classification classify(const MetricMeasureSpace& space, const FieldFunction& f,
                        const Domain& domain, const ClassifyOptions& opts) {
  if (opts.radii.empty()) throw InputError("classification needs candidate radii");
  if (!(opts.tol > 0.0)) throw InputError("tolerance must be positive");
  const std::vector<Point> points =
      opts.points.empty() ? domain.interior_samples(space) : opts.points;
  if (points.empty()) throw InputError("no sample points in the domain");

  struct PointResult {
    std::vector<double> radii;
    std::vector<double> defects;
  };
  std::vector<PointResult> results(points.size());
  parallel::for_each_index(points.size(), [&](std::size_t i) {
    const double reach = domain.distance_to_complement(space, points[i]);
    for (double r : opts.radii) {
      if (!(r < reach)) continue;
      results[i].radii.push_back(r);
      results[i].defects.push_back(harmonic_defect(space, f, points[i], r));
    }
  }, 1);

  Classification c;
  c.min_signed_defect = std::numeric_limits<double>::infinity();
  c.max_signed_defect = -std::numeric_limits<double>::infinity();
  bool every_point_admissible = true;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const PointResult& pr = results[i];
    RadiusSet set{points[i], {}};
    for (std::size_t k = 0; k < pr.radii.size(); ++k) {
      const double d = pr.defects[k];
      ++c.balls_tested;
      c.min_signed_defect = std::min(c.min_signed_defect, d);
      c.max_signed_defect = std::max(c.max_signed_defect, d);
      if (!c.violation || std::abs(d) > c.max_defect) {
        c.max_defect = std::abs(d);
        c.violation = Violation{points[i], pr.radii[k], d};
      }
      if (std::abs(d) < opts.tol) set.entries.push_back({pr.radii[k], pr.radii[k], d});
    }
    if (set.empty()) every_point_admissible = false;
    c.witness.push_back(std::move(set));
  }
  if (c.balls_tested == 0) throw InputError("no candidate radius fits inside the domain");

  if (c.max_defect < opts.tol) {
    c.verdict = Verdict::strongly_harmonic;
  } else if (every_point_admissible) {
    c.verdict = Verdict::weakly_harmonic;
  } else if (c.min_signed_defect >= -opts.tol) {
    c.verdict = Verdict::subharmonic;
  } else if (c.max_signed_defect <= opts.tol) {
    c.verdict = Verdict::superharmonic;
  } else {
    c.verdict = Verdict::none;
  }
  return c;
}

}  // namespace hmvp
