#include "hmvp/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "hmvp/errors.hpp"
#include "hmvp/parallel.hpp"

namespace hmvp {
namespace {

struct AnnulusSample {
  double eps;
  double ratio;
};

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
};

LineFit least_squares(const std::vector<double>& x, const std::vector<double>& y) {
  const auto n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double denom = n * sxx - sx * sx;
  if (!(std::abs(denom) > 0.0)) throw InputError("degenerate sample: a single radius");
  LineFit f;
  f.slope = (n * sxy - sx * sy) / denom;
  f.intercept = (sy - f.slope * sx) / n;
  return f;
}

double envelope(const std::vector<AnnulusSample>& samples, double delta,
                double min_eps) {
  double a = 0.0;
  for (const auto& s : samples) {
    if (s.eps >= min_eps) a = std::max(a, s.ratio / std::pow(s.eps, delta));
  }
  return a;
}

}  // namespace

double annulus_ratio(const MetricMeasureSpace& space, const Point& x, double r,
                     double eps) {
  if (!(eps > 0.0 && eps < 1.0)) throw InputError("annulus eps must lie in (0, 1)");
  const double outer = space.ball_measure(x, r);
  const double inner = space.ball_measure(x, r * (1.0 - eps));
  return (outer - inner) / outer;
}

DiagnosticsReport measure_diagnostics(const MetricMeasureSpace& space,
                                      const SamplePlan& plan) {
  if (plan.centers.empty()) throw InputError("sample plan has no centers");
  std::set<double> distinct(plan.radii.begin(), plan.radii.end());
  if (distinct.size() < 2) throw InputError("degenerate sample: a single radius");
  for (double r : plan.radii) {
    if (!(r > 0.0)) throw InputError("sample radii must be positive");
  }

  const std::size_t nr = plan.radii.size();
  const std::size_t cells = plan.centers.size() * nr;
  struct Cell {
    double mu = 0, mu2 = 0;
    std::vector<AnnulusSample> annuli;
    double report_ratio = 0;
  };
  std::vector<Cell> grid(cells);
  parallel::for_each_index(cells, [&](std::size_t k) {
    const Point& x = plan.centers[k / nr];
    const double r = plan.radii[k % nr];
    Cell& c = grid[k];
    c.mu = space.ball_measure(x, r);
    c.mu2 = space.ball_measure(x, 2.0 * r);
    if (plan.reciprocal_eps) {
      if (r > 1.0) c.annuli.push_back({1.0 / r, annulus_ratio(space, x, r, 1.0 / r)});
      c.report_ratio = r > 1.0 ? c.annuli.back().ratio : 0.0;
    } else {
      for (double e : plan.epsilons) c.annuli.push_back({e, annulus_ratio(space, x, r, e)});
      c.report_ratio = annulus_ratio(space, x, r, plan.report_eps);
    }
  }, 4);

  DiagnosticsReport rep;
  std::vector<AnnulusSample> annuli;
  std::vector<double> log_r, log_mu;
  for (std::size_t k = 0; k < cells; ++k) {
    const Cell& c = grid[k];
    const Point& x = plan.centers[k / nr];
    const double r = plan.radii[k % nr];
    const double ratio = c.mu2 / c.mu;
    rep.doubling_constant = std::max(rep.doubling_constant, ratio);
    annuli.insert(annuli.end(), c.annuli.begin(), c.annuli.end());
    log_r.push_back(std::log(r));
    log_mu.push_back(std::log(c.mu));
    rep.rows.push_back({space.describe(x), r, c.mu, ratio, c.report_ratio});
  }

  // Uniform fit mu(B(x, r)) = C r^Q.
  const LineFit fit = least_squares(log_r, log_mu);
  UniformFit uf{std::exp(fit.intercept), fit.slope, 0.0};
  for (std::size_t k = 0; k < cells; ++k) {
    const double model = uf.c * std::pow(plan.radii[k % nr], uf.q);
    uf.residual = std::max(uf.residual, std::abs(grid[k].mu - model) / grid[k].mu);
  }
  rep.uniform_regression = uf;
  if (uf.residual <= plan.threshold) rep.uniform_fit = uf;

  // Ahlfors: C^{-1} r^Q <= mu(B) <= C r^Q with Q from the regression.
  rep.ahlfors.q = uf.q;
  rep.ahlfors.c = 1.0;
  for (std::size_t k = 0; k < cells; ++k) {
    const double rq = std::pow(plan.radii[k % nr], uf.q);
    rep.ahlfors.c = std::max({rep.ahlfors.c, grid[k].mu / rq, rq / grid[k].mu});
  }
  rep.ahlfors.satisfied = rep.ahlfors.c <= plan.ahlfors_max_constant;

  // Annular decay.
  if (annuli.size() >= 2) {
    std::vector<double> eps;
    for (const auto& s : annuli) eps.push_back(s.eps);
    std::sort(eps.begin(), eps.end());
    const double median = eps[eps.size() / 2];
    for (int step = 20; step >= 1; --step) {
      const double delta = 0.05 * step;
      const double all = envelope(annuli, delta, 0.0);
      const double coarse = envelope(annuli, delta, median);
      // Saturation is judged on the raw envelopes; the floor A >= 1 would
      // hide growth that stays below 1 on the samples.
      if (all <= coarse * (1.0 + plan.threshold)) {
        rep.annular_fit = AnnularFit{std::max(1.0, all), delta};
        break;
      }
    }
  }

  // Metric continuity table at the first center.
  std::vector<double> sorted_r(plan.radii);
  std::sort(sorted_r.begin(), sorted_r.end());
  const double r_mid = sorted_r[sorted_r.size() / 2];
  const auto modulus = space.metric_continuity_modulus(plan.centers.front(), r_mid,
                                                       plan.continuity_probes);
  for (std::size_t i = 0; i < modulus.size(); ++i) {
    rep.metric_continuity.push_back({plan.continuity_probes[i], modulus[i]});
  }
  return rep;
}

}  // namespace hmvp
