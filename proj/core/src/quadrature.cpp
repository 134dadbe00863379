#include "hmvp/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

#include "hmvp/errors.hpp"

namespace hmvp::quadrature {
namespace {

struct Panel {
  double a, fa, m, fm, b, fb, whole;
};

double simpson(double a, double fa, double b, double fb, double fm) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double refine(const std::function<double(double)>& f, const Panel& p,
              double tol, int depth) {
  const double lm = 0.5 * (p.a + p.m);
  const double rm = 0.5 * (p.m + p.b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = simpson(p.a, p.fa, p.m, p.fm, flm);
  const double right = simpson(p.m, p.fm, p.b, p.fb, frm);
  const double delta = left + right - p.whole;
  // The second test stops refinement once the panel is resolved to
  // rounding level, where an absolute target may be out of reach.
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol ||
      std::abs(delta) <= 1e-14 * (std::abs(left) + std::abs(right))) {
    return left + right + delta / 15.0;
  }
  return refine(f, {p.a, p.fa, lm, flm, p.m, p.fm, left}, 0.5 * tol,
                depth - 1) +
         refine(f, {p.m, p.fm, rm, frm, p.b, p.fb, right}, 0.5 * tol,
                depth - 1);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, const SimpsonOptions& opts) {
  if (!(b > a)) return 0.0;
  const double m = 0.5 * (a + b);
  const double fa = f(a);
  const double fb = f(b);
  const double fm = f(m);
  const double whole = simpson(a, fa, b, fb, fm);
  return refine(f, {a, fa, m, fm, b, fb, whole}, opts.abs_tol,
                opts.max_depth);
}

double integrate_piecewise(const std::function<double(double)>& f, double a,
                           double b, std::span<const double> breakpoints,
                           const SimpsonOptions& opts) {
  if (!(b > a)) return 0.0;
  std::vector<double> cuts{a};
  for (double c : breakpoints) {
    if (c > a && c < b) cuts.push_back(c);
  }
  cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  const double total = b - a;
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double lo = cuts[i];
    const double hi = cuts[i + 1];
    const double nudge = 1e-14 * (hi - lo);
    SimpsonOptions piece = opts;
    piece.abs_tol = opts.abs_tol * (hi - lo) / total;
    sum += adaptive_simpson(f, lo + nudge, hi - nudge, piece);
  }
  return sum;
}

double gauss_legendre5(const std::function<double(double)>& f, double a,
                       double b) {
  static constexpr std::array<double, 5> nodes{
      0.0, -0.5384693101056831, 0.5384693101056831, -0.9061798459386640,
      0.9061798459386640};
  static constexpr std::array<double, 5> weights{
      0.5688888888888889, 0.4786286704993665, 0.4786286704993665,
      0.2369268850561891, 0.2369268850561891};
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  double sum = 0.0;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    sum += weights[i] * f(mid + half * nodes[i]);
  }
  return half * sum;
}

}  // namespace hmvp::quadrature
