#pragma once

#include <functional>
#include <span>

namespace hmvp::quadrature {

struct SimpsonOptions {
  double abs_tol = 1e-10;
  int max_depth = 40;
};

/// Adaptive Simpson on [a, b] with Richardson correction.  The integrand is
/// sampled at the end points; use integrate_piecewise when it has
/// singularities there.
double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, const SimpsonOptions& opts = {});

/// Splits (a, b) at every breakpoint strictly inside it and integrates each
/// piece with adaptive Simpson.  Piece end points are nudged inward by a
/// relative 1e-14 so integrands like 1/x are never sampled at the pole.
/// The tolerance is shared between the pieces in proportion to their length.
double integrate_piecewise(const std::function<double(double)>& f, double a,
                           double b, std::span<const double> breakpoints,
                           const SimpsonOptions& opts = {});

/// Fixed 5-point Gauss-Legendre rule on [a, b].
double gauss_legendre5(const std::function<double(double)>& f, double a,
                       double b);

}  // namespace hmvp::quadrature
