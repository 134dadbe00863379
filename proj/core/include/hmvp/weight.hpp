#pragma once

#include <functional>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace hmvp {

/// Closed interval of the real line; either end may be infinite.
struct Interval {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();

  static Interval real_line() { return {}; }
  bool contains(double x) const { return x >= lo && x <= hi; }
  bool bounded() const;
};

/// Density w >= 0 of an absolutely continuous measure dmu = w(x) dx on the
/// line, together with an antiderivative W and an interval mass
/// mu((a, b)) = W(b) - W(a).  Catalog weights override the mass with a
/// cancellation-free closed form.
class WeightSpec {
 public:
  using Function = std::function<double(double)>;
  using MassFunction = std::function<double(double, double)>;

  WeightSpec(std::string id, Function density, Function antiderivative,
             MassFunction mass = {}, std::vector<double> kinks = {});

  const std::string& id() const { return id_; }
  double density(double x) const { return density_(x); }
  double antiderivative(double x) const { return antiderivative_(x); }
  /// mu((a, b)); zero when b <= a.
  double mass(double a, double b) const;
  /// Points where the density is not smooth; quadrature splits there.
  std::span<const double> kinks() const { return kinks_; }

 private:
  std::string id_;
  Function density_;
  Function antiderivative_;
  MassFunction mass_;
  std::vector<double> kinks_;
};

namespace weights {

WeightSpec lebesgue();
/// w = |x|
WeightSpec abs_x();
/// w = e^{-x}
WeightSpec exp_neg_x();
/// w = e^{-|x|}
WeightSpec exp_neg_abs_x();
/// w = 2 cosh x, so mu(B(x, r)) = 4 cosh(x) sinh(r).
WeightSpec two_cosh();
/// w = (C Q / 2) |x|^{Q-1}: mu(B(0, r)) = C r^Q.  Uniform (mu(B(x,r)) = C r
/// for every center) only for Q = 1.
WeightSpec power(double q, double c);

/// Catalog lookup by tag; `q` and `c` are only read by "power_Q".
WeightSpec by_name(std::string_view id, double q = 1.0, double c = 2.0);
std::vector<std::string> catalog_names();

}  // namespace weights
}  // namespace hmvp
