#include "hmvp/weight.hpp"

#include <cmath>
#include <utility>

#include "hmvp/errors.hpp"

namespace hmvp {

bool Interval::bounded() const { return std::isfinite(lo) && std::isfinite(hi); }

WeightSpec::WeightSpec(std::string id, Function density,
                       Function antiderivative, MassFunction mass,
                       std::vector<double> kinks)
    : id_(std::move(id)),
      density_(std::move(density)),
      antiderivative_(std::move(antiderivative)),
      mass_(std::move(mass)),
      kinks_(std::move(kinks)) {}

double WeightSpec::mass(double a, double b) const {
  if (!(b > a)) return 0.0;
  if (mass_) return mass_(a, b);
  return antiderivative_(b) - antiderivative_(a);
}

namespace weights {
namespace {

// e^{-a} - e^{-b} for 0 <= a <= b without cancellation.
double exp_decay_mass(double a, double b) {
  return std::exp(-a) * -std::expm1(a - b);
}

}  // namespace

WeightSpec lebesgue() {
  return {"lebesgue", [](double) { return 1.0; }, [](double x) { return x; },
          [](double a, double b) { return b - a; }};
}

WeightSpec abs_x() {
  return {"abs_x", [](double x) { return std::abs(x); },
          [](double x) { return 0.5 * x * std::abs(x); },
          {},
          {0.0}};
}

WeightSpec exp_neg_x() {
  return {"exp_neg_x", [](double x) { return std::exp(-x); },
          [](double x) { return -std::exp(-x); },
          [](double a, double b) { return exp_decay_mass(a, b); }};
}

WeightSpec exp_neg_abs_x() {
  auto mass = [](double a, double b) {
    double m = 0.0;
    if (a < 0.0) {
      const double hi = std::min(b, 0.0);
      // e^{hi} - e^{a}
      m += std::exp(hi) * -std::expm1(a - hi);
    }
    if (b > 0.0) {
      m += exp_decay_mass(std::max(a, 0.0), b);
    }
    return m;
  };
  return {"exp_neg_abs_x", [](double x) { return std::exp(-std::abs(x)); },
          [](double x) {
            return std::copysign(-std::expm1(-std::abs(x)), x);
          },
          mass,
          {0.0}};
}

WeightSpec two_cosh() {
  return {"two_cosh", [](double x) { return 2.0 * std::cosh(x); },
          [](double x) { return 2.0 * std::sinh(x); },
          [](double a, double b) {
            return 4.0 * std::cosh(0.5 * (a + b)) * std::sinh(0.5 * (b - a));
          }};
}

WeightSpec power(double q, double c) {
  if (!(q >= 1.0) || !(c > 0.0)) {
    throw InputError("power_Q weight needs Q >= 1 and C > 0");
  }
  return {"power_Q",
          [q, c](double x) { return 0.5 * c * q * std::pow(std::abs(x), q - 1.0); },
          [q, c](double x) {
            return std::copysign(0.5 * c * std::pow(std::abs(x), q), x);
          },
          {},
          {0.0}};
}

WeightSpec by_name(std::string_view id, double q, double c) {
  if (id == "lebesgue") return lebesgue();
  if (id == "abs_x") return abs_x();
  if (id == "exp_neg_x") return exp_neg_x();
  if (id == "exp_neg_abs_x") return exp_neg_abs_x();
  if (id == "two_cosh") return two_cosh();
  if (id == "power_Q") return power(q, c);
  throw InputError("unknown weight '" + std::string(id) + "'");
}

std::vector<std::string> catalog_names() {
  return {"lebesgue", "abs_x", "exp_neg_x", "exp_neg_abs_x", "two_cosh",
          "power_Q"};
}

}  // namespace weights
}  // namespace hmvp
