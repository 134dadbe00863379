#include "hmvp/field.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "hmvp/discrete_space.hpp"
#include "hmvp/errors.hpp"

namespace hmvp {

FieldFunction FieldFunction::analytic(std::string id, Function fn,
                                      std::vector<double> singular_points) {
  FieldFunction f;
  f.id_ = std::move(id);
  f.fn_ = std::move(fn);
  f.singular_ = std::move(singular_points);
  return f;
}

FieldFunction FieldFunction::sampled(std::vector<double> values,
                                     std::string id) {
  FieldFunction f;
  f.id_ = std::move(id);
  f.values_ = std::move(values);
  return f;
}

double FieldFunction::operator()(double x) const {
  if (!fn_) throw InputError("function '" + id_ + "' is sampled, not closed form");
  return fn_(x);
}

double FieldFunction::at_node(const DiscreteSpace& space,
                              std::size_t node) const {
  if (node >= space.size()) throw InputError("node id out of range");
  if (fn_) {
    if (!space.has_coordinates()) {
      throw InputError("closed-form function '" + id_ +
                       "' needs node coordinates");
    }
    return fn_(space.coordinate(node));
  }
  if (values_.size() != space.size()) {
    throw InputError("sampled function '" + id_ + "' has " +
                     std::to_string(values_.size()) + " values for " +
                     std::to_string(space.size()) + " nodes");
  }
  return values_[node];
}

std::vector<double> FieldFunction::values_on(const DiscreteSpace& space) const {
  std::vector<double> out(space.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = at_node(space, i);
  return out;
}

FieldFunction map(const FieldFunction& f,
                  const std::function<double(double)>& op, std::string id) {
  if (f.is_sampled()) {
    std::vector<double> v(f.values().begin(), f.values().end());
    for (double& x : v) x = op(x);
    return FieldFunction::sampled(std::move(v), std::move(id));
  }
  std::vector<double> sing(f.singular_points().begin(),
                           f.singular_points().end());
  return FieldFunction::analytic(
      std::move(id), [f, op](double x) { return op(f(x)); }, std::move(sing));
}

FieldFunction zip(const FieldFunction& f, const FieldFunction& g,
                  const std::function<double(double, double)>& op,
                  std::string id) {
  if (f.is_sampled() != g.is_sampled()) {
    throw InputError("cannot combine a sampled function with a closed form");
  }
  if (f.is_sampled()) {
    if (f.values().size() != g.values().size()) {
      throw InputError("sampled functions differ in length");
    }
    std::vector<double> v(f.values().size());
    for (std::size_t i = 0; i < v.size(); ++i) {
      v[i] = op(f.values()[i], g.values()[i]);
    }
    return FieldFunction::sampled(std::move(v), std::move(id));
  }
  std::vector<double> sing(f.singular_points().begin(),
                           f.singular_points().end());
  sing.insert(sing.end(), g.singular_points().begin(),
              g.singular_points().end());
  std::sort(sing.begin(), sing.end());
  sing.erase(std::unique(sing.begin(), sing.end()), sing.end());
  return FieldFunction::analytic(
      std::move(id), [f, g, op](double x) { return op(f(x), g(x)); },
      std::move(sing));
}

FieldFunction linear_combination(double a, const FieldFunction& f, double b,
                                 const FieldFunction& g) {
  return zip(f, g, [a, b](double u, double v) { return a * u + b * v; },
             "lincomb(" + f.id() + "," + g.id() + ")");
}

FieldFunction shifted(const FieldFunction& f, double m) {
  return map(f, [m](double u) { return u - m; }, f.id() + "-m");
}

FieldFunction scaled(const FieldFunction& f, double a) {
  return map(f, [a](double u) { return a * u; }, "a*" + f.id());
}

FieldFunction product(const FieldFunction& f, const FieldFunction& g) {
  return zip(f, g, [](double u, double v) { return u * v; },
             f.id() + "*" + g.id());
}

FieldFunction positive_part(const FieldFunction& f) {
  return map(f, [](double u) { return std::max(u, 0.0); }, "(" + f.id() + ")+");
}

FieldFunction pointwise_max(std::span<const FieldFunction> fs) {
  if (fs.empty()) throw InputError("pointwise_max of an empty family");
  FieldFunction acc = fs.front();
  for (std::size_t i = 1; i < fs.size(); ++i) {
    acc = zip(acc, fs[i], [](double u, double v) { return std::max(u, v); },
              "max");
  }
  return acc;
}

namespace functions {

FieldFunction constant(double c) {
  return FieldFunction::analytic("constant", [c](double) { return c; });
}

FieldFunction affine(double a, double b) {
  return FieldFunction::analytic("affine",
                                 [a, b](double x) { return a * x + b; });
}

FieldFunction reciprocal() {
  return FieldFunction::analytic(
      "reciprocal", [](double x) { return x == 0.0 ? 0.0 : 1.0 / x; }, {0.0});
}

FieldFunction one_plus_exp2x() {
  return FieldFunction::analytic("one_plus_exp2x",
                                 [](double x) { return 1.0 + std::exp(2.0 * x); });
}

FieldFunction logistic_inv() {
  return FieldFunction::analytic(
      "logistic_inv", [](double x) { return 1.0 / (1.0 + std::exp(2.0 * x)); });
}

FieldFunction square() {
  return FieldFunction::analytic("square", [](double x) { return x * x; });
}

FieldFunction a_over_x_plus_b(double a, double b) {
  return FieldFunction::analytic(
      "a_over_x_plus_b",
      [a, b](double x) { return x == 0.0 ? b : a / x + b; }, {0.0});
}

FieldFunction c_plus_d_exp2x(double c, double d) {
  return FieldFunction::analytic(
      "c_plus_d_exp2x", [c, d](double x) { return c + d * std::exp(2.0 * x); });
}

}  // namespace functions
}  // namespace hmvp
