#pragma once

#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace hmvp {

class DiscreteSpace;

/// A real-valued function on a space: either a closed form on the line
/// (catalog or combinator) or a table of per-node values on a DiscreteSpace.
/// Closed forms may also be evaluated on discrete spaces that carry node
/// coordinates (grids built from a weighted line).
class FieldFunction {
 public:
  using Function = std::function<double(double)>;

  static FieldFunction analytic(std::string id, Function fn,
                                std::vector<double> singular_points = {});
  static FieldFunction sampled(std::vector<double> values,
                               std::string id = "sampled");

  const std::string& id() const { return id_; }
  bool is_sampled() const { return !fn_; }

  /// Closed-form value at a coordinate.  Throws InputError for sampled
  /// functions.
  double operator()(double x) const;
  /// Value at a node.  Sampled: the stored value; closed form: evaluated at
  /// the node coordinate of `space`.
  double at_node(const DiscreteSpace& space, std::size_t node) const;
  /// Values at every node of `space`.
  std::vector<double> values_on(const DiscreteSpace& space) const;

  std::span<const double> values() const { return values_; }
  std::span<const double> singular_points() const { return singular_; }

 private:
  std::string id_;
  Function fn_;
  std::vector<double> values_;
  std::vector<double> singular_;
};

// Combinators.  Mixing a closed form with a sampled table is an InputError.
FieldFunction map(const FieldFunction& f, const std::function<double(double)>& op,
                  std::string id);
FieldFunction zip(const FieldFunction& f, const FieldFunction& g,
                  const std::function<double(double, double)>& op,
                  std::string id);
FieldFunction linear_combination(double a, const FieldFunction& f, double b,
                                 const FieldFunction& g);
FieldFunction shifted(const FieldFunction& f, double m);
FieldFunction scaled(const FieldFunction& f, double a);
FieldFunction product(const FieldFunction& f, const FieldFunction& g);
FieldFunction positive_part(const FieldFunction& f);
FieldFunction pointwise_max(std::span<const FieldFunction> fs);

namespace functions {

FieldFunction constant(double c);
/// a x + b
FieldFunction affine(double a, double b);
/// 1/x with value 0 at the origin.
FieldFunction reciprocal();
/// 1 + e^{2x}
FieldFunction one_plus_exp2x();
/// 1 / (1 + e^{2x})
FieldFunction logistic_inv();
/// x^2
FieldFunction square();
/// A/x + B (value B at the origin).
FieldFunction a_over_x_plus_b(double a, double b);
/// c + d e^{2x}
FieldFunction c_plus_d_exp2x(double c, double d);

}  // namespace functions
}  // namespace hmvp
