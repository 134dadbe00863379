#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <tuple>
#include <vector>

namespace hmvp {

class WeightedLine;

struct Edge {
  std::size_t from;
  std::size_t to;
  double length;
};

/// Finite metric measure space: a full distance table plus positive point
/// masses.  Balls are open, d(center, y) < r, compared exactly.
class DiscreteSpace {
 public:
  /// Validates symmetry, zero diagonal, the triangle inequality for all
  /// triples and positivity of every mass.
  static DiscreteSpace from_table(std::vector<std::vector<double>> distances,
                                  std::vector<double> masses,
                                  std::vector<std::string> labels = {});
  /// Shortest-path closure of an undirected edge list.
  static DiscreteSpace from_edges(std::size_t count, std::span<const Edge> edges,
                                  std::vector<double> masses,
                                  std::vector<std::string> labels = {});
  /// Uniform grid lo, lo + h, ..., hi on a weighted line.  Node i sits at
  /// lo + i h, distances are |i - j| h, and the mass of node i is the line
  /// mass of its cell (x_i - h/2, x_i + h/2) clipped to the line's domain.
  static DiscreteSpace grid(const WeightedLine& line, double lo, double hi,
                            double spacing);

  std::size_t size() const { return masses_.size(); }
  double distance(std::size_t i, std::size_t j) const;
  double mass(std::size_t i) const { return masses_.at(i); }
  std::span<const double> masses() const { return masses_; }
  const std::string& label(std::size_t i) const { return labels_.at(i); }

  bool has_coordinates() const { return coordinates_.has_value(); }
  double coordinate(std::size_t i) const { return coordinates_->at(i); }
  std::optional<double> spacing() const { return spacing_; }

  /// Nodes y with d(center, y) < r, in increasing node order.
  std::vector<std::size_t> ball(std::size_t center, double r) const;
  double ball_measure(std::size_t center, double r) const;
  /// Smallest positive pairwise distance.
  double min_positive_distance() const;

  /// Same points and metric, masses multiplied node-wise.
  DiscreteSpace with_masses(std::vector<double> masses) const;

 private:
  DiscreteSpace() = default;
  void check_node(std::size_t i) const;

  std::vector<double> table_;  // row-major size() x size()
  std::vector<double> masses_;
  std::vector<std::string> labels_;
  std::optional<std::vector<double>> coordinates_;
  std::optional<double> spacing_;
};

}  // namespace hmvp
