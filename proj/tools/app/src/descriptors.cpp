#include "hmvp_app/descriptors.hpp"

#include <cmath>
#include <fstream>
#include <limits>

#include "hmvp/errors.hpp"
#include "hmvp/weight.hpp"

namespace hmvp::app {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double number(const Json& j, const char* key, std::optional<double> fallback = std::nullopt) {
  if (!j.contains(key)) {
    if (fallback) return *fallback;
    throw InputError(std::string("missing field '") + key + "'");
  }
  if (!j.at(key).is_number()) throw InputError(std::string("field '") + key + "' must be a number");
  return j.at(key).get<double>();
}

double end_point(const Json& j, double infinite) {
  if (j.is_null()) return infinite;
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "-inf") return -kInf;
    if (s == "inf" || s == "+inf") return kInf;
  }
  if (!j.is_number()) throw InputError("interval ends must be numbers or null");
  return j.get<double>();
}

std::size_t node_index(const DiscreteSpace& s, const std::string& key) {
  if (!key.empty() && key.find_first_not_of("0123456789") == std::string::npos) {
    const std::size_t i = std::stoul(key);
    if (i >= s.size()) throw InputError("node " + key + " out of range");
    return i;
  }
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s.label(i) == key) return i;
  }
  throw InputError("unknown node '" + key + "'");
}

std::size_t node_of(const DiscreteSpace& s, const Json& j) {
  if (j.is_number_integer() || j.is_number_unsigned()) {
    const auto i = j.get<long long>();
    if (i < 0 || static_cast<std::size_t>(i) >= s.size()) {
      throw InputError("node " + std::to_string(i) + " out of range");
    }
    return static_cast<std::size_t>(i);
  }
  if (j.is_string()) return node_index(s, j.get<std::string>());
  throw InputError("nodes are given as indices or labels");
}

std::size_t grid_node(const DiscreteSpace& g, double x) {
  const double h = *g.spacing();
  const double k = std::round((x - g.coordinate(0)) / h);
  if (k < 0 || k >= static_cast<double>(g.size()) ||
      std::abs(g.coordinate(static_cast<std::size_t>(k)) - x) > 1e-6 * h) {
    throw InputError("point " + std::to_string(x) + " is not a grid node");
  }
  return static_cast<std::size_t>(k);
}

}  // namespace

Json load_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw InputError("malformed JSON in " + path.string() + ": " + e.what());
  }
}

Json resolve(const Json& j, const std::filesystem::path& base) {
  if (j.is_string()) return load_json(base / j.get<std::string>());
  return j;
}

MetricMeasureSpace parse_space(const Json& j) {
  if (!j.is_object()) throw InputError("space descriptor must be an object");
  const std::string kind = j.value("kind", "");
  if (kind == "weighted-1d") {
    const std::string weight = j.value("weight", "");
    const WeightSpec w = weights::by_name(weight, number(j, "Q", 1.0), number(j, "C", 2.0));
    Interval domain = Interval::real_line();
    if (j.contains("domain")) {
      const Json& d = j.at("domain");
      if (d.is_string() && d.get<std::string>() == "unbounded") {
      } else if (d.is_array() && d.size() == 2) {
        domain = Interval{end_point(d[0], -kInf), end_point(d[1], kInf)};
        if (!(domain.lo < domain.hi)) throw InputError("space domain must have lo < hi");
      } else {
        throw InputError("space domain must be [a, b] or \"unbounded\"");
      }
    }
    return MetricMeasureSpace(WeightedLine(w, domain));
  }
  if (kind == "discrete") {
    std::vector<std::string> labels;
    if (j.contains("points")) {
      for (const auto& p : j.at("points")) labels.push_back(p.is_string() ? p.get<std::string>() : p.dump());
    }
    if (!j.contains("masses")) throw InputError("discrete space needs masses");
    const auto masses = j.at("masses").get<std::vector<double>>();
    if (!labels.empty() && labels.size() != masses.size()) throw InputError("points and masses differ in length");
    const std::string metric = j.value("metric", "table");
    if (metric == "table") {
      if (!j.contains("distances")) throw InputError("metric table needs 'distances'");
      return MetricMeasureSpace(DiscreteSpace::from_table(
          j.at("distances").get<std::vector<std::vector<double>>>(), masses, labels));
    }
    if (metric == "edges") {
      std::vector<Edge> edges;
      for (const auto& e : j.at("edges")) {
        if (!e.is_array() || e.size() != 3) throw InputError("edges are [from, to, length]");
        edges.push_back({e[0].get<std::size_t>(), e[1].get<std::size_t>(), e[2].get<double>()});
      }
      return MetricMeasureSpace(DiscreteSpace::from_edges(masses.size(), edges, masses, labels));
    }
    throw InputError("metric must be \"table\" or \"edges\"");
  }
  throw InputError("unknown space kind '" + kind + "'");
}

FieldFunction parse_function(const Json& j) {
  if (j.is_string()) return parse_function(Json{{"id", j.get<std::string>()}});
  if (!j.is_object()) throw InputError("function reference must be a string or object");
  if (j.contains("values")) return FieldFunction::sampled(j.at("values").get<std::vector<double>>());
  const std::string id = j.value("id", "");
  if (id == "constant") return functions::constant(number(j, "c", 0.0));
  if (id == "affine") return functions::affine(number(j, "a", 1.0), number(j, "b", 0.0));
  if (id == "reciprocal") return functions::reciprocal();
  if (id == "one_plus_exp2x") return functions::one_plus_exp2x();
  if (id == "logistic_inv") return functions::logistic_inv();
  if (id == "square") return functions::square();
  if (id == "a_over_x_plus_b") return functions::a_over_x_plus_b(number(j, "A"), number(j, "B"));
  if (id == "c_plus_d_exp2x") return functions::c_plus_d_exp2x(number(j, "c"), number(j, "d"));
  throw InputError("unknown function '" + id + "'");
}

Point parse_point(const MetricMeasureSpace& space, const Json& j) {
  if (space.is_line()) {
    if (!j.is_number()) throw InputError("line points are numbers");
    return j.get<double>();
  }
  return NodeId{node_of(space.discrete(), j)};
}

Domain parse_domain(const MetricMeasureSpace& space, const Json& j) {
  if (j.is_null() || (j.is_string() && j.get<std::string>() == "whole")) return Domain::whole();
  if (j.is_array() && j.size() == 2 && space.is_line()) {
    return Domain::interval(end_point(j[0], -kInf), end_point(j[1], kInf));
  }
  if (j.is_object() && space.is_discrete()) {
    std::vector<std::size_t> in, bd;
    for (const auto& n : j.at("interior")) in.push_back(node_of(space.discrete(), n));
    if (j.contains("boundary")) {
      for (const auto& n : j.at("boundary")) bd.push_back(node_of(space.discrete(), n));
    }
    return Domain::nodes(in, bd);
  }
  throw InputError("domain must be \"whole\", an interval or a node set");
}

NodeProblem discretise(const MetricMeasureSpace& space, const Json& problem,
                       std::optional<double> eps) {
  if (!problem.contains("omega")) throw InputError("problem needs 'omega'");
  if (!problem.contains("boundary") || !problem.at("boundary").is_object()) {
    throw InputError("problem needs a 'boundary' object");
  }
  const Json& omega = problem.at("omega");
  const Json& boundary = problem.at("boundary");
  if (space.is_line()) {
    if (!problem.contains("grid")) throw InputError("line problems need a 'grid'");
    const Json& g = problem.at("grid");
    const double h = number(g, "spacing");
    if (eps && h > *eps / 4.0 * (1 + 1e-12)) {
      throw InputError("grid spacing must be at most eps/4");
    }
    NodeProblem np{DiscreteSpace::grid(space.line(), number(g, "lo"), number(g, "hi"), h), {}, {}};
    if (!omega.is_array() || omega.size() != 2) throw InputError("omega must be an interval [a, b]");
    const double a = end_point(omega[0], -kInf), b = end_point(omega[1], kInf);
    for (std::size_t i = 0; i < np.space.size(); ++i) {
      const double x = np.space.coordinate(i);
      if (x > a + 1e-9 * h && x < b - 1e-9 * h) np.omega.push_back(i);
    }
    for (const auto& [key, value] : boundary.items()) {
      double x = 0;
      try {
        x = std::stod(key);
      } catch (const std::exception&) {
        throw InputError("boundary key '" + key + "' is not a coordinate");
      }
      np.boundary[grid_node(np.space, x)] = value.get<double>();
    }
    return np;
  }
  NodeProblem np{space.discrete(), {}, {}};
  if (!omega.is_array()) throw InputError("omega must be a node list");
  for (const auto& n : omega) np.omega.push_back(node_of(np.space, n));
  for (const auto& [key, value] : boundary.items()) {
    np.boundary[node_index(np.space, key)] = value.get<double>();
  }
  return np;
}

SamplePlan parse_sample_plan(const MetricMeasureSpace& space, const Json& j) {
  SamplePlan p;
  if (!j.contains("centers") || !j.contains("radii")) throw InputError("sample plan needs centers and radii");
  for (const auto& c : j.at("centers")) p.centers.push_back(parse_point(space, c));
  p.radii = j.at("radii").get<std::vector<double>>();
  if (j.contains("epsilons")) p.epsilons = j.at("epsilons").get<std::vector<double>>();
  p.reciprocal_eps = j.value("reciprocal_eps", false);
  p.threshold = j.value("threshold", p.threshold);
  p.ahlfors_max_constant = j.value("ahlfors_max_constant", p.ahlfors_max_constant);
  if (j.contains("continuity_probes")) {
    p.continuity_probes = j.at("continuity_probes").get<std::vector<double>>();
  }
  p.report_eps = j.value("report_eps", p.report_eps);
  return p;
}

}  // namespace hmvp::app
