#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "hmvp/diagnostics.hpp"
#include "hmvp/dirichlet.hpp"
#include "hmvp/domain.hpp"
#include "hmvp/field.hpp"
#include "hmvp/space.hpp"

namespace hmvp::app {

using Json = nlohmann::json;

/// Reads a JSON file; InputError on missing files or syntax errors.
Json load_json(const std::filesystem::path& path);

/// {"kind":"weighted-1d","weight":..,"domain":[a,b]|"unbounded","Q":..,"C":..}
/// or {"kind":"discrete","points":[..],"metric":"table"|"edges",
///     "distances":[[..]] | "edges":[[i,j,len],..],"masses":[..]}.
MetricMeasureSpace parse_space(const Json& j);

/// Catalog reference: "square", {"id":"affine","a":1,"b":0}, or
/// {"values":[..]} for a sampled table.
FieldFunction parse_function(const Json& j);

/// Number for line spaces; node index or label for discrete spaces.
Point parse_point(const MetricMeasureSpace& space, const Json& j);

/// "whole", [a, b] (null for an infinite end), or
/// {"interior":[nodes],"boundary":[nodes]}.
Domain parse_domain(const MetricMeasureSpace& space, const Json& j);

/// A space descriptor given inline or as a path relative to `base`.
Json resolve(const Json& j, const std::filesystem::path& base);

/// Discretisation of a Dirichlet/Perron descriptor: the node space, Omega,
/// and the boundary data keyed by node.
struct NodeProblem {
  DiscreteSpace space;
  std::vector<std::size_t> omega;
  std::map<std::size_t, double> boundary;
};

/// Uses "grid":{lo,hi,spacing} on line spaces (spacing <= eps/4 when eps is
/// given); omega is an interval there and boundary keys are coordinates.
/// Discrete spaces take omega as a node list and boundary keys as node ids
/// or labels.
NodeProblem discretise(const MetricMeasureSpace& space, const Json& problem,
                       std::optional<double> eps);

SamplePlan parse_sample_plan(const MetricMeasureSpace& space, const Json& j);

}  // namespace hmvp::app
