#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>

#include "hmvp_app/output.hpp"

namespace hmvp::app {

struct RunConfig {
  std::string subcommand;
  std::filesystem::path space;
  std::filesystem::path problem;
  std::optional<double> tol;
  std::optional<double> eps;
  std::optional<std::size_t> max_iters;
  std::filesystem::path out;
  Format format = Format::csv;
  std::string example;  // reproduce id
};

Report solve(const RunConfig& cfg);
Report classify(const RunConfig& cfg);
Report diagnose(const RunConfig& cfg);
Report estimate(const RunConfig& cfg);
Report scan_liouville(const RunConfig& cfg);
Report perron(const RunConfig& cfg);

}  // namespace hmvp::app
