#pragma once

#include <string>
#include <vector>

#include "hmvp_app/output.hpp"

namespace hmvp::app {

std::vector<std::string> reproduce_ids();

/// Runs one catalogued example and compares it with its stored expected
/// values.  Unknown ids are an InputError.
Report reproduce(const std::string& id);

}  // namespace hmvp::app
