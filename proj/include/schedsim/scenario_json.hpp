#pragma once

#include <string>

#include "schedsim/experiments.hpp"

namespace schedsim {

/// Parses a scenario document. Configuration units are Mbits (task length)
/// and Kbps (bandwidth); everything internal is bits and bits/s.
Scenario scenario_from_json(const std::string& text);

Scenario load_scenario_file(const std::string& path);

/// Resolves a builtin name first, then falls back to a file path.
Scenario resolve_scenario(const std::string& name_or_path);

std::string scenario_to_json(const Scenario& s);

}  // namespace schedsim
