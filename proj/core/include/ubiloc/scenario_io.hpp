#pragma once

#include <filesystem>
#include <string>

#include "ubiloc/scenario.hpp"

namespace ubiloc {

// JSON scenario files use meters for lengths and degrees for angles; the
// in-memory model is meters/radians. Parsing validates the result and throws
// ValidationError on malformed input.
Scenario scenario_from_json_text(const std::string& text);
std::string scenario_to_json_text(const Scenario& s);

Scenario load_scenario(const std::filesystem::path& path);
void save_scenario(const Scenario& s, const std::filesystem::path& path);

}  // namespace ubiloc
