// scenario.hpp: scenario configuration files.
//
// Scenarios are JSON documents; durations are given in milliseconds (the
// unit used throughout the measurement tables) and converted to integer
// cycles on load. See README.md for the schema.
#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>

#include "tdsim/engine.hpp"

namespace tdsim {

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Parses and fully validates a scenario file. Throws ParseError on
// malformed documents and ValidationError with a field-level diagnostic
// when the configuration violates a model invariant.
ScenarioRuntime load_scenario(const std::filesystem::path& path);

// base_dir anchors relative paths referenced by the document
// (e.g. empirical sample files).
ScenarioRuntime parse_scenario(const std::string& json_text, const std::string& origin,
                               const std::filesystem::path& base_dir = {});

} // namespace tdsim
