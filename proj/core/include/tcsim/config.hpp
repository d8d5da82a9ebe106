#pragma once

#include <string>

#include "tcsim/scenario.hpp"

namespace tcsim {

/// The standard fog scenario: 500 steps at 0.1 s, all vehicles at 25 m/s at
/// their spacing-policy equilibria, fog over steps [190, 300), handover
/// threshold 0.5. See docs/config.md for every field and default.
ScenarioConfig default_config();

/// Loads a JSON scenario file on top of the defaults. An empty file (or
/// `{}`) yields exactly default_config(). Unknown keys and invariant
/// violations are rejected with a ConfigError naming the offending field
/// path.
ScenarioConfig load_config(const std::string& path);

/// Parses config JSON text (same schema and checks as load_config).
ScenarioConfig parse_config(const std::string& json_text);

/// Serializes a config back to JSON text; parse_config(serialize_config(c))
/// reproduces c exactly.
std::string serialize_config(const ScenarioConfig& cfg);

/// Validates every config invariant; throws ConfigError with a field path.
void validate_config(const ScenarioConfig& cfg);

bool config_equal(const ScenarioConfig& a, const ScenarioConfig& b);

}  // namespace tcsim
