#pragma once

#include <string>

#include "risgeo/types.hpp"

namespace risgeo {

/// Raised for a key that is not part of the scenario schema, or a value that
/// does not parse. The message names the offending key.
struct ScenarioKeyError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Flat key-value scenario format, one `key = value` per line, `#` comments.
/// Keys match the scenario fields; 3-vectors are three numbers. Units are SI
/// except hpbw_deg (degrees, per the unit policy at the file boundary).
Scenario parse_scenario_text(const std::string& text);
Scenario load_scenario_file(const std::string& path);

/// Applies one `key=value` override on top of a parsed scenario. Unknown keys
/// raise ScenarioKeyError.
void apply_override(Scenario& s, const std::string& key, const std::string& value);

/// Splits "key=value" and applies it.
void apply_override_expr(Scenario& s, const std::string& expr);

/// Single-line canonical form, used in CSV provenance comments.
std::string serialize_scenario(const Scenario& s);

}  // namespace risgeo
