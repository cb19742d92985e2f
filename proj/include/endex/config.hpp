// Run configuration: JSON ingestion with explicit units, validated strictly
// (unknown fields and unit mismatches are errors), converted to SI on load.

#ifndef ENDEX_CONFIG_HPP
#define ENDEX_CONFIG_HPP

#include <optional>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "endex/scenarios.hpp"

namespace endex {

class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

struct OutputFlags {
    bool csv = true;
    bool json = true;
};

struct RunConfig {
    ScenarioSpec spec;         // named scenario (with overrides applied) or custom
    RunTolerances tolerances;
    std::string output_dir = "out";
    OutputFlags format;
};

// Parse and validate a config file; all values carry explicit units.
RunConfig load_config(const std::string& path);
RunConfig config_from_json(const nlohmann::json& j);

// The fully resolved configuration, emitted into summary.json; feeding it
// back through config_from_json reproduces the identical run.
nlohmann::json resolved_config_json(const RunConfig& cfg);

// Convert (value, unit) to SI for a named parameter; throws ConfigError with
// the field name and expected unit on a mismatch.
double convert_to_si(const std::string& field, double value, const std::string& unit);

// The canonical unit string for a config field (e.g. "kg/s" for Fs).
std::string expected_unit(const std::string& field);

// Assign an SI value to a named parameter field (tunables and constants).
void set_model_field(ModelParams& P, const std::string& field, double si_value);

}  // namespace endex

#endif  // ENDEX_CONFIG_HPP
