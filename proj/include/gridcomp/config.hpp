#pragma once

#include "gridcomp/codec.hpp"

#include <json.hpp>

#include <optional>
#include <string>

namespace gridcomp {

// Configuration document (JSON), one experiment setup per file:
//
// {
//   "grid": {
//     "upstream": [ {"v_ref": 315.0, "r_droop": 0.1, "r_line": 0.67, "r_load": 99.0}, ... ],
//     "downstream": {"v_ref": 315.0, "r_droop": 0.1, "r_line": 0.81, "r_load": 99.0}
//   },
//   "task": {"direction": "cw"},                  // or {"weights": [...], "anchor": 2}
//   "encoding": {"amplitude": 1.0},               // optional, volts per lit pixel
//   "overrides": {"delta_r": [...], "v_sec": [...]}  // optional, bypass the compiler
// }
//
// "anchor" is the 1-based upstream DER number. Override vectors carry one
// entry per DER, downstream last.
struct Config {
    GridSpec grid;
    std::optional<Direction> direction;    ///< task.direction
    std::optional<WeightTask> custom_task; ///< task.weights / task.anchor
    double amplitude = 1.0;
    std::optional<std::vector<double>> override_droop_offsets;
    std::optional<std::vector<double>> override_secondary_offsets;

    bool operator==(const Config&) const = default;
};

/// Canonical grid, clockwise rotation task, 1 V encoding.
Config canonical_config();

Config config_from_json(const nlohmann::ordered_json& j);
nlohmann::ordered_json config_to_json(const Config& config);

/// Parse a config file; wraps I/O and schema problems in ConfigError.
Config load_config_file(const std::string& path);

} // namespace gridcomp
