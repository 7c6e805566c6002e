#include "gridcomp/config.hpp"

#include "gridcomp/errors.hpp"

#include <fstream>

namespace gridcomp {

using nlohmann::ordered_json;

namespace {

DerSpec der_from_json(const ordered_json& j) {
    DerSpec d;
    d.v_ref = j.at("v_ref").get<double>();
    d.r_droop = j.at("r_droop").get<double>();
    d.r_line = j.at("r_line").get<double>();
    d.r_load = j.at("r_load").get<double>();
    return d;
}

ordered_json der_to_json(const DerSpec& d) {
    return ordered_json{{"v_ref", d.v_ref},
                        {"r_droop", d.r_droop},
                        {"r_line", d.r_line},
                        {"r_load", d.r_load}};
}

} // namespace

Config canonical_config() {
    Config c;
    c.grid = canonical_grid();
    c.direction = Direction::clockwise;
    c.amplitude = 1.0;
    return c;
}

Config config_from_json(const ordered_json& j) {
    try {
        Config c;
        const auto& grid = j.at("grid");
        for (const auto& der : grid.at("upstream")) c.grid.upstream.push_back(der_from_json(der));
        c.grid.downstream = der_from_json(grid.at("downstream"));

        if (j.contains("task")) {
            const auto& task = j.at("task");
            if (task.contains("direction"))
                c.direction = direction_from_string(task.at("direction").get<std::string>());
            if (task.contains("weights")) {
                WeightTask wt;
                wt.weights = task.at("weights").get<std::vector<double>>();
                const auto anchor = task.at("anchor").get<long long>(); // 1-based DER number
                if (anchor < 1 || static_cast<std::size_t>(anchor) > wt.weights.size())
                    throw ConfigError("task.anchor must be a 1-based upstream DER number");
                wt.anchor = static_cast<std::size_t>(anchor - 1);
                c.custom_task = std::move(wt);
            }
        }
        if (j.contains("encoding")) {
            c.amplitude = j.at("encoding").value("amplitude", 1.0);
            if (!(c.amplitude > 0.0)) throw ConfigError("encoding.amplitude must be > 0");
        }
        if (j.contains("overrides")) {
            const auto& overrides = j.at("overrides");
            if (overrides.contains("delta_r"))
                c.override_droop_offsets = overrides.at("delta_r").get<std::vector<double>>();
            if (overrides.contains("v_sec"))
                c.override_secondary_offsets = overrides.at("v_sec").get<std::vector<double>>();
        }
        return c;
    } catch (const ordered_json::exception& e) {
        throw ConfigError(std::string("malformed config: ") + e.what());
    }
}

ordered_json config_to_json(const Config& config) {
    ordered_json grid;
    grid["upstream"] = ordered_json::array();
    for (const auto& der : config.grid.upstream) grid["upstream"].push_back(der_to_json(der));
    grid["downstream"] = der_to_json(config.grid.downstream);

    ordered_json j;
    j["grid"] = std::move(grid);
    if (config.direction || config.custom_task) {
        ordered_json task;
        if (config.direction) task["direction"] = to_string(*config.direction);
        if (config.custom_task) {
            task["weights"] = config.custom_task->weights;
            task["anchor"] = config.custom_task->anchor + 1;
        }
        j["task"] = std::move(task);
    }
    j["encoding"] = ordered_json{{"amplitude", config.amplitude}};
    if (config.override_droop_offsets || config.override_secondary_offsets) {
        ordered_json overrides;
        if (config.override_droop_offsets) overrides["delta_r"] = *config.override_droop_offsets;
        if (config.override_secondary_offsets)
            overrides["v_sec"] = *config.override_secondary_offsets;
        j["overrides"] = std::move(overrides);
    }
    return j;
}

Config load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    ordered_json j;
    try {
        in >> j;
    } catch (const ordered_json::exception& e) {
        throw ConfigError("cannot parse " + path + ": " + e.what());
    }
    return config_from_json(j);
}

} // namespace gridcomp
