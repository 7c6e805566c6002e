// gridcomp CLI: steady-state experiments on the programmable 5-bus DC
// microgrid.
//
//   gridcomp compile --config F [--direction cw|ccw | --weights w1,w2,w3,w4 --anchor K]
//   gridcomp solve   --config F [--input BITS]
//   gridcomp run     --config F --input BITS --direction cw|ccw
//   gridcomp sweep   --config F --direction cw|ccw|both --format csv|json [--out PATH]
//   gridcomp verify  --config F
//
// Global: --tolerance X overrides the solver residual tolerance.
// Exit codes: 0 success, 1 verification/decode failure, 2 bad config/usage.

#include "gridcomp/harness.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

using namespace gridcomp;

namespace {

nlohmann::ordered_json rounded_array(const std::vector<double>& xs) {
    nlohmann::ordered_json out = nlohmann::ordered_json::array();
    for (double x : xs) out.push_back(round_sig9(x));
    return out;
}

Direction pick_direction(const std::string& flag, const Config& config,
                         const char* subcommand) {
    if (!flag.empty()) return direction_from_string(flag);
    if (config.direction) return *config.direction;
    throw ConfigError(std::string(subcommand) +
                      " needs --direction or a task.direction in the config");
}

WeightTask pick_task(const std::vector<double>& weights, long long anchor,
                     const std::string& direction_flag, const Config& config) {
    if (!weights.empty()) {
        if (anchor < 1 || static_cast<std::size_t>(anchor) > weights.size())
            throw ConfigError("--anchor must be a 1-based upstream DER number");
        return WeightTask{weights, static_cast<std::size_t>(anchor - 1)};
    }
    if (!direction_flag.empty())
        return RotationTask::for_direction(direction_from_string(direction_flag)).task;
    if (config.custom_task) return *config.custom_task;
    if (config.direction) return RotationTask::for_direction(*config.direction).task;
    throw ConfigError("compile needs --weights/--anchor, --direction, or a task section");
}

int cmd_compile(const Config& config, const WeightTask& task,
                const SolveSettings& settings) {
    const auto droop = compile_droop_offsets(config.grid, task);
    const auto secondary = compile_secondary_offsets(config.grid, droop, settings);
    nlohmann::ordered_json out;
    out["weights"] = task.weights;
    out["anchor"] = task.anchor + 1;
    out["delta_r"] = rounded_array(droop);
    out["v_sec"] = rounded_array(secondary);
    std::cout << out.dump(2) << '\n';
    return 0;
}

ControlProgram program_for_solve(const Config& config, const SolveSettings& settings) {
    if (config.override_droop_offsets || config.override_secondary_offsets ||
        config.custom_task || config.direction) {
        return prepare(config, config.direction.value_or(Direction::clockwise), settings)
            .program;
    }
    return ControlProgram::zeros(config.grid.size()); // unprogrammed rated state
}

int cmd_solve(const Config& config, const std::string& input,
              const SolveSettings& settings) {
    ControlProgram program = program_for_solve(config, settings);
    if (!input.empty())
        program.input_steps = encode(Image2x2::from_string(input), config.amplitude);
    const OperatingPoint op = solve_nodal(config.grid, program, settings);

    nlohmann::ordered_json out;
    out["delta_r"] = rounded_array(program.droop_offsets);
    out["v_sec"] = rounded_array(program.secondary_offsets);
    out["input_steps"] = rounded_array(program.input_steps);
    out["bus_voltages"] = rounded_array(op.bus_voltages);
    out["der_currents"] = rounded_array(op.der_currents);
    out["injections"] = rounded_array(op.injections);
    out["downstream_draw"] = round_sig9(op.downstream_draw);
    out["pcc_voltage"] = round_sig9(op.pcc_voltage);
    std::cout << out.dump(2) << '\n';
    return 0;
}

int cmd_run(const Config& config, const std::string& input, Direction direction,
            const SolveSettings& settings) {
    const CaseResult c = run_case(config, Image2x2::from_string(input), direction, settings);
    nlohmann::ordered_json out;
    out["direction"] = to_string(c.direction);
    out["bits"] = c.image.to_string();
    out["delta_i"] = rounded_array(c.delta_i);
    out["decoded"] = c.decoded;
    out["expected"] = c.expected;
    out["residual"] = round_sig9(c.residual);
    std::cout << out.dump(2) << '\n';
    return c.decoded == c.expected ? 0 : 1;
}

int cmd_sweep(const Config& config, const std::string& direction_flag,
              const std::string& format, const std::string& out_path,
              const SolveSettings& settings) {
    std::vector<SweepReport> reports;
    if (direction_flag == "both" || direction_flag.empty()) {
        reports.push_back(sweep(config, Direction::clockwise, settings));
        reports.push_back(sweep(config, Direction::counterclockwise, settings));
    } else {
        reports.push_back(sweep(config, direction_from_string(direction_flag), settings));
    }

    std::ofstream file;
    std::ostream* out = &std::cout;
    if (!out_path.empty()) {
        file.open(out_path);
        if (!file) throw ConfigError("cannot open output file: " + out_path);
        out = &file;
    }
    if (format == "csv") {
        emit_csv(reports, *out);
    } else {
        *out << reports_to_json(reports).dump(2) << '\n';
    }
    return 0;
}

int cmd_verify(const Config& config, const SolveSettings& settings) {
    const VerificationReport report = verify(config, settings);
    std::cout << report.to_text();
    return report.all_passed() ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"computations on a droop-programmed DC microgrid"};
    app.require_subcommand(1);

    std::string config_path;
    double tolerance = 1e-9;
    app.add_option("--tolerance", tolerance, "solver residual tolerance")
        ->check(CLI::PositiveNumber);

    auto add_config = [&](CLI::App* cmd) {
        cmd->add_option("--config", config_path, "configuration JSON")->required();
    };

    auto* compile_cmd = app.add_subcommand("compile", "derive droop and secondary offsets");
    std::string compile_direction;
    std::vector<double> weights;
    long long anchor = 0;
    add_config(compile_cmd);
    compile_cmd->add_option("--direction", compile_direction)->check(CLI::IsMember({"cw", "ccw"}));
    compile_cmd->add_option("--weights", weights, "target weights, comma separated")
        ->delimiter(',');
    compile_cmd->add_option("--anchor", anchor, "1-based anchor DER (with --weights)");

    auto* solve_cmd = app.add_subcommand("solve", "solve one steady state");
    std::string input_bits;
    add_config(solve_cmd);
    solve_cmd->add_option("--input", input_bits, "row-major bit string, e.g. 0101");

    auto* run_cmd = app.add_subcommand("run", "run one image case");
    std::string run_direction;
    add_config(run_cmd);
    run_cmd->add_option("--input", input_bits, "row-major bit string")->required();
    run_cmd->add_option("--direction", run_direction)->check(CLI::IsMember({"cw", "ccw"}));

    auto* sweep_cmd = app.add_subcommand("sweep", "run all 16 images");
    std::string sweep_direction = "both";
    std::string format = "csv";
    std::string out_path;
    add_config(sweep_cmd);
    sweep_cmd->add_option("--direction", sweep_direction)
        ->check(CLI::IsMember({"cw", "ccw", "both"}));
    sweep_cmd->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}));
    sweep_cmd->add_option("--out", out_path, "output path (default stdout)");

    auto* verify_cmd = app.add_subcommand("verify", "run the verification battery");
    add_config(verify_cmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        const Config config = load_config_file(config_path);
        const SolveSettings settings{tolerance};
        if (compile_cmd->parsed())
            return cmd_compile(config, pick_task(weights, anchor, compile_direction, config),
                               settings);
        if (solve_cmd->parsed()) return cmd_solve(config, input_bits, settings);
        if (run_cmd->parsed())
            return cmd_run(config, input_bits,
                           pick_direction(run_direction, config, "run"), settings);
        if (sweep_cmd->parsed())
            return cmd_sweep(config, sweep_direction, format, out_path, settings);
        if (verify_cmd->parsed()) return cmd_verify(config, settings);
        return 2;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const CompileError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const CalibrationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
