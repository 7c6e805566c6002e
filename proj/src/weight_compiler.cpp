#include "gridcomp/weight_compiler.hpp"

#include "gridcomp/errors.hpp"

#include <cmath>
#include <sstream>

namespace gridcomp {

namespace {

void check_task(const GridSpec& grid, const WeightTask& task) {
    if (task.weights.size() != grid.size()) {
        std::ostringstream os;
        os << "task has " << task.weights.size() << " weights for "
           << grid.size() << " upstream DERs";
        throw CompileError(os.str());
    }
    if (task.anchor >= task.weights.size())
        throw CompileError("anchor index out of range");
    for (std::size_t k = 0; k < task.weights.size(); ++k) {
        if (!(task.weights[k] > 0.0)) {
            std::ostringstream os;
            os << "weight for DER " << k + 1 << " must be > 0, got " << task.weights[k];
            throw CompileError(os.str());
        }
    }
}

std::vector<double> probe_responses(const GridSpec& grid, const ControlProgram& program,
                                    const SolveSettings& settings) {
    require_valid(grid, program);
    const ControlProgram rated = program.without_inputs();
    const double base = solve_nodal(grid, rated, settings).der_currents[grid.size()];
    std::vector<double> responses(grid.size());
    for (std::size_t k = 0; k < grid.size(); ++k) {
        ControlProgram stepped = rated;
        stepped.input_steps[k] = 1.0;
        responses[k] = solve_nodal(grid, stepped, settings).der_currents[grid.size()] - base;
    }
    return responses;
}

} // namespace

std::vector<double> compile_droop_offsets(const GridSpec& grid, const WeightTask& task) {
    check_task(grid, task);
    const std::size_t n = grid.size();

    const double anchor_den = weight_denominator(grid.upstream[task.anchor], 0.0);
    std::vector<double> offsets(n + 1, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
        if (k == task.anchor) continue;
        const DerSpec& der = grid.upstream[k];
        // The denominator r_line*factor - effective_droop is affine in the
        // offset: invert it toward the target anchor_den * w_anchor / w_k.
        const double target = anchor_den * task.anchor_weight() / task.weights[k];
        const double slope = 1.0 + der.r_line / der.r_load;
        offsets[k] = (der.r_line - der.r_droop * slope - target) / slope;
    }

    ControlProgram program = ControlProgram::zeros(n);
    program.droop_offsets = offsets;
    if (const auto report = validate(grid, program); !report.ok())
        throw CompileError("compiled offsets leave the grid invalid: " +
                           report.to_string());
    return offsets;
}

std::vector<double> compile_secondary_offsets(const GridSpec& grid,
                                              const std::vector<double>& droop_offsets,
                                              const SolveSettings& settings) {
    ControlProgram program = ControlProgram::zeros(grid.size());
    program.droop_offsets = droop_offsets;
    require_valid(grid, program);

    const OperatingPoint rated =
        solve_nodal(grid, ControlProgram::zeros(grid.size()), settings);
    std::vector<double> secondary(droop_offsets.size());
    for (std::size_t k = 0; k < secondary.size(); ++k)
        secondary[k] = -droop_offsets[k] * rated.der_currents[k];
    return secondary;
}

ControlProgram compile_program(const GridSpec& grid, const WeightTask& task,
                               const SolveSettings& settings) {
    ControlProgram program = ControlProgram::zeros(grid.size());
    program.droop_offsets = compile_droop_offsets(grid, task);
    program.secondary_offsets =
        compile_secondary_offsets(grid, program.droop_offsets, settings);
    return program;
}

double equivalent_admittance(const GridSpec& grid, const ControlProgram& program,
                             std::size_t k) {
    require_valid(grid, program);
    if (k >= grid.size()) throw Error("equivalent_admittance: index out of range");

    double scaled_factors = 0.0;
    for (std::size_t j = 0; j < grid.size(); ++j)
        scaled_factors += droop_load_factor(grid.upstream[j], program.droop_offsets[j]) /
                          weight_denominator(grid.upstream[j], program.droop_offsets[j]);
    const DerSpec& down = grid.downstream;
    const double down_factor = droop_load_factor(down, program.droop_offsets[grid.size()]);
    const double down_den = weight_denominator(down, program.droop_offsets[grid.size()]);
    const double denominator = 1.0 + scaled_factors * down_den / down_factor;
    if (std::abs(denominator) <=
        1e-12 * (1.0 + std::abs(scaled_factors * down_den / down_factor)))
        throw SolveError("singular steady-state system: downstream response denominator is zero");
    return 1.0 / weight_denominator(grid.upstream[k], program.droop_offsets[k]) / denominator;
}

std::vector<double> measure_effective_weights(const GridSpec& grid,
                                              const ControlProgram& program,
                                              std::size_t anchor, double anchor_weight,
                                              const SolveSettings& settings) {
    if (anchor >= grid.size())
        throw CalibrationError("anchor index out of range");
    const auto responses = probe_responses(grid, program, settings);
    if (responses[anchor] == 0.0)
        throw CalibrationError("anchor DER shows no downstream response");
    std::vector<double> weights(responses.size());
    for (std::size_t k = 0; k < responses.size(); ++k)
        weights[k] = responses[k] / responses[anchor] * anchor_weight;
    return weights;
}

std::vector<double> measure_effective_weights(const GridSpec& grid,
                                              const ControlProgram& program,
                                              const WeightTask& task,
                                              const SolveSettings& settings) {
    check_task(grid, task);
    return measure_effective_weights(grid, program, task.anchor, task.anchor_weight(),
                                     settings);
}

Calibration calibrate(const GridSpec& grid, const ControlProgram& program,
                      const WeightTask& task, const SolveSettings& settings) {
    check_task(grid, task);
    const auto responses = probe_responses(grid, program, settings);
    const double kappa = responses[task.anchor] / task.anchor_weight();
    if (kappa == 0.0 || !std::isfinite(kappa))
        throw CalibrationError("anchor DER shows no downstream response");
    return Calibration{kappa, task.anchor};
}

} // namespace gridcomp
