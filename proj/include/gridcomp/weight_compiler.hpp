#pragma once

#include "gridcomp/grid_model.hpp"
#include "gridcomp/steady_state.hpp"

namespace gridcomp {

/// Target computational weights for the upstream DERs. Weights are defined
/// up to a common scale; the anchor DER keeps a zero droop offset and fixes
/// that scale.
struct WeightTask {
    std::vector<double> weights; ///< one per upstream DER, all > 0
    std::size_t anchor = 0;      ///< index into weights of the anchor DER

    double anchor_weight() const { return weights.at(anchor); }

    bool operator==(const WeightTask&) const = default;
};

/// Measured downstream current response per volt of input step and per unit
/// weight. decode() divides by kappa to recover the weighted bit sum.
struct Calibration {
    double kappa = 0.0;     ///< [A / (V * weight)], nonzero
    std::size_t anchor = 0; ///< probe index used to measure it
};

/// Droop offsets realizing the task's weight ratios. The weight denominator
/// is affine in the offset, so each entry has a closed form; the anchor and
/// downstream entries stay exactly zero. Throws CompileError on non-positive
/// weights or when the offsets would leave the grid invalid.
std::vector<double> compile_droop_offsets(const GridSpec& grid, const WeightTask& task);

/// Secondary reference corrections -droop_offset * i0 per DER, with i0 the
/// converter currents of the unprogrammed (all-offsets-zero) steady state.
/// Restores the rated power flow exactly when no input is applied.
std::vector<double> compile_secondary_offsets(const GridSpec& grid,
                                              const std::vector<double>& droop_offsets,
                                              const SolveSettings& settings = {});

/// Both compile stages combined into a ready-to-run program (zero inputs).
ControlProgram compile_program(const GridSpec& grid, const WeightTask& task,
                               const SolveSettings& settings = {});

/// Sensitivity of the downstream draw to upstream reference k, evaluated in
/// closed form. Equals the finite-difference quotient of
/// closed_form_downstream for any step size (the system is affine).
double equivalent_admittance(const GridSpec& grid, const ControlProgram& program,
                             std::size_t k);

/// Probe the downstream current response to a unit input step on each
/// upstream DER and normalize so the anchor reads anchor_weight.
std::vector<double> measure_effective_weights(const GridSpec& grid,
                                              const ControlProgram& program,
                                              std::size_t anchor,
                                              double anchor_weight = 1.0,
                                              const SolveSettings& settings = {});

/// Overload taking the anchor and its weight from a task.
std::vector<double> measure_effective_weights(const GridSpec& grid,
                                              const ControlProgram& program,
                                              const WeightTask& task,
                                              const SolveSettings& settings = {});

/// Measure kappa from the anchor-DER probe: response to a unit step divided
/// by the anchor weight. Throws CalibrationError on a vanishing response.
Calibration calibrate(const GridSpec& grid, const ControlProgram& program,
                      const WeightTask& task, const SolveSettings& settings = {});

} // namespace gridcomp
