#pragma once

#include "gridcomp/grid_model.hpp"

namespace gridcomp {

struct SolveSettings {
    double residual_tol = 1e-9; ///< acceptance bound for post-solve residuals, > 0
};

/// Droop/load coupling factor 1 - (r_droop + droop_offset) / r_load.
/// Scales the bus voltage relative to the reference in the eliminated
/// droop equation; validate() guarantees it stays away from zero.
double droop_load_factor(const DerSpec& der, double droop_offset);

/// Denominator of the effective input weight of one upstream DER:
/// r_line * droop_load_factor - (r_droop + droop_offset). The downstream
/// current response to this DER's reference scales with its reciprocal.
double weight_denominator(const DerSpec& der, double droop_offset);

/// Worst-case residuals of an operating point against the defining
/// equations (droop, line Ohm, PCC current balance, load bookkeeping).
struct Residuals {
    double droop_max = 0.0;       ///< max |V_k - (V_ref' + R'_k i_k)| [V]
    double kcl = 0.0;             ///< |sum(injections) - downstream_draw| [A]
    double ohm_max = 0.0;         ///< max line-equation residual [A]
    double bookkeeping_max = 0.0; ///< max load-current bookkeeping residual [A]
};

Residuals residuals(const GridSpec& grid, const ControlProgram& program,
                    const OperatingPoint& op);

/// Solve the programmed steady state as a dense linear system in the bus
/// voltages and the PCC voltage (one droop row per DER with the converter
/// current eliminated through the line and load equations, plus the PCC
/// current balance). Input steps add to the upstream references.
///
/// Throws SolveError on a singular system (naming the near-zero pivot) or
/// when the solution fails the residual check.
OperatingPoint solve_nodal(const GridSpec& grid, const ControlProgram& program,
                           const SolveSettings& settings = {});

struct DownstreamSolution {
    double draw = 0.0;        ///< current pulled from the PCC toward the downstream bus [A]
    double der_current = 0.0; ///< downstream converter output current [A]
};

/// Closed-form route to the downstream quantities: the star network reduces
/// to one scalar expression in the per-DER weight denominators. Independent
/// of solve_nodal; the two must agree to solver precision.
DownstreamSolution closed_form_downstream(const GridSpec& grid,
                                          const ControlProgram& program);

/// Per-DER current deviation of the programmed state from the same program
/// with all input steps cleared.
std::vector<double> delta_currents(const GridSpec& grid, const ControlProgram& program,
                                   const SolveSettings& settings = {});

} // namespace gridcomp
