#pragma once

#include "gridcomp/steady_state.hpp"

#include <span>
#include <vector>

namespace gridcomp {

/// One independent steady-state problem.
struct SolveCase {
    GridSpec grid;
    ControlProgram program;
};

/// Reference implementation: one case after another on the calling thread.
std::vector<OperatingPoint> solve_cases_serial(std::span<const SolveCase> cases,
                                               const SolveSettings& settings = {});

/// OpenMP work-shared variant. Cases share no state, so the results are
/// identical to the serial path; the first failing case (lowest index)
/// determines the exception that propagates.
std::vector<OperatingPoint> solve_cases_parallel(std::span<const SolveCase> cases,
                                                 const SolveSettings& settings = {});

/// Dispatch helper used by the harness.
std::vector<OperatingPoint> solve_cases(std::span<const SolveCase> cases,
                                        const SolveSettings& settings = {},
                                        bool parallel = true);

} // namespace gridcomp
