#pragma once

#include "gridcomp/weight_compiler.hpp"

#include <cstdint>
#include <random>
#include <utility>

namespace gridcomp {

/// Deterministic generator of valid random grids, programs and weight
/// tasks for property checks and benchmarks. Parameter ranges:
/// r_line in [0.01, 2], r_load in [10, 1000], v_ref in [100, 400],
/// effective droop (r_droop + offset) in [-0.5, 1], input steps in [-2, 2],
/// secondary offsets in [-3, 3]. Draws that fail validate(), or whose
/// steady state cannot be resolved to tolerance, are rejected and
/// resampled, so every returned case solves.
class CaseSampler {
public:
    explicit CaseSampler(std::uint64_t seed) : rng_(seed) {}

    /// Uniform double in [lo, hi); bit-reproducible across platforms
    /// (mt19937_64 output mapped directly, no library distributions).
    double uniform(double lo, double hi);

    /// Uniform integer in [0, n).
    std::size_t index(std::size_t n);

    GridSpec grid(std::size_t n_upstream = 4);
    ControlProgram program(const GridSpec& grid, bool with_inputs = true);
    std::pair<GridSpec, ControlProgram> valid_case(std::size_t n_upstream = 4,
                                                   bool with_inputs = true);

    /// Positive weights in [0.2, 8] with a random anchor; resampled together
    /// with a fresh grid until the compiled program validates.
    std::pair<GridSpec, WeightTask> compilable_task(std::size_t n_upstream = 4);

private:
    std::mt19937_64 rng_;
};

} // namespace gridcomp
