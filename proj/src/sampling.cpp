#include "gridcomp/sampling.hpp"

#include "gridcomp/errors.hpp"
#include "gridcomp/steady_state.hpp"

namespace gridcomp {

double CaseSampler::uniform(double lo, double hi) {
    // 53 random mantissa bits -> [0, 1); identical on every platform.
    const double unit = static_cast<double>(rng_() >> 11) * 0x1.0p-53;
    return lo + unit * (hi - lo);
}

std::size_t CaseSampler::index(std::size_t n) {
    return static_cast<std::size_t>(rng_() % n);
}

GridSpec CaseSampler::grid(std::size_t n_upstream) {
    auto der = [&] {
        DerSpec d;
        d.v_ref = uniform(100.0, 400.0);
        d.r_droop = uniform(0.0, 1.0);
        d.r_line = uniform(0.01, 2.0);
        d.r_load = uniform(10.0, 1000.0);
        return d;
    };
    GridSpec g;
    g.upstream.reserve(n_upstream);
    for (std::size_t k = 0; k < n_upstream; ++k) g.upstream.push_back(der());
    g.downstream = der();
    return g;
}

ControlProgram CaseSampler::program(const GridSpec& grid, bool with_inputs) {
    ControlProgram p = ControlProgram::zeros(grid.size());
    for (std::size_t k = 0; k < grid.total(); ++k) {
        // Effective droop in [-0.5, 1] regardless of the sampled r_droop.
        p.droop_offsets[k] = uniform(-0.5, 1.0) - grid.der(k).r_droop;
        p.secondary_offsets[k] = uniform(-3.0, 3.0);
    }
    if (with_inputs)
        for (auto& step : p.input_steps) step = uniform(-2.0, 2.0);
    return p;
}

std::pair<GridSpec, ControlProgram> CaseSampler::valid_case(std::size_t n_upstream,
                                                            bool with_inputs) {
    for (int attempt = 0; attempt < 1000; ++attempt) {
        GridSpec g = grid(n_upstream);
        ControlProgram p = program(g, with_inputs);
        if (!validate(g, p).ok()) continue;
        try {
            solve_nodal(g, p); // drop near-singular draws the tolerance cannot hold
        } catch (const SolveError&) {
            continue;
        }
        return {std::move(g), std::move(p)};
    }
    throw Error("sampler failed to draw a valid case"); // unreachable in practice
}

std::pair<GridSpec, WeightTask> CaseSampler::compilable_task(std::size_t n_upstream) {
    for (int attempt = 0; attempt < 1000; ++attempt) {
        GridSpec g = grid(n_upstream);
        WeightTask task;
        task.weights.resize(n_upstream);
        for (auto& w : task.weights) w = uniform(0.2, 8.0);
        task.anchor = index(n_upstream);
        try {
            const ControlProgram p = compile_program(g, task);
            if (!validate(g, p).ok()) continue;
            solve_nodal(g, p);
            return {std::move(g), std::move(task)};
        } catch (const CompileError&) {
            // resample
        } catch (const SolveError&) {
            // resample
        }
    }
    throw Error("sampler failed to draw a compilable task");
}

} // namespace gridcomp
