#include "gridcomp/batch.hpp"

#include <exception>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace gridcomp {

std::vector<OperatingPoint> solve_cases_serial(std::span<const SolveCase> cases,
                                               const SolveSettings& settings) {
    std::vector<OperatingPoint> out(cases.size());
    for (std::size_t i = 0; i < cases.size(); ++i)
        out[i] = solve_nodal(cases[i].grid, cases[i].program, settings);
    return out;
}

std::vector<OperatingPoint> solve_cases_parallel(std::span<const SolveCase> cases,
                                                 const SolveSettings& settings) {
    std::vector<OperatingPoint> out(cases.size());
    std::vector<std::exception_ptr> failures(cases.size());
    const auto n = static_cast<std::ptrdiff_t>(cases.size());

#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        try {
            out[static_cast<std::size_t>(i)] =
                solve_nodal(cases[static_cast<std::size_t>(i)].grid,
                            cases[static_cast<std::size_t>(i)].program, settings);
        } catch (...) {
            failures[static_cast<std::size_t>(i)] = std::current_exception();
        }
    }
    for (const auto& failure : failures)
        if (failure) std::rethrow_exception(failure);
    return out;
}

std::vector<OperatingPoint> solve_cases(std::span<const SolveCase> cases,
                                        const SolveSettings& settings, bool parallel) {
    return parallel ? solve_cases_parallel(cases, settings)
                    : solve_cases_serial(cases, settings);
}

} // namespace gridcomp
