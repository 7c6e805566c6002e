#pragma once

// Test-only reference machinery, kept independent of the library's solver
// path: the steady state is written out as the full set of raw physical
// equations (droop, load bookkeeping, line Ohm, PCC balance) over voltages
// AND currents, and solved with a local Gauss-Jordan elimination. No Eigen,
// no shared code with solve_nodal.

#include "gridcomp/grid_model.hpp"

#include <cassert>
#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

namespace oracle {

// |a - b| <= tol * max(1, |a|, |b|): relative with an absolute floor of 1.
inline bool close(double a, double b, double tol) {
    return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

// Plain absolute tolerance.
inline bool within(double a, double b, double abs_tol) {
    return std::abs(a - b) <= abs_tol;
}

inline double gap(double a, double b) {
    return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)});
}

// Gauss-Jordan with partial pivoting on a dense augmented system.
inline std::vector<double> gauss_solve(std::vector<std::vector<double>> a,
                                       std::vector<double> b) {
    const std::size_t n = a.size();
    for (std::size_t i = 0; i < n; ++i) a[i].push_back(b[i]);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
        std::swap(a[col], a[piv]);
        assert(std::abs(a[col][col]) > 0.0);
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col) continue;
            const double f = a[r][col] / a[col][col];
            if (f == 0.0) continue;
            for (std::size_t j = col; j <= n; ++j) a[r][j] -= f * a[col][j];
        }
    }
    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = a[i][n] / a[i][i];
    return x;
}

struct FullSolution {
    std::vector<double> bus_voltages; // N+1, downstream last
    std::vector<double> der_currents; // N+1
    std::vector<double> injections;   // N
    double downstream_draw = 0.0;
    double pcc_voltage = 0.0;
};

// Unknown layout: [V_1..V_N, V_down, V_pcc, i_1..i_N, i_down, iin_1..iin_N, i_out].
inline FullSolution solve_full(const gridcomp::GridSpec& grid,
                               const gridcomp::ControlProgram& program) {
    const std::size_t n = grid.size();
    const std::size_t m = 3 * n + 4;
    const std::size_t v0 = 0, vpcc = n + 1, i0 = n + 2, iin0 = 2 * n + 3,
                      iout = 3 * n + 3;
    std::vector<std::vector<double>> a(m, std::vector<double>(m, 0.0));
    std::vector<double> b(m, 0.0);
    std::size_t row = 0;

    // Droop law per DER: V_k - R'_k i_k = V_ref,k (+ step) (+ secondary).
    for (std::size_t k = 0; k <= n; ++k) {
        const auto& der = grid.der(k);
        a[row][v0 + k] = 1.0;
        a[row][i0 + k] = -(der.r_droop + program.droop_offsets[k]);
        b[row] = der.v_ref + program.secondary_offsets[k] +
                 (k < n ? program.input_steps[k] : 0.0);
        ++row;
    }
    // Load bookkeeping, upstream: iin_k - i_k + V_k / r_load = 0.
    for (std::size_t k = 0; k < n; ++k) {
        a[row][iin0 + k] = 1.0;
        a[row][i0 + k] = -1.0;
        a[row][v0 + k] = 1.0 / grid.upstream[k].r_load;
        ++row;
    }
    // Load bookkeeping, downstream: i_out + i_down - V_down / r_load = 0.
    a[row][iout] = 1.0;
    a[row][i0 + n] = 1.0;
    a[row][v0 + n] = -1.0 / grid.downstream.r_load;
    ++row;
    // Line Ohm, upstream: (V_k - V_pcc) / r_line - iin_k = 0.
    for (std::size_t k = 0; k < n; ++k) {
        a[row][v0 + k] = 1.0 / grid.upstream[k].r_line;
        a[row][vpcc] = -1.0 / grid.upstream[k].r_line;
        a[row][iin0 + k] = -1.0;
        ++row;
    }
    // Line Ohm, downstream: (V_pcc - V_down) / r_line - i_out = 0.
    a[row][vpcc] = 1.0 / grid.downstream.r_line;
    a[row][v0 + n] = -1.0 / grid.downstream.r_line;
    a[row][iout] = -1.0;
    ++row;
    // PCC balance: sum(iin) - i_out = 0.
    for (std::size_t k = 0; k < n; ++k) a[row][iin0 + k] = 1.0;
    a[row][iout] = -1.0;
    ++row;
    assert(row == m);

    const auto x = gauss_solve(std::move(a), std::move(b));
    FullSolution s;
    s.bus_voltages.assign(x.begin() + v0, x.begin() + v0 + n + 1);
    s.pcc_voltage = x[vpcc];
    s.der_currents.assign(x.begin() + i0, x.begin() + i0 + n + 1);
    s.injections.assign(x.begin() + iin0, x.begin() + iin0 + n);
    s.downstream_draw = x[iout];
    return s;
}

// Fixed point of a grid whose DERs are all identical: every bus sits at the
// PCC voltage, no line carries current.
inline double symmetric_bus_voltage(const gridcomp::DerSpec& der) {
    return der.v_ref / (1.0 - der.r_droop / der.r_load);
}

inline double symmetric_der_current(const gridcomp::DerSpec& der) {
    return der.v_ref / (der.r_load - der.r_droop);
}

// Root of f on [lo, hi] by bisection; f(lo) and f(hi) must bracket.
inline double bisect(const std::function<double(double)>& f, double lo, double hi) {
    double flo = f(lo);
    assert(flo * f(hi) < 0.0);
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if (fm == 0.0) return mid;
        if ((flo < 0.0) == (fm < 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

} // namespace oracle
