#include "gridcomp/steady_state.hpp"

#include "gridcomp/errors.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <sstream>

namespace gridcomp {

double droop_load_factor(const DerSpec& der, double droop_offset) {
    return 1.0 - (der.r_droop + droop_offset) / der.r_load;
}

double weight_denominator(const DerSpec& der, double droop_offset) {
    const double effective = der.r_droop + droop_offset;
    return der.r_line * droop_load_factor(der, droop_offset) - effective;
}

namespace {

double effective_reference(const GridSpec& grid, const ControlProgram& program,
                           std::size_t k) {
    double v = grid.der(k).v_ref + program.secondary_offsets[k];
    if (k < grid.size()) v += program.input_steps[k];
    return v;
}

std::string unknown_name(std::size_t idx, std::size_t n) {
    std::ostringstream os;
    if (idx <= n)
        os << "V_" << idx + 1;
    else
        os << "V_PCC";
    return os.str();
}

// Currents recovered from the solved voltages via the line and load
// relations, so the Ohm and bookkeeping residuals vanish by construction.
OperatingPoint recover_currents(const GridSpec& grid, Eigen::VectorXd x) {
    const std::size_t n = grid.size();
    OperatingPoint op;
    op.pcc_voltage = x[static_cast<Eigen::Index>(n + 1)];
    op.bus_voltages.assign(x.data(), x.data() + n + 1);
    op.injections.resize(n);
    op.der_currents.resize(n + 1);
    for (std::size_t k = 0; k < n; ++k) {
        const DerSpec& der = grid.upstream[k];
        op.injections[k] = (op.bus_voltages[k] - op.pcc_voltage) / der.r_line;
        op.der_currents[k] = op.injections[k] + op.bus_voltages[k] / der.r_load;
    }
    const DerSpec& down = grid.downstream;
    op.downstream_draw = (op.pcc_voltage - op.bus_voltages[n]) / down.r_line;
    op.der_currents[n] = op.bus_voltages[n] / down.r_load - op.downstream_draw;
    return op;
}

} // namespace

Residuals residuals(const GridSpec& grid, const ControlProgram& program,
                    const OperatingPoint& op) {
    const std::size_t n = grid.size();
    Residuals r;
    for (std::size_t k = 0; k <= n; ++k) {
        const DerSpec& der = grid.der(k);
        const double droop =
            op.bus_voltages[k] - effective_reference(grid, program, k) -
            (der.r_droop + program.droop_offsets[k]) * op.der_currents[k];
        r.droop_max = std::max(r.droop_max, std::abs(droop));
    }
    double inflow = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const DerSpec& der = grid.upstream[k];
        const double ohm =
            (op.bus_voltages[k] - op.pcc_voltage) / der.r_line - op.injections[k];
        const double book =
            op.injections[k] - (op.der_currents[k] - op.bus_voltages[k] / der.r_load);
        r.ohm_max = std::max(r.ohm_max, std::abs(ohm));
        r.bookkeeping_max = std::max(r.bookkeeping_max, std::abs(book));
        inflow += op.injections[k];
    }
    const DerSpec& down = grid.downstream;
    const double ohm_down =
        (op.pcc_voltage - op.bus_voltages[n]) / down.r_line - op.downstream_draw;
    const double book_down =
        op.downstream_draw - (op.bus_voltages[n] / down.r_load - op.der_currents[n]);
    r.ohm_max = std::max(r.ohm_max, std::abs(ohm_down));
    r.bookkeeping_max = std::max(r.bookkeeping_max, std::abs(book_down));
    r.kcl = std::abs(inflow - op.downstream_draw);
    return r;
}

OperatingPoint solve_nodal(const GridSpec& grid, const ControlProgram& program,
                           const SolveSettings& settings) {
    require_valid(grid, program);
    if (!(settings.residual_tol > 0.0))
        throw SolveError("residual_tol must be > 0");

    // Unknowns x = [V_1 .. V_n, V_down, V_pcc]. Each droop row eliminates
    // the converter current through the line and load equations; the last
    // row balances the PCC.
    const std::size_t n = grid.size();
    const auto m = static_cast<Eigen::Index>(n + 2);
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(m, m);
    Eigen::VectorXd b = Eigen::VectorXd::Zero(m);

    for (std::size_t k = 0; k <= n; ++k) {
        const DerSpec& der = grid.der(k);
        const double r = der.r_droop + program.droop_offsets[k];
        const auto row = static_cast<Eigen::Index>(k);
        a(row, row) = 1.0 - r / der.r_line - r / der.r_load;
        a(row, m - 1) = r / der.r_line;
        b(row) = effective_reference(grid, program, k);
    }
    double conductance_sum = 0.0;
    for (std::size_t k = 0; k <= n; ++k) {
        const double g = 1.0 / grid.der(k).r_line;
        a(m - 1, static_cast<Eigen::Index>(k)) = g;
        conductance_sum += g;
    }
    a(m - 1, m - 1) = -conductance_sum;

    const Eigen::PartialPivLU<Eigen::MatrixXd> lu(a);
    const Eigen::VectorXd u_diag = lu.matrixLU().diagonal();
    const double scale = a.cwiseAbs().maxCoeff();
    for (Eigen::Index i = 0; i < m; ++i) {
        if (std::abs(u_diag[i]) <= 1e-12 * scale) {
            std::ostringstream os;
            os << "singular steady-state system: near-zero pivot ("
               << u_diag[i] << ") at unknown " << unknown_name(i, n);
            throw SolveError(os.str());
        }
    }

    Eigen::VectorXd x = lu.solve(b);
    for (int pass = 0; pass < 3; ++pass) {
        const Eigen::VectorXd residual = b - a * x;
        if (residual.cwiseAbs().maxCoeff() <= 0.01 * settings.residual_tol) break;
        x += lu.solve(residual); // iterative refinement
    }

    OperatingPoint op = recover_currents(grid, std::move(x));
    const Residuals r = residuals(grid, program, op);
    const double kcl_bound =
        settings.residual_tol * std::max(1.0, std::abs(op.downstream_draw));
    if (r.droop_max > settings.residual_tol || r.ohm_max > settings.residual_tol ||
        r.bookkeeping_max > settings.residual_tol || r.kcl > kcl_bound) {
        std::ostringstream os;
        os << "solution failed the residual check (droop " << r.droop_max << ", kcl "
           << r.kcl << ", tol " << settings.residual_tol << ")";
        throw SolveError(os.str());
    }
    return op;
}

DownstreamSolution closed_form_downstream(const GridSpec& grid,
                                          const ControlProgram& program) {
    require_valid(grid, program);
    const std::size_t n = grid.size();
    const DerSpec& down = grid.downstream;

    double scaled_refs = 0.0; // sum of V'_ref,k / den_k
    double scaled_factors = 0.0; // sum of factor_k / den_k
    for (std::size_t k = 0; k < n; ++k) {
        const double den = weight_denominator(grid.upstream[k], program.droop_offsets[k]);
        scaled_refs += effective_reference(grid, program, k) / den;
        scaled_factors += droop_load_factor(grid.upstream[k], program.droop_offsets[k]) / den;
    }
    const double down_factor = droop_load_factor(down, program.droop_offsets[n]);
    const double down_den = weight_denominator(down, program.droop_offsets[n]);
    const double down_ref = effective_reference(grid, program, n);

    const double denominator = 1.0 + scaled_factors * down_den / down_factor;
    if (std::abs(denominator) <= 1e-12 * (1.0 + std::abs(scaled_factors * down_den / down_factor)))
        throw SolveError("singular steady-state system: downstream response denominator is zero");

    DownstreamSolution sol;
    sol.draw = (scaled_refs - scaled_factors * down_ref / down_factor) / denominator;
    sol.der_current = (-sol.draw + down_ref / down.r_load) / down_factor;
    return sol;
}

std::vector<double> delta_currents(const GridSpec& grid, const ControlProgram& program,
                                   const SolveSettings& settings) {
    const OperatingPoint stepped = solve_nodal(grid, program, settings);
    const OperatingPoint rated = solve_nodal(grid, program.without_inputs(), settings);
    std::vector<double> delta(stepped.der_currents.size());
    for (std::size_t k = 0; k < delta.size(); ++k)
        delta[k] = stepped.der_currents[k] - rated.der_currents[k];
    return delta;
}

} // namespace gridcomp
