#include "gridcomp/grid_model.hpp"

#include "gridcomp/errors.hpp"
#include "gridcomp/steady_state.hpp"

#include <cmath>
#include <sstream>

namespace gridcomp {

GridSpec canonical_grid() {
    constexpr double kLines[5] = {0.67, 0.49, 0.83, 0.03, 0.81};
    GridSpec g;
    g.upstream.reserve(4);
    for (int k = 0; k < 5; ++k) {
        const DerSpec der{315.0, 0.1, kLines[k], 99.0};
        if (k < 4)
            g.upstream.push_back(der);
        else
            g.downstream = der;
    }
    return g;
}

namespace {

std::string describe(const Violation& v) {
    std::ostringstream os;
    switch (v.kind) {
        case ViolationKind::dimension_mismatch: os << "dimension mismatch"; break;
        case ViolationKind::bad_parameter: os << "bad parameter"; break;
        case ViolationKind::lambda_near_zero: os << "droop/load factor near zero"; break;
        case ViolationKind::weight_denominator_zero: os << "weight denominator near zero"; break;
    }
    if (v.der_number > 0) os << " at DER " << v.der_number;
    if (!v.detail.empty()) os << ": " << v.detail;
    return os.str();
}

void check_der(const DerSpec& d, int der_number, std::vector<Violation>& out) {
    auto bad = [&](const char* what, double value) {
        std::ostringstream os;
        os << what << " = " << value;
        out.push_back({ViolationKind::bad_parameter, der_number, os.str()});
    };
    if (!(d.r_line > 0.0)) bad("r_line must be > 0", d.r_line);
    if (!(d.r_load > 0.0)) bad("r_load must be > 0", d.r_load);
    if (!(d.r_droop >= 0.0)) bad("r_droop must be >= 0", d.r_droop);
    if (!(d.v_ref > 0.0)) bad("v_ref must be > 0", d.v_ref);
}

} // namespace

std::string ValidationReport::to_string() const {
    if (ok()) return "ok";
    std::ostringstream os;
    for (std::size_t i = 0; i < violations.size(); ++i) {
        if (i) os << "; ";
        os << describe(violations[i]);
    }
    return os.str();
}

ValidationReport validate(const GridSpec& grid, const ControlProgram& program) {
    ValidationReport report;
    const std::size_t n = grid.size();

    if (grid.upstream.empty())
        report.violations.push_back(
            {ViolationKind::dimension_mismatch, 0, "grid needs at least one upstream DER"});

    auto check_len = [&](const char* name, std::size_t got, std::size_t want) {
        if (got != want) {
            std::ostringstream os;
            os << name << " has " << got << " entries, expected " << want;
            report.violations.push_back({ViolationKind::dimension_mismatch, 0, os.str()});
        }
    };
    check_len("droop_offsets", program.droop_offsets.size(), n + 1);
    check_len("secondary_offsets", program.secondary_offsets.size(), n + 1);
    check_len("input_steps", program.input_steps.size(), n);
    if (!report.ok()) return report; // per-DER checks need matching dimensions

    for (std::size_t k = 0; k < grid.total(); ++k)
        check_der(grid.der(k), static_cast<int>(k) + 1, report.violations);

    for (std::size_t k = 0; k < grid.total(); ++k) {
        const DerSpec& der = grid.der(k);
        const double offset = program.droop_offsets[k];
        const double factor = droop_load_factor(der, offset);
        if (!(std::abs(factor) > kSingularityTol)) {
            std::ostringstream os;
            os << "|1 - (r_droop + offset)/r_load| = " << std::abs(factor);
            report.violations.push_back(
                {ViolationKind::lambda_near_zero, static_cast<int>(k) + 1, os.str()});
            continue;
        }
        if (k < n) {
            const double den = weight_denominator(der, offset);
            if (!(std::abs(den) > kSingularityTol)) {
                std::ostringstream os;
                os << "|r_line * factor - effective droop| = " << std::abs(den);
                report.violations.push_back({ViolationKind::weight_denominator_zero,
                                             static_cast<int>(k) + 1, os.str()});
            }
        }
    }
    return report;
}

void require_valid(const GridSpec& grid, const ControlProgram& program) {
    const auto report = validate(grid, program);
    if (!report.ok())
        throw ValidationError("invalid grid/program: " + report.to_string());
}

} // namespace gridcomp
