#pragma once

#include "gridcomp/codec.hpp"

#include <json.hpp>

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace gridcomp {

/// One image pushed through the programmed grid.
struct CaseResult {
    Image2x2 image;
    Direction direction = Direction::clockwise;
    std::vector<double> delta_i; ///< per-DER current deviation, downstream last [A]
    int decoded = 0;
    int expected = 0;   ///< digital reference result
    double residual = 0.0;
};

/// All 16 images of one direction plus the program that produced them.
struct SweepReport {
    std::string grid_fingerprint;
    Direction direction = Direction::clockwise;
    std::vector<double> droop_offsets;
    std::vector<double> secondary_offsets;
    double kappa = 0.0;
    std::vector<CaseResult> cases;
};

/// Short stable hex digest of the grid parameters.
std::string grid_fingerprint(const GridSpec& grid);

/// Fixed 9-significant-digit decimal rendering (round-half-even ties).
std::string format_sig9(double x);
/// The double nearest to format_sig9(x); applied to every number that goes
/// into a report so emitted documents re-emit byte-identically after a
/// parse round trip.
double round_sig9(double x);

/// CSV: header then one row per case and report
/// (direction,bits,delta_i_1..delta_i_5,decoded,expected,residual).
void emit_csv(std::span<const SweepReport> reports, std::ostream& out);

nlohmann::ordered_json report_to_json(const SweepReport& report);
/// Document holding several sweeps: {"sweeps": [...]}.
nlohmann::ordered_json reports_to_json(std::span<const SweepReport> reports);
SweepReport report_from_json(const nlohmann::ordered_json& j);
std::vector<SweepReport> reports_from_json(const nlohmann::ordered_json& j);

/// One verification check: measured worst deviation against its bound.
struct CheckResult {
    std::string id;
    std::string name;
    bool passed = false;
    double measured = 0.0; ///< worst observed deviation
    double bound = 0.0;    ///< acceptance bound it is held to
    std::string detail;
};

struct VerificationReport {
    std::vector<CheckResult> checks;

    bool all_passed() const;
    /// One PASS/FAIL line per check.
    std::string to_text() const;
};

} // namespace gridcomp
