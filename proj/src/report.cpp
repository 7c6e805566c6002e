#include "gridcomp/report.hpp"

#include "gridcomp/errors.hpp"

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <ostream>
#include <sstream>

namespace gridcomp {

using nlohmann::ordered_json;

std::string format_sig9(double x) {
    if (x == 0.0) x = 0.0; // normalize signed zero
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", x);
    return buf;
}

double round_sig9(double x) {
    return std::strtod(format_sig9(x).c_str(), nullptr);
}

std::string grid_fingerprint(const GridSpec& grid) {
    // FNV-1a over the full-precision parameter rendering.
    std::uint64_t h = 1469598103934665603ull;
    auto mix = [&](const std::string& s) {
        for (unsigned char c : s) {
            h ^= c;
            h *= 1099511628211ull;
        }
    };
    char buf[40];
    for (std::size_t k = 0; k < grid.total(); ++k) {
        const DerSpec& d = grid.der(k);
        for (double v : {d.v_ref, d.r_droop, d.r_line, d.r_load}) {
            std::snprintf(buf, sizeof(buf), "%.17g,", v);
            mix(buf);
        }
    }
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

void emit_csv(std::span<const SweepReport> reports, std::ostream& out) {
    out << "direction,bits,delta_i_1,delta_i_2,delta_i_3,delta_i_4,delta_i_5,"
           "decoded,expected,residual\n";
    for (const auto& report : reports) {
        for (const auto& c : report.cases) {
            out << to_string(c.direction) << ',' << c.image.to_string();
            for (double di : c.delta_i) out << ',' << format_sig9(di);
            out << ',' << c.decoded << ',' << c.expected << ','
                << format_sig9(c.residual) << '\n';
        }
    }
}

namespace {

std::vector<double> rounded(const std::vector<double>& xs) {
    std::vector<double> out(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) out[i] = round_sig9(xs[i]);
    return out;
}

} // namespace

ordered_json report_to_json(const SweepReport& report) {
    ordered_json j;
    j["grid_fingerprint"] = report.grid_fingerprint;
    j["direction"] = to_string(report.direction);
    j["delta_r"] = rounded(report.droop_offsets);
    j["v_sec"] = rounded(report.secondary_offsets);
    j["kappa"] = round_sig9(report.kappa);
    j["cases"] = ordered_json::array();
    ordered_json heatmap = ordered_json::array();
    for (const auto& c : report.cases) {
        ordered_json jc;
        jc["bits"] = c.image.to_string();
        jc["delta_i"] = rounded(c.delta_i);
        jc["decoded"] = c.decoded;
        jc["expected"] = c.expected;
        jc["residual"] = round_sig9(c.residual);
        j["cases"].push_back(std::move(jc));
        heatmap.push_back(rounded(c.delta_i));
    }
    j["heatmap"] = std::move(heatmap); // cases x DERs, for external plotting
    return j;
}

ordered_json reports_to_json(std::span<const SweepReport> reports) {
    ordered_json j;
    j["sweeps"] = ordered_json::array();
    for (const auto& report : reports) j["sweeps"].push_back(report_to_json(report));
    return j;
}

SweepReport report_from_json(const ordered_json& j) {
    try {
        SweepReport report;
        report.grid_fingerprint = j.at("grid_fingerprint").get<std::string>();
        report.direction = direction_from_string(j.at("direction").get<std::string>());
        report.droop_offsets = j.at("delta_r").get<std::vector<double>>();
        report.secondary_offsets = j.at("v_sec").get<std::vector<double>>();
        report.kappa = j.at("kappa").get<double>();
        for (const auto& jc : j.at("cases")) {
            CaseResult c;
            c.image = Image2x2::from_string(jc.at("bits").get<std::string>());
            c.direction = report.direction;
            c.delta_i = jc.at("delta_i").get<std::vector<double>>();
            c.decoded = jc.at("decoded").get<int>();
            c.expected = jc.at("expected").get<int>();
            c.residual = jc.at("residual").get<double>();
            report.cases.push_back(std::move(c));
        }
        return report;
    } catch (const ordered_json::exception& e) {
        throw ConfigError(std::string("malformed report document: ") + e.what());
    }
}

std::vector<SweepReport> reports_from_json(const ordered_json& j) {
    try {
        std::vector<SweepReport> reports;
        for (const auto& jr : j.at("sweeps")) reports.push_back(report_from_json(jr));
        return reports;
    } catch (const ordered_json::exception& e) {
        throw ConfigError(std::string("malformed report document: ") + e.what());
    }
}

bool VerificationReport::all_passed() const {
    for (const auto& c : checks)
        if (!c.passed) return false;
    return true;
}

std::string VerificationReport::to_text() const {
    std::ostringstream os;
    for (const auto& c : checks) {
        os << (c.passed ? "PASS" : "FAIL") << "  " << c.id << "  " << c.name
           << "  (worst " << format_sig9(c.measured) << ", bound "
           << format_sig9(c.bound) << ")";
        if (!c.detail.empty()) os << "  " << c.detail;
        os << '\n';
    }
    os << (all_passed() ? "all checks passed" : "CHECKS FAILED") << '\n';
    return os.str();
}

} // namespace gridcomp
