#pragma once

#include "gridcomp/errors.hpp"

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

namespace gridcomp {

/// One droop-controlled DER: converter reference, droop gain, line to the
/// PCC, and the local load hanging off its bus. Units are SI (V, A, Ohm).
struct DerSpec {
    double v_ref = 0.0;   ///< nominal voltage reference [V], > 0
    double r_droop = 0.0; ///< default droop gain (virtual resistance) [Ohm], >= 0
    double r_line = 0.0;  ///< line resistance to the PCC [Ohm], > 0
    double r_load = 0.0;  ///< local load resistance [Ohm], > 0

    bool operator==(const DerSpec&) const = default;
};

/// Star-topology microgrid: N upstream DERs (inputs) whose lines meet at the
/// PCC, plus one downstream DER (output) behind the remaining line.
struct GridSpec {
    std::vector<DerSpec> upstream;
    DerSpec downstream;

    /// Number of upstream DERs.
    std::size_t size() const { return upstream.size(); }
    /// Total DER count including the downstream unit.
    std::size_t total() const { return upstream.size() + 1; }
    /// DER by flat index: 0..size()-1 upstream, size() downstream.
    const DerSpec& der(std::size_t k) const {
        return k < upstream.size() ? upstream[k] : downstream;
    }

    bool operator==(const GridSpec&) const = default;
};

/// The programmable control layer. Offset vectors cover every DER
/// (upstream first, downstream last); input steps cover upstream DERs only.
struct ControlProgram {
    std::vector<double> droop_offsets;     ///< per-DER droop-gain offsets [Ohm]
    std::vector<double> secondary_offsets; ///< per-DER reference corrections [V]
    std::vector<double> input_steps;       ///< per-upstream-DER reference steps [V]

    /// All-zero program for a grid with n upstream DERs.
    static ControlProgram zeros(std::size_t n_upstream) {
        return {std::vector<double>(n_upstream + 1, 0.0),
                std::vector<double>(n_upstream + 1, 0.0),
                std::vector<double>(n_upstream, 0.0)};
    }

    /// Copy with input steps cleared (the rated case).
    ControlProgram without_inputs() const {
        ControlProgram p = *this;
        std::fill(p.input_steps.begin(), p.input_steps.end(), 0.0);
        return p;
    }

    bool operator==(const ControlProgram&) const = default;
};

/// A solved steady state. Vectors are ordered upstream first, downstream
/// last, matching GridSpec.
struct OperatingPoint {
    std::vector<double> bus_voltages; ///< V at each DER bus [V]
    std::vector<double> der_currents; ///< converter output current per DER [A]
    std::vector<double> injections;   ///< net current each upstream DER feeds the network [A]
    double downstream_draw = 0.0;     ///< current drawn from the PCC toward the downstream bus [A]
    double pcc_voltage = 0.0;         ///< voltage at the point of common coupling [V]
};

enum class ViolationKind {
    dimension_mismatch,
    bad_parameter,           // DerSpec bound violated
    lambda_near_zero,        // droop/load interaction singular
    weight_denominator_zero, // effective input weight unbounded
};

struct Violation {
    ViolationKind kind;
    int der_number; ///< offending DER, 1-based (0 when not tied to one DER)
    std::string detail;
};

/// Outcome of validate(). Empty violation list means the pair is usable.
struct ValidationReport {
    std::vector<Violation> violations;

    bool ok() const { return violations.empty(); }
    std::string to_string() const;
};

/// Singularity guard applied to the droop/load factor and to weight
/// denominators.
inline constexpr double kSingularityTol = 1e-9;

/// The reference 5-bus grid: V_ref = 315 V, R_d = 0.1 Ohm and
/// R_load = 99 Ohm on every DER, line resistances
/// [0.67, 0.49, 0.83, 0.03, 0.81] Ohm (last entry downstream).
GridSpec canonical_grid();

/// Check every structural invariant of the pair. Total: never throws,
/// reports all violations it finds.
ValidationReport validate(const GridSpec& grid, const ControlProgram& program);

/// Shorthand: throw ValidationError when validate() reports violations.
void require_valid(const GridSpec& grid, const ControlProgram& program);

} // namespace gridcomp
