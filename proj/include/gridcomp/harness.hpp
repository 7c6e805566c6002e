#pragma once

#include "gridcomp/batch.hpp"
#include "gridcomp/config.hpp"
#include "gridcomp/report.hpp"

namespace gridcomp {

/// Program and calibration for one rotation direction under a config:
/// compiled from the standard weights, or taken from the config's explicit
/// override vectors when present.
struct PreparedProgram {
    RotationTask rotation;
    ControlProgram program; ///< offsets only, inputs zero
    Calibration calibration;
};

PreparedProgram prepare(const Config& config, Direction direction,
                        const SolveSettings& settings = {});

/// Solve the rated and stepped states for one image, decode, and compare
/// with the digital reference.
CaseResult run_case(const Config& config, const Image2x2& image, Direction direction,
                    const SolveSettings& settings = {});

/// All 16 images of a direction. Verifies on the way that every multi-pixel
/// response equals the sum of its one-hot constituents (within tol) and that
/// each case decodes to the reference value; the first offending case aborts
/// the sweep with its identity.
SweepReport sweep(const Config& config, Direction direction,
                  const SolveSettings& settings = {}, bool parallel = true);

/// Run the full verification battery for a configuration: reference-vector
/// reproduction, baseline preservation, proportionality, superposition,
/// exhaustive decode, randomized dual-solver / admittance / compile
/// round-trip properties.
VerificationReport verify(const Config& config, const SolveSettings& settings = {});

} // namespace gridcomp
