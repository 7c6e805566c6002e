#pragma once

#include <stdexcept>
#include <string>

namespace gridcomp {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A precondition on grid/program validity was not met.
struct ValidationError : Error {
    using Error::Error;
};

/// Steady-state solve failed (singular system or residual check).
struct SolveError : Error {
    using Error::Error;
};

/// Weight-to-parameter compilation failed.
struct CompileError : Error {
    using Error::Error;
};

/// Anchor probe produced no usable response.
struct CalibrationError : Error {
    using Error::Error;
};

/// Decoded value fell outside the confidence band.
struct DecodeError : Error {
    using Error::Error;
};

/// Malformed configuration document or CLI usage.
struct ConfigError : Error {
    using Error::Error;
};

} // namespace gridcomp
