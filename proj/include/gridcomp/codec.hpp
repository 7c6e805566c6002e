#pragma once

#include "gridcomp/weight_compiler.hpp"

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace gridcomp {

/// 2x2 binary image, row-major: bits[0] top-left, bits[1] top-right,
/// bits[2] bottom-left, bits[3] bottom-right.
struct Image2x2 {
    std::array<uint8_t, 4> bits{};

    /// Parse a 4-character row-major bit string such as "0101".
    static Image2x2 from_string(const std::string& s);
    /// Image for an index in [0, 15]; bit pattern is the index in binary,
    /// most significant bit first ("0101" == 5).
    static Image2x2 from_index(int index);

    std::string to_string() const;
    int index() const;

    bool operator==(const Image2x2&) const = default;
};

enum class Direction { clockwise, counterclockwise };

std::string to_string(Direction d);
Direction direction_from_string(const std::string& s); // "cw" | "ccw"

/// Quarter-turn rotation task with the matching computational weights.
/// The anchor is the upstream DER whose weight is 1.
struct RotationTask {
    Direction direction = Direction::clockwise;
    WeightTask task;

    static RotationTask for_direction(Direction d);
};

/// Image bits scaled to reference steps: one amplitude-volt step per lit
/// pixel, pixel k feeding upstream DER k.
std::vector<double> encode(const Image2x2& image, double amplitude = 1.0);

/// Quarter-turn of the image in the given direction.
Image2x2 rotate(const Image2x2& image, Direction d);

/// Binary-to-decimal value of the image under position weights 8, 4, 2, 1.
int decimal_value(const Image2x2& image);

/// Pure-digital reference result: rotate, then take the decimal value.
int digital_oracle(const Image2x2& image, Direction d);

/// The same result as a weighted sum of the unrotated bits; exposed so the
/// two formulations can be checked against each other.
double weighted_bit_sum(const Image2x2& image, const std::vector<double>& weights);

struct Decoded {
    int value = 0;         ///< nearest integer of delta_i / kappa
    double residual = 0.0; ///< pre-rounding distance from that integer
};

/// Map a downstream current deviation back to an integer. A residual above
/// 0.25 signals a mis-programmed grid or a stale calibration and throws
/// DecodeError.
Decoded decode(double delta_i_down, const Calibration& calibration);

} // namespace gridcomp
