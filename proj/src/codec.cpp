#include "gridcomp/codec.hpp"

#include "gridcomp/errors.hpp"

#include <cmath>

namespace gridcomp {

Image2x2 Image2x2::from_string(const std::string& s) {
    if (s.size() != 4)
        throw ConfigError("image must be a 4-character bit string, got \"" + s + "\"");
    Image2x2 img;
    for (std::size_t k = 0; k < 4; ++k) {
        if (s[k] != '0' && s[k] != '1')
            throw ConfigError("image bits must be 0 or 1, got \"" + s + "\"");
        img.bits[k] = static_cast<uint8_t>(s[k] - '0');
    }
    return img;
}

Image2x2 Image2x2::from_index(int index) {
    if (index < 0 || index > 15)
        throw ConfigError("image index must be in [0, 15], got " + std::to_string(index));
    Image2x2 img;
    for (std::size_t k = 0; k < 4; ++k)
        img.bits[k] = static_cast<uint8_t>((index >> (3 - k)) & 1);
    return img;
}

std::string Image2x2::to_string() const {
    std::string s(4, '0');
    for (std::size_t k = 0; k < 4; ++k) s[k] = static_cast<char>('0' + bits[k]);
    return s;
}

int Image2x2::index() const {
    int value = 0;
    for (std::size_t k = 0; k < 4; ++k) value = (value << 1) | bits[k];
    return value;
}

std::string to_string(Direction d) {
    return d == Direction::clockwise ? "cw" : "ccw";
}

Direction direction_from_string(const std::string& s) {
    if (s == "cw" || s == "clockwise") return Direction::clockwise;
    if (s == "ccw" || s == "counterclockwise") return Direction::counterclockwise;
    throw ConfigError("unknown direction \"" + s + "\" (use cw or ccw)");
}

RotationTask RotationTask::for_direction(Direction d) {
    if (d == Direction::clockwise) return {d, WeightTask{{4.0, 1.0, 8.0, 2.0}, 1}};
    return {d, WeightTask{{2.0, 8.0, 1.0, 4.0}, 2}};
}

std::vector<double> encode(const Image2x2& image, double amplitude) {
    if (!(amplitude > 0.0)) throw ConfigError("encoding amplitude must be > 0");
    std::vector<double> steps(4);
    for (std::size_t k = 0; k < 4; ++k) steps[k] = amplitude * image.bits[k];
    return steps;
}

Image2x2 rotate(const Image2x2& image, Direction d) {
    // Row-major corners: 0 top-left, 1 top-right, 2 bottom-left, 3 bottom-right.
    Image2x2 out;
    if (d == Direction::clockwise) {
        out.bits = {image.bits[2], image.bits[0], image.bits[3], image.bits[1]};
    } else {
        out.bits = {image.bits[1], image.bits[3], image.bits[0], image.bits[2]};
    }
    return out;
}

int decimal_value(const Image2x2& image) {
    return 8 * image.bits[0] + 4 * image.bits[1] + 2 * image.bits[2] + image.bits[3];
}

int digital_oracle(const Image2x2& image, Direction d) {
    return decimal_value(rotate(image, d));
}

double weighted_bit_sum(const Image2x2& image, const std::vector<double>& weights) {
    double sum = 0.0;
    for (std::size_t k = 0; k < 4 && k < weights.size(); ++k)
        sum += weights[k] * image.bits[k];
    return sum;
}

Decoded decode(double delta_i_down, const Calibration& calibration) {
    if (calibration.kappa == 0.0 || !std::isfinite(calibration.kappa))
        throw DecodeError("calibration constant is unusable");
    const double raw = delta_i_down / calibration.kappa;
    Decoded d;
    d.value = static_cast<int>(std::llround(raw));
    d.residual = std::abs(raw - d.value);
    if (d.residual > 0.25) {
        throw DecodeError("decode residual " + std::to_string(d.residual) +
                          " exceeds the 0.25 confidence band");
    }
    return d;
}

} // namespace gridcomp
