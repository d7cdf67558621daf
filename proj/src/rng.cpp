#include "qpke/rng.hpp"

#include <cmath>
#include <numbers>

namespace qpke {

std::uint64_t RngStream::below(std::uint64_t bound) {
    // Rejection sampling on the top of the range keeps the draw exactly uniform.
    const std::uint64_t limit = max() - (max() % bound + 1) % bound;
    std::uint64_t x = engine_();
    while (x > limit) {
        x = engine_();
    }
    return x % bound;
}

double RngStream::normal() {
    if (has_spare_normal_) {
        has_spare_normal_ = false;
        return spare_normal_;
    }
    double u1 = uniform();
    while (u1 <= 0.0) {
        u1 = uniform();
    }
    const double u2 = uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    spare_normal_ = radius * std::sin(angle);
    has_spare_normal_ = true;
    return radius * std::cos(angle);
}

}  // namespace qpke
