#include "celmech/core.hpp"

#include <cmath>

namespace celmech {

Angle Angle::radians(double value) {
    if (!std::isfinite(value)) {
        throw std::domain_error("angle value must be finite");
    }
    return Angle(value);
}

Angle Angle::degrees(double value) {
    return radians(value * kPi / 180.0);
}

double Angle::deg() const noexcept {
    return rad_ * 180.0 / kPi;
}

Tolerance::Tolerance(double absolute, double relative, int iteration_cap)
    : abs_eps(absolute), rel_eps(relative), max_iter(iteration_cap) {
    if (!(abs_eps > 0.0) || !std::isfinite(abs_eps)) {
        throw std::domain_error("tolerance abs_eps must be positive");
    }
    if (!(rel_eps > 0.0) || !std::isfinite(rel_eps)) {
        throw std::domain_error("tolerance rel_eps must be positive");
    }
    if (max_iter < 1) {
        throw std::domain_error("tolerance max_iter must be >= 1");
    }
}

Angle normalize_angle(double radians) {
    if (!std::isfinite(radians)) {
        throw std::domain_error("normalize_angle: value must be finite");
    }
    double r = std::fmod(radians, kTwoPi);
    if (r < 0.0) {
        r += kTwoPi;
    }
    if (r >= kTwoPi) {
        // fmod result plus 2*pi can round back up to exactly 2*pi
        r = 0.0;
    }
    return Angle::radians(r);
}

Angle normalize_angle_signed(double radians) {
    double r = normalize_angle(radians).rad();
    if (r > kPi) {
        r -= kTwoPi;
    }
    return Angle::radians(r);
}

}  // namespace celmech
