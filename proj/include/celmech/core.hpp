#pragma once

#include <numbers>
#include <stdexcept>

namespace celmech {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Plane angle stored in radians. Construction rejects NaN and infinities;
/// degrees appear only at I/O boundaries.
class Angle {
public:
    constexpr Angle() = default;

    static Angle radians(double value);
    static Angle degrees(double value);

    [[nodiscard]] constexpr double rad() const noexcept { return rad_; }
    [[nodiscard]] double deg() const noexcept;

private:
    constexpr explicit Angle(double rad) noexcept : rad_(rad) {}
    double rad_ = 0.0;
};

/// Convergence control shared by the iterative solvers.
struct Tolerance {
    double abs_eps = 1e-12;
    double rel_eps = 1e-12;
    int max_iter = 200;

    Tolerance() = default;
    Tolerance(double absolute, double relative, int iteration_cap);
};

/// Maps any finite angle into [0, 2*pi).
Angle normalize_angle(double radians);

/// Maps any finite angle into (-pi, pi].
Angle normalize_angle_signed(double radians);

}  // namespace celmech
