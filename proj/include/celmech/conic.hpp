#pragma once

#include <optional>

#include "celmech/core.hpp"

namespace celmech::conic {

enum class ConicClass { Circle, Ellipse, Parabola, Hyperbola };

/// Thrown when a true anomaly falls beyond the asymptote of an open conic,
/// i.e. where 1 + e cos v <= 0.
class AsymptoteError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Classify by eccentricity with a 1e-12 tolerance around the circle and
/// parabola boundaries.
ConicClass classify(double eccentricity);

/// Shape of a conic orbit: eccentricity plus semi-latus rectum. Semimajor
/// axis and apse distances are derived; the hyperbolic convention is
/// a = p / (e^2 - 1) > 0.
class OrbitElements {
public:
    static OrbitElements from_semi_latus_rectum(double eccentricity, double semi_latus_rectum);
    static OrbitElements from_semimajor_axis(double eccentricity, double semimajor_axis);

    [[nodiscard]] double eccentricity() const noexcept { return e_; }
    [[nodiscard]] double semi_latus_rectum() const noexcept { return p_; }
    [[nodiscard]] double semimajor_axis() const;  // undefined for a parabola
    [[nodiscard]] double periapsis_distance() const noexcept { return p_ / (1.0 + e_); }
    [[nodiscard]] double apoapsis_distance() const;  // closed orbits only
    [[nodiscard]] ConicClass classify() const { return conic::classify(e_); }

private:
    OrbitElements(double e, double p) : e_(e), p_(p) {}
    double e_;
    double p_;
};

/// Polar orbit equation r = p / (1 + e cos v).
double radius_at(const OrbitElements& elements, Angle true_anom);

/// Perihelion form of the polar equation, r = a*b / (a + (b - a) cos v),
/// with a the periapsis distance and b the semi-latus rectum. Algebraically
/// identical to radius_at under p = b, e = b/a - 1.
double radius_euler_form(double periapsis_distance, double semi_latus_rectum, Angle true_anom);

/// Planar position (and, for closed orbits, velocity) in the orbital plane
/// with the x axis toward periapse.
struct PlanarState {
    double radius = 0.0;
    Angle true_anom;
    double x = 0.0;
    double y = 0.0;
    std::optional<double> dx_dt;
    std::optional<double> dy_dt;
};

/// Position (r cos v, r sin v); perifocal velocity filled for e < 1 so that
/// v^2 = gm (2/r - 1/a) and x*dy/dt - y*dx/dt = sqrt(gm*p).
PlanarState state_at(const OrbitElements& elements, Angle true_anom, double gm = 1.0);

}  // namespace celmech::conic
