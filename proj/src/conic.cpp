#include "celmech/conic.hpp"

#include <cmath>

namespace celmech::conic {

namespace {
constexpr double kClassTol = 1e-12;
}

ConicClass classify(double eccentricity) {
    if (!std::isfinite(eccentricity) || eccentricity < 0.0) {
        throw std::domain_error("eccentricity must be finite and non-negative");
    }
    if (eccentricity < kClassTol) {
        return ConicClass::Circle;
    }
    if (std::fabs(eccentricity - 1.0) < kClassTol) {
        return ConicClass::Parabola;
    }
    return eccentricity < 1.0 ? ConicClass::Ellipse : ConicClass::Hyperbola;
}

OrbitElements OrbitElements::from_semi_latus_rectum(double eccentricity, double semi_latus_rectum) {
    conic::classify(eccentricity);  // validates e
    if (!std::isfinite(semi_latus_rectum) || !(semi_latus_rectum > 0.0)) {
        throw std::domain_error("semi-latus rectum must be positive");
    }
    return {eccentricity, semi_latus_rectum};
}

OrbitElements OrbitElements::from_semimajor_axis(double eccentricity, double semimajor_axis) {
    const ConicClass kind = conic::classify(eccentricity);
    if (!std::isfinite(semimajor_axis) || !(semimajor_axis > 0.0)) {
        throw std::domain_error("semimajor axis must be positive");
    }
    if (kind == ConicClass::Parabola) {
        throw std::domain_error("parabola has no finite semimajor axis; construct from the semi-latus rectum");
    }
    const double p = kind == ConicClass::Hyperbola
                         ? semimajor_axis * (eccentricity * eccentricity - 1.0)
                         : semimajor_axis * (1.0 - eccentricity * eccentricity);
    return {eccentricity, p};
}

double OrbitElements::semimajor_axis() const {
    const ConicClass kind = classify();
    if (kind == ConicClass::Parabola) {
        throw std::domain_error("semimajor axis is undefined at e = 1");
    }
    return kind == ConicClass::Hyperbola ? p_ / (e_ * e_ - 1.0) : p_ / (1.0 - e_ * e_);
}

double OrbitElements::apoapsis_distance() const {
    const ConicClass kind = classify();
    if (kind != ConicClass::Circle && kind != ConicClass::Ellipse) {
        throw std::domain_error("apoapsis distance is defined for closed orbits only");
    }
    return p_ / (1.0 - e_);
}

double radius_at(const OrbitElements& elements, Angle true_anom) {
    const double denom = 1.0 + elements.eccentricity() * std::cos(true_anom.rad());
    if (denom <= 0.0) {
        throw AsymptoteError("true anomaly beyond the asymptote: 1 + e cos v <= 0");
    }
    return elements.semi_latus_rectum() / denom;
}

double radius_euler_form(double periapsis_distance, double semi_latus_rectum, Angle true_anom) {
    if (!std::isfinite(periapsis_distance) || !(periapsis_distance > 0.0)) {
        throw std::domain_error("periapsis distance must be positive");
    }
    if (!std::isfinite(semi_latus_rectum) || !(semi_latus_rectum > 0.0)) {
        throw std::domain_error("semi-latus rectum must be positive");
    }
    const double denom = periapsis_distance +
                         (semi_latus_rectum - periapsis_distance) * std::cos(true_anom.rad());
    if (denom <= 0.0) {
        throw AsymptoteError("true anomaly beyond the asymptote: a + (b - a) cos v <= 0");
    }
    return periapsis_distance * semi_latus_rectum / denom;
}

PlanarState state_at(const OrbitElements& elements, Angle true_anom, double gm) {
    if (!std::isfinite(gm) || !(gm > 0.0)) {
        throw std::domain_error("gravitational parameter must be positive");
    }
    const double r = radius_at(elements, true_anom);
    const double v = true_anom.rad();

    PlanarState state;
    state.radius = r;
    state.true_anom = true_anom;
    state.x = r * std::cos(v);
    state.y = r * std::sin(v);

    const ConicClass kind = elements.classify();
    if (kind == ConicClass::Circle || kind == ConicClass::Ellipse) {
        const double vc = std::sqrt(gm / elements.semi_latus_rectum());
        state.dx_dt = -vc * std::sin(v);
        state.dy_dt = vc * (elements.eccentricity() + std::cos(v));
    }
    return state;
}

}  // namespace celmech::conic
