#pragma once

#include <array>

#include "celmech/core.hpp"

namespace celmech::sphastro {

/// Thrown when observations admit no determinate fix (all altitudes equal:
/// the hour angle is indeterminate).
class DegenerateGeometryError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Thrown when no (latitude, declination, hour angle) triple reproduces the
/// observations within tolerance.
class NoFixError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Two great-circle arcs from a common vertex plus the angle between them.
/// Arcs and vertex angle must lie in (0, pi).
struct SphericalTriangle {
    Angle side_ab;
    Angle side_ac;
    Angle angle_a;

    SphericalTriangle(Angle ab, Angle ac, Angle a);
};

/// Third side from the half-sum form
///   cos BC = [cos(AB+AC) + cos(AB-AC)]/2
///          + [cos A cos(AB-AC) - cos A cos(AB+AC)]/2,
/// evaluated term by term exactly in that shape.
Angle third_side_euler(const SphericalTriangle& triangle);

/// Third side from the standard law of cosines,
/// cos BC = cos AB cos AC + cos A sin AB sin AC.
Angle third_side_standard(const SphericalTriangle& triangle);

/// Three altitudes of one star plus the two hour-angle gaps between the
/// sightings. Altitudes in (-pi/2, pi/2), gaps in (0, 2*pi).
struct AltitudeObservation {
    std::array<Angle, 3> altitudes;
    std::array<Angle, 2> hour_angle_gaps;

    AltitudeObservation(std::array<Angle, 3> alts, std::array<Angle, 2> gaps);
};

/// Pole elevation, star declination, and the hour angle of the first
/// sighting, satisfying sin h_i = sin(lat) sin(dec) + cos(lat) cos(dec) cos H_i
/// with H_2 = H_1 + gap_1, H_3 = H_2 + gap_2.
struct StarFix {
    Angle latitude;
    Angle declination;
    Angle first_hour_angle;
};

/// Invert the three-altitude model for (latitude, declination, H_1).
///
/// Newton iteration on the three sine-space residuals with analytic
/// Jacobian, seeded at (0.5, 0.5, 0.5); falls back to a 36^3 grid over the
/// canonical box when that seed fails. The model is symmetric under
/// latitude/declination exchange and joint sign flips, so the returned fix
/// is canonicalized to latitude in [0, pi/2], latitude >= |declination|,
/// and H_1 in (-pi, pi].
StarFix star_fix(const AltitudeObservation& obs, const Tolerance& tol = {});

/// Altitude at upper transit (hour angle zero): pi/2 - |lat - dec|.
Angle transit_altitude(Angle latitude, Angle declination);

struct DeclinationExtremes {
    Angle max_abs;  // inclinations adding:    obliquity + inclination
    Angle min_max;  // inclinations opposing: |obliquity - inclination|
};

/// Extreme declination band reached by a satellite whose orbit is inclined
/// by `inclination` to an equator itself tilted by `obliquity`.
DeclinationExtremes lunar_declination_extremes(Angle obliquity, Angle inclination);

}  // namespace celmech::sphastro
