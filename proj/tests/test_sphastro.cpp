#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cmath>

#include "celmech/sphastro.hpp"
#include "support.hpp"

using namespace celmech;
using namespace celmech::sphastro;

namespace {

SphericalTriangle triangle(double ab, double ac, double a) {
    return {Angle::radians(ab), Angle::radians(ac), Angle::radians(a)};
}

// Unit-vector oracle: one leg in the xz plane, the other rotated about z by
// the vertex angle; the third side is the angle between them.
double third_side_dot_oracle(double ab, double ac, double a) {
    const std::array<double, 3> u{std::sin(ab), 0.0, std::cos(ab)};
    const std::array<double, 3> w{std::sin(ac) * std::cos(a), std::sin(ac) * std::sin(a),
                                  std::cos(ac)};
    return u[0] * w[0] + u[1] * w[1] + u[2] * w[2];
}

AltitudeObservation forward_observation(double lat, double dec, double h1,
                                        double tau1, double tau2) {
    auto altitude = [&](double hour) {
        return std::asin(std::sin(lat) * std::sin(dec) +
                         std::cos(lat) * std::cos(dec) * std::cos(hour));
    };
    return {{Angle::radians(altitude(h1)), Angle::radians(altitude(h1 + tau1)),
             Angle::radians(altitude(h1 + tau1 + tau2))},
            {Angle::radians(tau1), Angle::radians(tau2)}};
}

}  // namespace

TEST_CASE("third side: octant and degenerate-vertex limits") {
    CHECK(third_side_euler(triangle(kPi / 2, kPi / 2, kPi / 2)).rad() ==
          doctest::Approx(kPi / 2).epsilon(1e-14));
    CHECK(third_side_standard(triangle(kPi / 2, kPi / 2, kPi / 2)).rad() ==
          doctest::Approx(kPi / 2).epsilon(1e-14));

    // vertex angle shrinking to zero with equal sides collapses the third side
    CHECK(third_side_euler(triangle(1.0, 1.0, 1e-7)).rad() ==
          doctest::Approx(0.0).scale(1).epsilon(1e-6));

    // opening the vertex to pi adds the sides
    CHECK(third_side_standard(triangle(0.5, 0.5, kPi - 1e-14)).rad() ==
          doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("third side: half-sum form equals the law of cosines and the dot product") {
    const double euler = third_side_euler(triangle(1.1, 0.7, 2.0)).rad();
    const double standard = third_side_standard(triangle(1.1, 0.7, 2.0)).rad();
    CHECK(std::fabs(euler - standard) < 1e-14);
    CHECK(std::cos(euler) ==
          doctest::Approx(third_side_dot_oracle(1.1, 0.7, 2.0)).epsilon(1e-14));

    auto rng = testsupport::make_rng(41);
    for (int i = 0; i < 10000; ++i) {
        const double ab = testsupport::uniform(rng, 1e-3, kPi - 1e-3);
        const double ac = testsupport::uniform(rng, 1e-3, kPi - 1e-3);
        const double a = testsupport::uniform(rng, 1e-3, kPi - 1e-3);
        const double ce = std::cos(third_side_euler(triangle(ab, ac, a)).rad());
        const double cs = std::cos(third_side_standard(triangle(ab, ac, a)).rad());
        const double cd = third_side_dot_oracle(ab, ac, a);
        REQUIRE(std::fabs(ce - cs) < 1e-13);
        REQUIRE(std::fabs(ce - cd) < 1e-13);
    }
}

TEST_CASE("triangle inputs outside (0, pi) are rejected") {
    CHECK_THROWS_AS(triangle(0.0, 1.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(triangle(1.0, kPi, 1.0), std::domain_error);
    CHECK_THROWS_AS(triangle(1.0, 1.0, -0.5), std::domain_error);
    CHECK_THROWS_AS(triangle(3.5, 1.0, 1.0), std::domain_error);
}

TEST_CASE("altitude observation validation") {
    CHECK_THROWS_AS(AltitudeObservation({Angle::radians(1.6), Angle::radians(0.1),
                                         Angle::radians(0.2)},
                                        {Angle::radians(0.5), Angle::radians(0.5)}),
                    std::domain_error);
    CHECK_THROWS_AS(AltitudeObservation({Angle::radians(0.1), Angle::radians(0.2),
                                         Angle::radians(0.3)},
                                        {Angle::radians(0.0), Angle::radians(0.5)}),
                    std::domain_error);
    CHECK_THROWS_AS(AltitudeObservation({Angle::radians(0.1), Angle::radians(0.2),
                                         Angle::radians(0.3)},
                                        {Angle::radians(0.5), Angle::radians(kTwoPi)}),
                    std::domain_error);
}

TEST_CASE("star fix recovers the generating configuration") {
    const StarFix northern = star_fix(forward_observation(0.9, 0.3, 0.4, 0.5, 0.5));
    CHECK(northern.latitude.rad() == doctest::Approx(0.9).epsilon(1e-8));
    CHECK(northern.declination.rad() == doctest::Approx(0.3).epsilon(1e-8));
    CHECK(northern.first_hour_angle.rad() == doctest::Approx(0.4).epsilon(1e-8));

    const StarFix southern = star_fix(forward_observation(0.2, -0.1, 1.0, 0.7, 0.9));
    CHECK(southern.latitude.rad() == doctest::Approx(0.2).epsilon(1e-8));
    CHECK(southern.declination.rad() == doctest::Approx(-0.1).epsilon(1e-8));
    CHECK(southern.first_hour_angle.rad() == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("star fix inversion over random configurations") {
    auto rng = testsupport::make_rng(42);
    int checked = 0;
    while (checked < 200) {
        const double dec = testsupport::uniform(rng, -1.2, 1.2);
        const double lat = testsupport::uniform(rng, std::fabs(dec) + 0.02, 1.52);
        if (lat >= kPi / 2 - 0.01) continue;
        const double h1 = testsupport::uniform(rng, -3.0, 3.0);
        const double tau1 = testsupport::uniform(rng, 0.1, 2.5);
        const double tau2 = testsupport::uniform(rng, 0.1, 2.5);
        const StarFix fix = star_fix(forward_observation(lat, dec, h1, tau1, tau2));
        REQUIRE(fix.latitude.rad() == doctest::Approx(lat).epsilon(1e-8));
        REQUIRE(fix.declination.rad() == doctest::Approx(dec).scale(1).epsilon(1e-8));
        REQUIRE(normalize_angle_signed(fix.first_hour_angle.rad() - h1).rad() ==
                doctest::Approx(0.0).scale(1).epsilon(1e-8));
        ++checked;
    }
}

TEST_CASE("star fix degenerate and unsatisfiable inputs") {
    CHECK_THROWS_AS(star_fix(AltitudeObservation({Angle::radians(0.8), Angle::radians(0.8),
                                                  Angle::radians(0.8)},
                                                 {Angle::radians(0.5), Angle::radians(0.5)})),
                    DegenerateGeometryError);

    // forces |cos(lat) cos(dec)| > 1: no real configuration reproduces it
    CHECK_THROWS_AS(star_fix(AltitudeObservation({Angle::radians(1.55), Angle::radians(-1.55),
                                                  Angle::radians(1.55)},
                                                 {Angle::radians(0.8), Angle::radians(0.8)})),
                    NoFixError);
}

TEST_CASE("transit altitude: zenith, mid-latitude, and equator") {
    CHECK(transit_altitude(Angle::radians(0.7), Angle::radians(0.7)).rad() ==
          doctest::Approx(kPi / 2).epsilon(1e-15));
    CHECK(transit_altitude(Angle::radians(kPi / 4), Angle::radians(0.0)).rad() ==
          doctest::Approx(kPi / 4).epsilon(1e-15));
    CHECK(transit_altitude(Angle::radians(0.0), Angle::radians(0.3)).rad() ==
          doctest::Approx(kPi / 2 - 0.3).epsilon(1e-15));
    CHECK_THROWS_AS(transit_altitude(Angle::radians(2.0), Angle::radians(0.0)),
                    std::domain_error);
    CHECK_THROWS_AS(transit_altitude(Angle::radians(0.0), Angle::radians(-2.0)),
                    std::domain_error);
}

TEST_CASE("transit altitude is the maximum over the hour angle") {
    auto rng = testsupport::make_rng(43);
    for (int config = 0; config < 1000; ++config) {
        const double lat = testsupport::uniform(rng, -1.5, 1.5);
        const double dec = testsupport::uniform(rng, -1.5, 1.5);
        const double peak =
            transit_altitude(Angle::radians(lat), Angle::radians(dec)).rad();
        const double sin_peak = std::sin(peak);
        for (int i = 0; i < 100; ++i) {
            const double hour = i * kTwoPi / 100.0;
            const double sin_alt = std::sin(lat) * std::sin(dec) +
                                   std::cos(lat) * std::cos(dec) * std::cos(hour);
            REQUIRE(sin_alt <= sin_peak + 1e-12);
        }
    }
}

TEST_CASE("lunar declination extremes") {
    const auto band = lunar_declination_extremes(Angle::degrees(23.44), Angle::degrees(5.145));
    CHECK(band.max_abs.deg() == doctest::Approx(28.585).epsilon(1e-12));
    CHECK(band.min_max.deg() == doctest::Approx(18.295).epsilon(1e-12));
    // the historical band: +-28.5 and +-18 degrees, within 0.3 degrees
    CHECK(std::fabs(band.max_abs.deg() - 28.5) <= 0.3);
    CHECK(std::fabs(band.min_max.deg() - 18.0) <= 0.3);

    const auto coplanar = lunar_declination_extremes(Angle::degrees(23.44), Angle::radians(0.0));
    CHECK(coplanar.max_abs.deg() == doctest::Approx(23.44));
    CHECK(coplanar.min_max.deg() == doctest::Approx(23.44));

    const auto tilted_only = lunar_declination_extremes(Angle::radians(0.0), Angle::degrees(5.0));
    CHECK(tilted_only.max_abs.deg() == doctest::Approx(5.0));
    CHECK(tilted_only.min_max.deg() == doctest::Approx(5.0));

    CHECK_THROWS_AS(lunar_declination_extremes(Angle::radians(-0.1), Angle::radians(0.1)),
                    std::domain_error);
    CHECK_THROWS_AS(lunar_declination_extremes(Angle::radians(0.1), Angle::radians(1.6)),
                    std::domain_error);
}
