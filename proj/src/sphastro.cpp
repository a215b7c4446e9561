#include "celmech/sphastro.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

namespace celmech::sphastro {

namespace {

void check_arc(Angle a, const char* what) {
    if (!(a.rad() > 0.0) || !(a.rad() < kPi)) {
        throw std::domain_error(std::string(what) + " must lie in (0, pi)");
    }
}

double clamped_acos(double c) {
    return std::acos(std::clamp(c, -1.0, 1.0));
}

struct FixGuess {
    double lat;
    double dec;
    double h1;
};

struct FixProblem {
    std::array<double, 3> sin_alt;
    double gap1;
    double gap2;

    std::array<double, 3> residuals(const FixGuess& g) const {
        const double sp = std::sin(g.lat), cp = std::cos(g.lat);
        const double sd = std::sin(g.dec), cd = std::cos(g.dec);
        std::array<double, 3> f{};
        const std::array<double, 3> hour{g.h1, g.h1 + gap1, g.h1 + gap1 + gap2};
        for (int i = 0; i < 3; ++i) {
            f[i] = sp * sd + cp * cd * std::cos(hour[i]) - sin_alt[i];
        }
        return f;
    }

    // rows: d f_i / d(lat, dec, h1)
    std::array<std::array<double, 3>, 3> jacobian(const FixGuess& g) const {
        const double sp = std::sin(g.lat), cp = std::cos(g.lat);
        const double sd = std::sin(g.dec), cd = std::cos(g.dec);
        std::array<std::array<double, 3>, 3> jac{};
        const std::array<double, 3> hour{g.h1, g.h1 + gap1, g.h1 + gap1 + gap2};
        for (int i = 0; i < 3; ++i) {
            const double ch = std::cos(hour[i]), sh = std::sin(hour[i]);
            jac[i][0] = cp * sd - sp * cd * ch;
            jac[i][1] = sp * cd - cp * sd * ch;
            jac[i][2] = -cp * cd * sh;
        }
        return jac;
    }
};

// 3x3 linear solve with partial pivoting; false on a (near-)singular matrix
bool solve3(std::array<std::array<double, 3>, 3> m, std::array<double, 3> rhs,
            std::array<double, 3>& out) {
    for (int col = 0; col < 3; ++col) {
        int pivot = col;
        for (int row = col + 1; row < 3; ++row) {
            if (std::fabs(m[row][col]) > std::fabs(m[pivot][col])) pivot = row;
        }
        if (std::fabs(m[pivot][col]) < 1e-14) return false;
        std::swap(m[col], m[pivot]);
        std::swap(rhs[col], rhs[pivot]);
        for (int row = col + 1; row < 3; ++row) {
            const double factor = m[row][col] / m[col][col];
            for (int k = col; k < 3; ++k) m[row][k] -= factor * m[col][k];
            rhs[row] -= factor * rhs[col];
        }
    }
    for (int row = 2; row >= 0; --row) {
        double acc = rhs[row];
        for (int k = row + 1; k < 3; ++k) acc -= m[row][k] * out[k];
        out[row] = acc / m[row][row];
    }
    return true;
}

double max_abs_residual(const std::array<double, 3>& f) {
    return std::max({std::fabs(f[0]), std::fabs(f[1]), std::fabs(f[2])});
}

bool newton_polish(const FixProblem& problem, FixGuess& guess) {
    for (int iter = 0; iter < 60; ++iter) {
        const auto f = problem.residuals(guess);
        if (max_abs_residual(f) < 1e-13) return true;
        std::array<double, 3> step{};
        if (!solve3(problem.jacobian(guess), f, step)) return false;
        guess.lat -= step[0];
        guess.dec -= step[1];
        guess.h1 -= step[2];
        if (!std::isfinite(guess.lat) || !std::isfinite(guess.dec) || !std::isfinite(guess.h1)) {
            return false;
        }
    }
    return max_abs_residual(problem.residuals(guess)) < 1e-13;
}

// Quotient out the model symmetries: joint supplement, joint sign flip,
// latitude/declination exchange, hour-angle period.
FixGuess canonicalize(FixGuess g) {
    g.lat = normalize_angle_signed(g.lat).rad();
    g.dec = normalize_angle_signed(g.dec).rad();
    if (std::cos(g.lat) < 0.0 && std::cos(g.dec) < 0.0) {
        g.lat = normalize_angle_signed(kPi - g.lat).rad();
        g.dec = normalize_angle_signed(kPi - g.dec).rad();
    }
    if (g.lat < 0.0) {
        g.lat = -g.lat;
        g.dec = -g.dec;
    }
    if (g.lat < std::fabs(g.dec) && std::fabs(g.dec) <= kPi / 2.0) {
        std::swap(g.lat, g.dec);
        if (g.lat < 0.0) {
            g.lat = -g.lat;
            g.dec = -g.dec;
        }
    }
    g.h1 = normalize_angle_signed(g.h1).rad();
    return g;
}

bool fix_verifies(const FixProblem& problem, const FixGuess& g,
                  const std::array<Angle, 3>& altitudes) {
    // only fixes with a real pole elevation and declination count; the
    // second root branch of the altitude system has cos(lat) cos(dec) < 0
    // and cannot be brought into the box by the model symmetries
    if (g.lat < 0.0 || g.lat > kPi / 2.0 + 1e-12) return false;
    if (std::fabs(g.dec) > kPi / 2.0 + 1e-12) return false;
    const auto f = problem.residuals(g);
    if (max_abs_residual(f) > 1e-9) return false;
    for (int i = 0; i < 3; ++i) {
        const double model = std::clamp(f[i] + problem.sin_alt[i], -1.0, 1.0);
        if (std::fabs(std::asin(model) - altitudes[i].rad()) > 1e-9) return false;
    }
    return true;
}

}  // namespace

SphericalTriangle::SphericalTriangle(Angle ab, Angle ac, Angle a)
    : side_ab(ab), side_ac(ac), angle_a(a) {
    check_arc(ab, "arc AB");
    check_arc(ac, "arc AC");
    check_arc(a, "vertex angle A");
}

Angle third_side_euler(const SphericalTriangle& triangle) {
    const double sum = triangle.side_ab.rad() + triangle.side_ac.rad();
    const double diff = triangle.side_ab.rad() - triangle.side_ac.rad();
    const double cos_a = std::cos(triangle.angle_a.rad());
    const double cos_bc = (std::cos(sum) + std::cos(diff)) / 2.0 +
                          (cos_a * std::cos(diff) - cos_a * std::cos(sum)) / 2.0;
    return Angle::radians(clamped_acos(cos_bc));
}

Angle third_side_standard(const SphericalTriangle& triangle) {
    const double ab = triangle.side_ab.rad();
    const double ac = triangle.side_ac.rad();
    const double cos_bc = std::cos(ab) * std::cos(ac) +
                          std::cos(triangle.angle_a.rad()) * std::sin(ab) * std::sin(ac);
    return Angle::radians(clamped_acos(cos_bc));
}

AltitudeObservation::AltitudeObservation(std::array<Angle, 3> alts, std::array<Angle, 2> gaps)
    : altitudes(alts), hour_angle_gaps(gaps) {
    for (const Angle& h : altitudes) {
        if (!(std::fabs(h.rad()) < kPi / 2.0)) {
            throw std::domain_error("altitude must lie in (-pi/2, pi/2)");
        }
    }
    for (const Angle& gap : hour_angle_gaps) {
        if (!(gap.rad() > 0.0) || !(gap.rad() < kTwoPi)) {
            throw std::domain_error("hour-angle gap must lie in (0, 2*pi)");
        }
    }
}

StarFix star_fix(const AltitudeObservation& obs, const Tolerance& tol) {
    const double h1 = obs.altitudes[0].rad();
    const double h2 = obs.altitudes[1].rad();
    const double h3 = obs.altitudes[2].rad();
    if (std::fabs(h1 - h2) < tol.abs_eps && std::fabs(h2 - h3) < tol.abs_eps) {
        throw DegenerateGeometryError(
            "all altitudes equal: hour angle indeterminate (star at pole or observer at pole)");
    }

    const FixProblem problem{{std::sin(h1), std::sin(h2), std::sin(h3)},
                             obs.hour_angle_gaps[0].rad(),
                             obs.hour_angle_gaps[1].rad()};

    auto accept = [&](FixGuess guess) -> std::pair<bool, FixGuess> {
        if (!newton_polish(problem, guess)) return {false, guess};
        const FixGuess canon = canonicalize(guess);
        if (!fix_verifies(problem, canon, obs.altitudes)) return {false, canon};
        return {true, canon};
    };

    if (auto [ok, fix] = accept({0.5, 0.5, 0.5}); ok) {
        return {Angle::radians(fix.lat), Angle::radians(fix.dec), Angle::radians(fix.h1)};
    }

    // grid seeding over the canonical box, best residuals first
    constexpr int kGrid = 36;
    struct Seed {
        double score;
        FixGuess guess;
    };
    std::vector<Seed> seeds;
    seeds.reserve(kGrid * kGrid * kGrid);
    for (int i = 0; i < kGrid; ++i) {
        const double lat = (i + 0.5) * (kPi / 2.0) / kGrid;
        for (int j = 0; j < kGrid; ++j) {
            const double dec = -kPi / 2.0 + (j + 0.5) * kPi / kGrid;
            for (int k = 0; k < kGrid; ++k) {
                const double hour = -kPi + (k + 0.5) * kTwoPi / kGrid;
                const FixGuess guess{lat, dec, hour};
                const auto f = problem.residuals(guess);
                seeds.push_back({f[0] * f[0] + f[1] * f[1] + f[2] * f[2], guess});
            }
        }
    }
    std::sort(seeds.begin(), seeds.end(),
              [](const Seed& a, const Seed& b) { return a.score < b.score; });

    const std::size_t attempts = std::min<std::size_t>(seeds.size(), 200);
    for (std::size_t i = 0; i < attempts; ++i) {
        if (auto [ok, fix] = accept(seeds[i].guess); ok) {
            return {Angle::radians(fix.lat), Angle::radians(fix.dec), Angle::radians(fix.h1)};
        }
    }
    throw NoFixError("no latitude/declination fix reproduces the observed altitudes");
}

Angle transit_altitude(Angle latitude, Angle declination) {
    if (!(std::fabs(latitude.rad()) <= kPi / 2.0)) {
        throw std::domain_error("latitude must lie in [-pi/2, pi/2]");
    }
    if (!(std::fabs(declination.rad()) <= kPi / 2.0)) {
        throw std::domain_error("declination must lie in [-pi/2, pi/2]");
    }
    return Angle::radians(kPi / 2.0 - std::fabs(latitude.rad() - declination.rad()));
}

DeclinationExtremes lunar_declination_extremes(Angle obliquity, Angle inclination) {
    if (!(obliquity.rad() >= 0.0) || !(obliquity.rad() < kPi / 2.0)) {
        throw std::domain_error("obliquity must lie in [0, pi/2)");
    }
    if (!(inclination.rad() >= 0.0) || !(inclination.rad() < kPi / 2.0)) {
        throw std::domain_error("inclination must lie in [0, pi/2)");
    }
    return {Angle::radians(obliquity.rad() + inclination.rad()),
            Angle::radians(std::fabs(obliquity.rad() - inclination.rad()))};
}

}  // namespace celmech::sphastro
