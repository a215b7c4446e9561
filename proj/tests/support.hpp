// Shared test helpers: deterministic RNG plus independent oracles. Nothing
// here calls back into the code paths under test.
#pragma once

#include <cmath>
#include <random>

namespace testsupport {

inline std::mt19937_64 make_rng(std::uint64_t seed) {
    return std::mt19937_64{seed};
}

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

// Bisection oracle for E - e sin E = M on the bracket [M - e, M + e],
// driven to an interval below width_eps.
inline double kepler_bisection_oracle(double mean, double ecc, double width_eps = 1e-14) {
    if (ecc == 0.0) return mean;
    auto f = [&](double e_anom) { return e_anom - ecc * std::sin(e_anom) - mean; };
    double lo = mean - ecc;
    double hi = mean + ecc;
    for (int i = 0; i < 400 && (hi - lo) > width_eps; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if (fm == 0.0) return mid;
        if (fm > 0.0) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace testsupport
