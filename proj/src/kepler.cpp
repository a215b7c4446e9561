#include "celmech/kepler.hpp"

#include <cmath>

namespace celmech::kepler {

namespace {

void check_eccentricity(double e) {
    if (!std::isfinite(e) || e < 0.0 || e >= 1.0) {
        throw std::domain_error("eccentricity must lie in [0, 1)");
    }
}

double residual_at(double ecc_anom, double e, double mean) {
    return ecc_anom - e * std::sin(ecc_anom) - mean;
}

}  // namespace

Angle mean_from_time(double t_since_periapse, double period) {
    if (!std::isfinite(t_since_periapse)) {
        throw std::domain_error("time since periapse must be finite");
    }
    if (!std::isfinite(period) || !(period > 0.0)) {
        throw std::domain_error("orbital period must be positive");
    }
    return normalize_angle(kTwoPi * t_since_periapse / period);
}

SolveReport solve_kepler_euler(Angle mean, double eccentricity, const Tolerance& tol) {
    check_eccentricity(eccentricity);
    const double m = normalize_angle(mean.rad()).rad();

    double prev = m;  // E_0 = M
    for (int n = 1; n <= tol.max_iter; ++n) {
        const double next = m + eccentricity * std::sin(prev);
        const double resid = std::fabs(residual_at(next, eccentricity, m));
        if (std::fabs(next - prev) < tol.abs_eps && resid < 10.0 * tol.abs_eps) {
            return {Angle::radians(next), n, resid, SolveMethod::EulerFixedPoint, true};
        }
        prev = next;
    }
    const double resid = std::fabs(residual_at(prev, eccentricity, m));
    return {Angle::radians(prev), tol.max_iter, resid, SolveMethod::EulerFixedPoint, false};
}

SolveReport solve_kepler_newton(Angle mean, double eccentricity, const Tolerance& tol) {
    check_eccentricity(eccentricity);
    const double m = normalize_angle(mean.rad()).rad();

    double current = m + eccentricity * std::sin(m);
    double resid = residual_at(current, eccentricity, m);
    int n = 0;
    while (n < tol.max_iter && std::fabs(resid) >= tol.abs_eps) {
        // slope 1 - e cos E >= 1 - e > 0, so the step is always defined
        current -= resid / (1.0 - eccentricity * std::cos(current));
        resid = residual_at(current, eccentricity, m);
        ++n;
    }
    const bool converged = std::fabs(resid) < tol.abs_eps;
    return {Angle::radians(current), n, std::fabs(resid), SolveMethod::Newton, converged};
}

SolveReport solve_kepler_bisection(Angle mean, double eccentricity, const Tolerance& tol) {
    check_eccentricity(eccentricity);
    const double m = normalize_angle(mean.rad()).rad();

    // f is increasing with f(M - e) <= 0 <= f(M + e); shrinking the bracket
    // below 1.9*abs_eps/(1 + e) bounds the midpoint residual under abs_eps
    double lo = m - eccentricity;
    double hi = m + eccentricity;
    const double width_goal = 1.9 * tol.abs_eps / (1.0 + eccentricity);

    double mid = 0.5 * (lo + hi);
    double fmid = residual_at(mid, eccentricity, m);
    int n = 0;
    while (n < tol.max_iter && (hi - lo) > width_goal && fmid != 0.0) {
        if (fmid > 0.0) {
            hi = mid;
        } else {
            lo = mid;
        }
        mid = 0.5 * (lo + hi);
        fmid = residual_at(mid, eccentricity, m);
        ++n;
    }
    const bool converged = std::fabs(fmid) < tol.abs_eps;
    return {Angle::radians(mid), n, std::fabs(fmid), SolveMethod::Bisection, converged};
}

Angle eccentric_to_true(Angle eccentric, double eccentricity) {
    check_eccentricity(eccentricity);
    const double ecc_anom = eccentric.rad();
    const double s = std::sqrt(1.0 - eccentricity * eccentricity) * std::sin(ecc_anom);
    const double c = std::cos(ecc_anom) - eccentricity;
    return normalize_angle(std::atan2(s, c));
}

Angle true_to_eccentric(Angle true_anom, double eccentricity) {
    check_eccentricity(eccentricity);
    const double v = true_anom.rad();
    const double s = std::sqrt(1.0 - eccentricity * eccentricity) * std::sin(v);
    const double c = eccentricity + std::cos(v);
    return normalize_angle(std::atan2(s, c));
}

Angle eccentric_to_mean(Angle eccentric, double eccentricity) {
    check_eccentricity(eccentricity);
    const double ecc_anom = eccentric.rad();
    return normalize_angle(ecc_anom - eccentricity * std::sin(ecc_anom));
}

AnomalySet::AnomalySet(Angle mean, Angle eccentric, Angle true_anom, double eccentricity)
    : mean_(mean), eccentric_(eccentric), true_anom_(true_anom), eccentricity_(eccentricity) {
    check_eccentricity(eccentricity);
    const double resid = normalize_angle_signed(
        eccentric.rad() - eccentricity * std::sin(eccentric.rad()) - mean.rad()).rad();
    if (std::fabs(resid) > 1e-10) {
        throw std::domain_error("anomaly set violates E - e sin E = M");
    }
}

AnomalySet AnomalySet::from_mean(Angle mean, double eccentricity, const Tolerance& tol) {
    const SolveReport report = solve_kepler_newton(mean, eccentricity, tol);
    if (!report.converged) {
        throw std::runtime_error("kepler solver did not converge while building anomaly set");
    }
    return {normalize_angle(mean.rad()), report.result,
            eccentric_to_true(report.result, eccentricity), eccentricity};
}

AnomalySet AnomalySet::from_eccentric(Angle eccentric, double eccentricity) {
    const Angle e_norm = normalize_angle(eccentric.rad());
    return {eccentric_to_mean(e_norm, eccentricity), e_norm,
            eccentric_to_true(e_norm, eccentricity), eccentricity};
}

AnomalySet AnomalySet::from_true(Angle true_anom, double eccentricity) {
    const Angle ecc_anom = true_to_eccentric(true_anom, eccentricity);
    return {eccentric_to_mean(ecc_anom, eccentricity), ecc_anom,
            normalize_angle(true_anom.rad()), eccentricity};
}

}  // namespace celmech::kepler
