#pragma once

#include "celmech/core.hpp"

namespace celmech::kepler {

enum class SolveMethod { EulerFixedPoint, Newton, Bisection };

/// Outcome of one Kepler-equation solve, E - e sin E = M.
/// `result` carries the best iterate even when `converged` is false, so a
/// slow solve near e -> 1 still reports something usable.
struct SolveReport {
    Angle result;          // eccentric anomaly E
    int iterations = 0;
    double residual = 0.0; // |E - e sin E - M| at result
    SolveMethod method = SolveMethod::EulerFixedPoint;
    bool converged = false;
};

/// Consistent (mean, eccentric, true) anomaly triple for one elliptical
/// position. The constructor enforces E - e sin E = M to 1e-10 and
/// 0 <= e < 1.
class AnomalySet {
public:
    AnomalySet(Angle mean, Angle eccentric, Angle true_anom, double eccentricity);

    static AnomalySet from_mean(Angle mean, double eccentricity, const Tolerance& tol = {});
    static AnomalySet from_eccentric(Angle eccentric, double eccentricity);
    static AnomalySet from_true(Angle true_anom, double eccentricity);

    [[nodiscard]] Angle mean() const noexcept { return mean_; }
    [[nodiscard]] Angle eccentric() const noexcept { return eccentric_; }
    [[nodiscard]] Angle true_anom() const noexcept { return true_anom_; }
    [[nodiscard]] double eccentricity() const noexcept { return eccentricity_; }

private:
    Angle mean_;
    Angle eccentric_;
    Angle true_anom_;
    double eccentricity_;
};

/// Mean anomaly from time since periapse: M = 2*pi*t / period, normalized.
Angle mean_from_time(double t_since_periapse, double period);

/// Fixed-point iteration E_n = M + e sin E_{n-1}, starting from E_0 = M.
/// Converged when |E_n - E_{n-1}| < abs_eps and the residual is below
/// 10*abs_eps; the count of map applications is reported. Convergence slows
/// as e approaches one.
SolveReport solve_kepler_euler(Angle mean, double eccentricity, const Tolerance& tol = {});

/// Newton iteration on f(E) = E - e sin E - M with initial guess
/// E_0 = M + e sin M. Stops when the residual drops below abs_eps.
SolveReport solve_kepler_newton(Angle mean, double eccentricity, const Tolerance& tol = {});

/// Bisection on f(E) = E - e sin E - M over the bracket [M - e, M + e].
/// Unconditionally convergent; used to cross-validate the other solvers.
SolveReport solve_kepler_bisection(Angle mean, double eccentricity, const Tolerance& tol = {});

/// v = atan2(sqrt(1 - e^2) sin E, cos E - e), normalized into [0, 2*pi).
Angle eccentric_to_true(Angle eccentric, double eccentricity);

/// Inverse of eccentric_to_true.
Angle true_to_eccentric(Angle true_anom, double eccentricity);

/// M = E - e sin E, normalized into [0, 2*pi). Exact inverse of the solvers.
Angle eccentric_to_mean(Angle eccentric, double eccentricity);

}  // namespace celmech::kepler
