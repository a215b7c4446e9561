#pragma once

#include <array>
#include <complex>
#include <utility>
#include <vector>

#include "celmech/core.hpp"

namespace celmech::cr3bp {

/// Thrown when a query point coincides with one of the primaries.
class SingularityError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Thrown when a propagated state passes within 1e-6 of a primary; the
/// unregularized equations are unreliable below that.
class CloseApproachError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Thrown when a propagated state stops being finite.
class DivergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Circular restricted three-body system in nondimensional synodic units:
/// total mass 1, primary separation 1, rotation rate 1. The primaries sit at
/// (-mu, 0, 0) and (1 - mu, 0, 0).
class Cr3bpSystem {
public:
    explicit Cr3bpSystem(double mass_parameter);

    [[nodiscard]] double mu() const noexcept { return mu_; }
    [[nodiscard]] double primary1_x() const noexcept { return -mu_; }
    [[nodiscard]] double primary2_x() const noexcept { return 1.0 - mu_; }

private:
    double mu_;
};

/// Rotating-frame state at one epoch.
struct RotState {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
    double vx = 0.0;
    double vy = 0.0;
    double vz = 0.0;
    double t = 0.0;
};

struct StateDerivative {
    double dx, dy, dz;
    double dvx, dvy, dvz;
};

/// Omega = (x^2 + y^2)/2 + (1 - mu)/r1 + mu/r2.
double effective_potential(const Cr3bpSystem& sys, double x, double y, double z);

/// (dOmega/dx, dOmega/dy, dOmega/dz); zero exactly at the five equilibria.
std::array<double, 3> effective_potential_gradient(const Cr3bpSystem& sys,
                                                   double x, double y, double z);

/// Synodic-frame accelerations: xdd = 2 yd + Omega_x, ydd = -2 xd + Omega_y,
/// zdd = Omega_z. The Coriolis terms do no work.
StateDerivative equations_of_motion(const Cr3bpSystem& sys, const RotState& state);

/// C = 2*Omega - (vx^2 + vy^2 + vz^2); the frame's only conserved quantity.
/// With z = vz = 0 this is the planar expression
/// x^2 + y^2 + 2(1-mu)/r1 + 2mu/r2 - vx^2 - vy^2.
double jacobi_constant(const Cr3bpSystem& sys, const RotState& state);

/// Axis equilibria as roots of dOmega/dx on y = z = 0, bracketed by
/// L1 in (-mu, 1-mu), L2 in (1-mu, 2), L3 in (-2, -mu) and found by
/// bisection (the bracketed form of the collinear quintic).
struct CollinearPoints {
    double l1_x;
    double l2_x;
    double l3_x;
};
CollinearPoints collinear_points(const Cr3bpSystem& sys, const Tolerance& tol = {});

struct PlanarPoint {
    double x;
    double y;
};

/// Equilateral equilibria, exactly (1/2 - mu, +-sqrt(3)/2).
std::pair<PlanarPoint, PlanarPoint> triangular_points(const Cr3bpSystem& sys);

enum class Stability { Stable, Unstable };

/// Eigenvalues of the 4x4 linearization of the planar equations of motion at
/// (x, y), from the characteristic polynomial
/// s^2 + (4 - Oxx - Oyy) s + (Oxx Oyy - Oxy^2) with s = lambda^2.
std::array<std::complex<double>, 4> planar_eigenvalues(const Cr3bpSystem& sys,
                                                       double x, double y);

/// Stable iff every eigenvalue of the planar linearization is purely
/// imaginary (real part within 1e-9). The point must be an equilibrium
/// (|grad Omega| <= 1e-8).
Stability stability_classify(const Cr3bpSystem& sys, PlanarPoint equilibrium);

/// Critical mass parameter (1 - sqrt(23/27))/2, the root of 27 mu(1-mu) = 1:
/// the triangular points are linearly stable below it.
double routh_critical_mu();

/// All five equilibria with their stability, ordered L1..L5.
struct LagrangePointSet {
    double l1_x;
    double l2_x;
    double l3_x;
    PlanarPoint l4;
    PlanarPoint l5;
    std::array<Stability, 5> stability;
};
LagrangePointSet lagrange_points(const Cr3bpSystem& sys, const Tolerance& tol = {});

struct JacobiSample {
    double t;
    double c;
};

/// Time-ordered propagation samples with a Jacobi-constant audit trail.
class Trajectory {
public:
    [[nodiscard]] const std::vector<RotState>& states() const noexcept { return states_; }
    [[nodiscard]] const std::vector<JacobiSample>& jacobi_log() const noexcept { return jacobi_log_; }

    /// Largest |C(t) - C(0)| / |C(0)| over the log (absolute drift when
    /// C(0) is zero).
    [[nodiscard]] double max_jacobi_drift() const;

private:
    friend Trajectory propagate_rk4(const Cr3bpSystem&, const RotState&, double, double);
    friend Trajectory propagate_rkf45(const Cr3bpSystem&, const RotState&, double, double,
                                      double, double);
    void append(const Cr3bpSystem& sys, const RotState& state);

    std::vector<RotState> states_;
    std::vector<JacobiSample> jacobi_log_;
};

/// Fixed-step classic Runge-Kutta propagation sampled at every step
/// boundary. Halts with CloseApproachError when r1 or r2 < 1e-6 and with
/// DivergenceError on non-finite states.
Trajectory propagate_rk4(const Cr3bpSystem& sys, const RotState& initial,
                         double t_end, double dt);

/// Adaptive Runge-Kutta-Fehlberg 4(5) propagation sampled at accepted steps.
Trajectory propagate_rkf45(const Cr3bpSystem& sys, const RotState& initial,
                           double t_end, double abs_tol = 1e-10, double rel_tol = 1e-10,
                           double initial_step = 1e-3);

}  // namespace celmech::cr3bp
