#include "celmech/cr3bp.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace celmech::cr3bp {

namespace {

constexpr double kSingularRadius = 1e-12;
constexpr double kCloseApproachRadius = 1e-6;
constexpr double kBracketInset = 1e-12;

struct Distances {
    double r1;
    double r2;
};

Distances distances(double mu, double x, double y, double z) {
    const double dx1 = x + mu;
    const double dx2 = x - 1.0 + mu;
    return {std::sqrt(dx1 * dx1 + y * y + z * z),
            std::sqrt(dx2 * dx2 + y * y + z * z)};
}

Distances checked_distances(double mu, double x, double y, double z) {
    if (!std::isfinite(x) || !std::isfinite(y) || !std::isfinite(z)) {
        throw std::domain_error("position must be finite");
    }
    const Distances d = distances(mu, x, y, z);
    if (d.r1 < kSingularRadius || d.r2 < kSingularRadius) {
        throw SingularityError("point coincides with a primary");
    }
    return d;
}

// dOmega/dx restricted to the x axis; the square roots collapse to |.|
double axis_gradient(double mu, double x) {
    const double d1 = x + mu;
    const double d2 = x - 1.0 + mu;
    const double a1 = std::fabs(d1);
    const double a2 = std::fabs(d2);
    return x - (1.0 - mu) * d1 / (a1 * a1 * a1) - mu * d2 / (a2 * a2 * a2);
}

double bisect_axis_root(double mu, double lo, double hi, int max_iter) {
    // f(lo) < 0 < f(hi) on every bracket by construction
    if (!(axis_gradient(mu, lo) < 0.0) || !(axis_gradient(mu, hi) > 0.0)) {
        throw std::logic_error("collinear-point bracket lost its sign change");
    }
    double mid = 0.5 * (lo + hi);
    for (int i = 0; i < max_iter; ++i) {
        const double fm = axis_gradient(mu, mid);
        if (fm == 0.0) return mid;
        if (fm < 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
        const double next = 0.5 * (lo + hi);
        if (next == lo || next == hi) return next;  // interval at machine width
        mid = next;
    }
    return mid;
}

struct PlanarHessian {
    double xx;
    double xy;
    double yy;
};

PlanarHessian effective_potential_hessian(double mu, double x, double y) {
    const double d1 = x + mu;
    const double d2 = x - 1.0 + mu;
    const double r1 = std::sqrt(d1 * d1 + y * y);
    const double r2 = std::sqrt(d2 * d2 + y * y);
    const double r13 = r1 * r1 * r1, r15 = r13 * r1 * r1;
    const double r23 = r2 * r2 * r2, r25 = r23 * r2 * r2;
    const double m1 = 1.0 - mu, m2 = mu;

    PlanarHessian h{};
    h.xx = 1.0 - m1 / r13 + 3.0 * m1 * d1 * d1 / r15 - m2 / r23 + 3.0 * m2 * d2 * d2 / r25;
    h.yy = 1.0 - m1 / r13 + 3.0 * m1 * y * y / r15 - m2 / r23 + 3.0 * m2 * y * y / r25;
    h.xy = 3.0 * m1 * d1 * y / r15 + 3.0 * m2 * d2 * y / r25;
    return h;
}

using StateVec = std::array<double, 6>;

StateVec derivative(const Cr3bpSystem& sys, const StateVec& s) {
    const RotState state{s[0], s[1], s[2], s[3], s[4], s[5], 0.0};
    const StateDerivative d = equations_of_motion(sys, state);
    return {d.dx, d.dy, d.dz, d.dvx, d.dvy, d.dvz};
}

StateVec axpy(const StateVec& base, double scale, const StateVec& dir) {
    StateVec out{};
    for (int i = 0; i < 6; ++i) out[i] = base[i] + scale * dir[i];
    return out;
}

StateVec rk4_step(const Cr3bpSystem& sys, const StateVec& s, double h) {
    const StateVec k1 = derivative(sys, s);
    const StateVec k2 = derivative(sys, axpy(s, 0.5 * h, k1));
    const StateVec k3 = derivative(sys, axpy(s, 0.5 * h, k2));
    const StateVec k4 = derivative(sys, axpy(s, h, k3));
    StateVec out{};
    for (int i = 0; i < 6; ++i) {
        out[i] = s[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    return out;
}

RotState to_state(const StateVec& s, double t) {
    return {s[0], s[1], s[2], s[3], s[4], s[5], t};
}

StateVec to_vec(const RotState& s) {
    return {s.x, s.y, s.z, s.vx, s.vy, s.vz};
}

void check_propagated(const Cr3bpSystem& sys, const StateVec& s, double t) {
    for (const double v : s) {
        if (!std::isfinite(v)) {
            throw DivergenceError("state became non-finite at t = " + std::to_string(t));
        }
    }
    const Distances d = distances(sys.mu(), s[0], s[1], s[2]);
    if (d.r1 < kCloseApproachRadius || d.r2 < kCloseApproachRadius) {
        throw CloseApproachError("close approach to a primary at t = " + std::to_string(t));
    }
}

}  // namespace

Cr3bpSystem::Cr3bpSystem(double mass_parameter) : mu_(mass_parameter) {
    if (!std::isfinite(mu_) || !(mu_ > 0.0) || !(mu_ <= 0.5)) {
        throw std::domain_error("mass parameter must lie in (0, 1/2]");
    }
}

double effective_potential(const Cr3bpSystem& sys, double x, double y, double z) {
    const Distances d = checked_distances(sys.mu(), x, y, z);
    return 0.5 * (x * x + y * y) + (1.0 - sys.mu()) / d.r1 + sys.mu() / d.r2;
}

std::array<double, 3> effective_potential_gradient(const Cr3bpSystem& sys,
                                                   double x, double y, double z) {
    const double mu = sys.mu();
    const Distances d = checked_distances(mu, x, y, z);
    const double r13 = d.r1 * d.r1 * d.r1;
    const double r23 = d.r2 * d.r2 * d.r2;
    const double m1 = 1.0 - mu;
    return {x - m1 * (x + mu) / r13 - mu * (x - 1.0 + mu) / r23,
            y - m1 * y / r13 - mu * y / r23,
            -m1 * z / r13 - mu * z / r23};
}

StateDerivative equations_of_motion(const Cr3bpSystem& sys, const RotState& state) {
    const auto g = effective_potential_gradient(sys, state.x, state.y, state.z);
    return {state.vx,           state.vy,            state.vz,
            2.0 * state.vy + g[0], -2.0 * state.vx + g[1], g[2]};
}

double jacobi_constant(const Cr3bpSystem& sys, const RotState& state) {
    const double v2 = state.vx * state.vx + state.vy * state.vy + state.vz * state.vz;
    return 2.0 * effective_potential(sys, state.x, state.y, state.z) - v2;
}

CollinearPoints collinear_points(const Cr3bpSystem& sys, const Tolerance& tol) {
    const double mu = sys.mu();
    const int cap = std::max(tol.max_iter, 100);
    CollinearPoints out{};
    out.l1_x = bisect_axis_root(mu, -mu + kBracketInset, 1.0 - mu - kBracketInset, cap);
    out.l2_x = bisect_axis_root(mu, 1.0 - mu + kBracketInset, 2.0, cap);
    out.l3_x = bisect_axis_root(mu, -2.0, -mu - kBracketInset, cap);
    return out;
}

std::pair<PlanarPoint, PlanarPoint> triangular_points(const Cr3bpSystem& sys) {
    const double x = 0.5 - sys.mu();
    const double y = std::sqrt(3.0) / 2.0;
    return {PlanarPoint{x, y}, PlanarPoint{x, -y}};
}

std::array<std::complex<double>, 4> planar_eigenvalues(const Cr3bpSystem& sys,
                                                       double x, double y) {
    checked_distances(sys.mu(), x, y, 0.0);
    const PlanarHessian h = effective_potential_hessian(sys.mu(), x, y);
    // lambda^4 + (4 - Oxx - Oyy) lambda^2 + (Oxx Oyy - Oxy^2) = 0
    const std::complex<double> b(4.0 - h.xx - h.yy, 0.0);
    const std::complex<double> c(h.xx * h.yy - h.xy * h.xy, 0.0);
    const std::complex<double> disc = std::sqrt(b * b - 4.0 * c);
    const std::complex<double> s1 = 0.5 * (-b + disc);
    const std::complex<double> s2 = 0.5 * (-b - disc);
    const std::complex<double> l1 = std::sqrt(s1);
    const std::complex<double> l2 = std::sqrt(s2);
    return {l1, -l1, l2, -l2};
}

Stability stability_classify(const Cr3bpSystem& sys, PlanarPoint equilibrium) {
    const auto g = effective_potential_gradient(sys, equilibrium.x, equilibrium.y, 0.0);
    if (std::sqrt(g[0] * g[0] + g[1] * g[1] + g[2] * g[2]) > 1e-8) {
        throw std::domain_error("point is not an equilibrium of the rotating frame");
    }
    for (const auto& lambda : planar_eigenvalues(sys, equilibrium.x, equilibrium.y)) {
        if (std::fabs(lambda.real()) > 1e-9) return Stability::Unstable;
    }
    return Stability::Stable;
}

double routh_critical_mu() {
    return 0.5 * (1.0 - std::sqrt(23.0 / 27.0));
}

LagrangePointSet lagrange_points(const Cr3bpSystem& sys, const Tolerance& tol) {
    const CollinearPoints col = collinear_points(sys, tol);
    const auto [l4, l5] = triangular_points(sys);
    LagrangePointSet set{col.l1_x, col.l2_x, col.l3_x, l4, l5, {}};
    set.stability = {stability_classify(sys, {col.l1_x, 0.0}),
                     stability_classify(sys, {col.l2_x, 0.0}),
                     stability_classify(sys, {col.l3_x, 0.0}),
                     stability_classify(sys, l4),
                     stability_classify(sys, l5)};
    return set;
}

double Trajectory::max_jacobi_drift() const {
    if (jacobi_log_.empty()) return 0.0;
    const double c0 = jacobi_log_.front().c;
    const double scale = std::fabs(c0) > 0.0 ? std::fabs(c0) : 1.0;
    double worst = 0.0;
    for (const JacobiSample& sample : jacobi_log_) {
        worst = std::max(worst, std::fabs(sample.c - c0) / scale);
    }
    return worst;
}

void Trajectory::append(const Cr3bpSystem& sys, const RotState& state) {
    if (!states_.empty() && !(state.t > states_.back().t)) {
        throw std::domain_error("time step too small to advance the sample clock");
    }
    states_.push_back(state);
    jacobi_log_.push_back({state.t, jacobi_constant(sys, state)});
}

Trajectory propagate_rk4(const Cr3bpSystem& sys, const RotState& initial,
                         double t_end, double dt) {
    if (!std::isfinite(dt) || !(dt > 0.0)) {
        throw std::domain_error("step size must be positive");
    }
    if (!std::isfinite(t_end) || !(t_end >= 0.0)) {
        throw std::domain_error("end time must be non-negative");
    }

    StateVec s = to_vec(initial);
    check_propagated(sys, s, 0.0);

    Trajectory out;
    out.append(sys, to_state(s, 0.0));

    const double whole = std::floor(t_end / dt + 1e-9);
    const auto full_steps = static_cast<long long>(whole);
    for (long long i = 1; i <= full_steps; ++i) {
        s = rk4_step(sys, s, dt);
        const double t = static_cast<double>(i) * dt;
        check_propagated(sys, s, t);
        out.append(sys, to_state(s, t));
    }
    const double remainder = t_end - whole * dt;
    if (remainder > 1e-12 * dt) {
        s = rk4_step(sys, s, remainder);
        check_propagated(sys, s, t_end);
        out.append(sys, to_state(s, t_end));
    }
    return out;
}

Trajectory propagate_rkf45(const Cr3bpSystem& sys, const RotState& initial,
                           double t_end, double abs_tol, double rel_tol,
                           double initial_step) {
    if (!(abs_tol > 0.0) || !(rel_tol > 0.0)) {
        throw std::domain_error("tolerances must be positive");
    }
    if (!std::isfinite(t_end) || !(t_end >= 0.0)) {
        throw std::domain_error("end time must be non-negative");
    }
    if (!(initial_step > 0.0)) {
        throw std::domain_error("initial step must be positive");
    }

    StateVec s = to_vec(initial);
    check_propagated(sys, s, 0.0);

    Trajectory out;
    out.append(sys, to_state(s, 0.0));

    double t = 0.0;
    double h = std::min(initial_step, t_end > 0.0 ? t_end : initial_step);
    const double h_min = 1e-14;

    while (t < t_end) {
        h = std::min(h, t_end - t);

        const StateVec k1 = derivative(sys, s);
        const StateVec k2 = derivative(sys, axpy(s, h * (1.0 / 4.0), k1));
        StateVec tmp = s;
        for (int i = 0; i < 6; ++i) tmp[i] += h * (3.0 / 32.0 * k1[i] + 9.0 / 32.0 * k2[i]);
        const StateVec k3 = derivative(sys, tmp);
        tmp = s;
        for (int i = 0; i < 6; ++i) {
            tmp[i] += h * (1932.0 / 2197.0 * k1[i] - 7200.0 / 2197.0 * k2[i] +
                           7296.0 / 2197.0 * k3[i]);
        }
        const StateVec k4 = derivative(sys, tmp);
        tmp = s;
        for (int i = 0; i < 6; ++i) {
            tmp[i] += h * (439.0 / 216.0 * k1[i] - 8.0 * k2[i] + 3680.0 / 513.0 * k3[i] -
                           845.0 / 4104.0 * k4[i]);
        }
        const StateVec k5 = derivative(sys, tmp);
        tmp = s;
        for (int i = 0; i < 6; ++i) {
            tmp[i] += h * (-8.0 / 27.0 * k1[i] + 2.0 * k2[i] - 3544.0 / 2565.0 * k3[i] +
                           1859.0 / 4104.0 * k4[i] - 11.0 / 40.0 * k5[i]);
        }
        const StateVec k6 = derivative(sys, tmp);

        StateVec fourth{};
        StateVec fifth{};
        double err = 0.0;
        for (int i = 0; i < 6; ++i) {
            fourth[i] = s[i] + h * (25.0 / 216.0 * k1[i] + 1408.0 / 2565.0 * k3[i] +
                                    2197.0 / 4104.0 * k4[i] - 1.0 / 5.0 * k5[i]);
            fifth[i] = s[i] + h * (16.0 / 135.0 * k1[i] + 6656.0 / 12825.0 * k3[i] +
                                   28561.0 / 56430.0 * k4[i] - 9.0 / 50.0 * k5[i] +
                                   2.0 / 55.0 * k6[i]);
            const double scale =
                abs_tol + rel_tol * std::max(std::fabs(s[i]), std::fabs(fifth[i]));
            err = std::max(err, std::fabs(fifth[i] - fourth[i]) / scale);
        }

        if (err <= 1.0 || h <= h_min) {
            t += h;
            s = fifth;
            check_propagated(sys, s, t);
            out.append(sys, to_state(s, t));
        }
        const double factor =
            err > 0.0 ? std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0) : 5.0;
        h = std::max(h * factor, h_min);
    }
    return out;
}

}  // namespace celmech::cr3bp
