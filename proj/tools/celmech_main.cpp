// Command-line front end: every computation as a subcommand emitting
// deterministic CSV. Angles cross this boundary in degrees unless --radians
// is given; the library itself is radians-only.

#include <charconv>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "celmech/conic.hpp"
#include "celmech/core.hpp"
#include "celmech/cr3bp.hpp"
#include "celmech/kepler.hpp"
#include "celmech/sphastro.hpp"

namespace {

// 15 significant digits, locale-independent, -0 folded to +0
std::string format_number(double value) {
    if (value == 0.0) value = 0.0;
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof(buf), value,
                                   std::chars_format::scientific, 14);
    return std::string(buf, res.ptr);
}

double to_radians(double value, bool radians) {
    return radians ? value : value * celmech::kPi / 180.0;
}

double from_radians(celmech::Angle angle, bool radians) {
    return radians ? angle.rad() : angle.deg();
}

void emit(const std::string& text, const std::string& output_path) {
    if (output_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(output_path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot open output file: " + output_path);
    }
    out << text;
}

struct KeplerSolveArgs {
    double eccentricity = 0.0;
    double mean = 0.0;
    std::string method = "euler";
    bool radians = false;
    double abs_eps = 1e-12;
    int max_iter = 200;
};

std::string run_kepler_solve(const KeplerSolveArgs& args) {
    using namespace celmech::kepler;
    const celmech::Tolerance tol(args.abs_eps, args.abs_eps, args.max_iter);
    const auto mean = celmech::Angle::radians(to_radians(args.mean, args.radians));

    SolveReport report;
    if (args.method == "euler") {
        report = solve_kepler_euler(mean, args.eccentricity, tol);
    } else if (args.method == "newton") {
        report = solve_kepler_newton(mean, args.eccentricity, tol);
    } else {
        report = solve_kepler_bisection(mean, args.eccentricity, tol);
    }
    if (!report.converged) {
        std::cerr << "celmech: warning: solver stopped after " << report.iterations
                  << " iterations with residual " << format_number(report.residual)
                  << "; emitting the best iterate\n";
    }
    std::string csv = "E,iterations,residual\n";
    csv += format_number(from_radians(report.result, args.radians)) + "," +
           format_number(report.iterations) + "," + format_number(report.residual) + "\n";
    return csv;
}

struct OrbitTableArgs {
    double eccentricity = 0.0;
    double semi_latus = 0.0;
    double semimajor = 0.0;
    bool has_semi_latus = false;
    bool has_semimajor = false;
    double v_start = 0.0;
    double v_end = 0.0;
    bool has_v_end = false;
    int count = 37;
    bool radians = false;
};

std::string run_orbit_table(const OrbitTableArgs& args) {
    using celmech::conic::OrbitElements;
    if (args.has_semi_latus == args.has_semimajor) {
        throw std::domain_error("provide exactly one of --p or --a");
    }
    if (args.count < 1) {
        throw std::domain_error("grid count must be at least 1");
    }
    const OrbitElements elements =
        args.has_semi_latus
            ? OrbitElements::from_semi_latus_rectum(args.eccentricity, args.semi_latus)
            : OrbitElements::from_semimajor_axis(args.eccentricity, args.semimajor);

    const double v_end = args.has_v_end ? args.v_end : (args.radians ? celmech::kTwoPi : 360.0);
    std::string csv = "v,r,x,y\n";
    for (int i = 0; i < args.count; ++i) {
        const double frac = args.count == 1 ? 0.0 : static_cast<double>(i) / (args.count - 1);
        const double v = args.v_start + frac * (v_end - args.v_start);
        const auto state = celmech::conic::state_at(
            elements, celmech::Angle::radians(to_radians(v, args.radians)));
        csv += format_number(v) + "," + format_number(state.radius) + "," +
               format_number(state.x) + "," + format_number(state.y) + "\n";
    }
    return csv;
}

struct StarFixArgs {
    double h1 = 0.0, h2 = 0.0, h3 = 0.0;
    double tau1 = 0.0, tau2 = 0.0;
    bool radians = false;
};

std::string run_star_fix(const StarFixArgs& args) {
    using celmech::Angle;
    const celmech::sphastro::AltitudeObservation obs(
        {Angle::radians(to_radians(args.h1, args.radians)),
         Angle::radians(to_radians(args.h2, args.radians)),
         Angle::radians(to_radians(args.h3, args.radians))},
        {Angle::radians(to_radians(args.tau1, args.radians)),
         Angle::radians(to_radians(args.tau2, args.radians))});
    const auto fix = celmech::sphastro::star_fix(obs);
    std::string csv = "latitude,declination,hour_angle\n";
    csv += format_number(from_radians(fix.latitude, args.radians)) + "," +
           format_number(from_radians(fix.declination, args.radians)) + "," +
           format_number(from_radians(fix.first_hour_angle, args.radians)) + "\n";
    return csv;
}

std::string run_lagrange(double mu) {
    using namespace celmech::cr3bp;
    const Cr3bpSystem sys(mu);
    const LagrangePointSet set = lagrange_points(sys);
    const std::array<std::array<double, 2>, 5> positions{{{set.l1_x, 0.0},
                                                          {set.l2_x, 0.0},
                                                          {set.l3_x, 0.0},
                                                          {set.l4.x, set.l4.y},
                                                          {set.l5.x, set.l5.y}}};
    std::string csv = "name,x,y,stability\n";
    for (int i = 0; i < 5; ++i) {
        csv += "L" + std::to_string(i + 1) + "," + format_number(positions[i][0]) + "," +
               format_number(positions[i][1]) + "," +
               (set.stability[i] == Stability::Stable ? "stable" : "unstable") + "\n";
    }
    return csv;
}

struct PropagateArgs {
    double mu = 0.0;
    double x = 0.0, y = 0.0, z = 0.0;
    double vx = 0.0, vy = 0.0, vz = 0.0;
    double t_end = 0.0;
    double dt = 1e-3;
    std::string method = "rk4";
    double abs_tol = 1e-10;
    double rel_tol = 1e-10;
};

std::string run_propagate(const PropagateArgs& args) {
    using namespace celmech::cr3bp;
    const Cr3bpSystem sys(args.mu);
    const RotState initial{args.x, args.y, args.z, args.vx, args.vy, args.vz, 0.0};
    const Trajectory trajectory =
        args.method == "rk4"
            ? propagate_rk4(sys, initial, args.t_end, args.dt)
            : propagate_rkf45(sys, initial, args.t_end, args.abs_tol, args.rel_tol, args.dt);

    std::string csv = "t,x,y,z,vx,vy,vz,C\n";
    const auto& log = trajectory.jacobi_log();
    const auto& states = trajectory.states();
    for (std::size_t i = 0; i < states.size(); ++i) {
        const RotState& s = states[i];
        csv += format_number(s.t) + "," + format_number(s.x) + "," + format_number(s.y) +
               "," + format_number(s.z) + "," + format_number(s.vx) + "," +
               format_number(s.vy) + "," + format_number(s.vz) + "," +
               format_number(log[i].c) + "\n";
    }
    return csv;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Celestial mechanics tables: Kepler solvers, conic orbit geometry, "
                 "three-altitude star fixes, and the circular restricted three-body problem"};
    app.name("celmech");
    app.require_subcommand(1);

    KeplerSolveArgs kepler_args;
    std::string kepler_output;
    auto* kepler_cmd =
        app.add_subcommand("kepler-solve", "Solve Kepler's equation E - e sin E = M");
    kepler_cmd->add_option("--e", kepler_args.eccentricity, "eccentricity in [0, 1)")
        ->required();
    kepler_cmd->add_option("--M", kepler_args.mean, "mean anomaly (degrees unless --radians)")
        ->required();
    kepler_cmd->add_option("--method", kepler_args.method, "solver")
        ->check(CLI::IsMember({"euler", "newton", "bisection"}))
        ->capture_default_str();
    kepler_cmd->add_option("--abs-eps", kepler_args.abs_eps, "absolute tolerance")
        ->capture_default_str();
    kepler_cmd->add_option("--max-iter", kepler_args.max_iter, "iteration cap")
        ->capture_default_str();
    kepler_cmd->add_flag("--radians", kepler_args.radians, "angles in radians");
    kepler_cmd->add_option("-o,--output", kepler_output, "write CSV to a file");

    OrbitTableArgs table_args;
    std::string table_output;
    auto* table_cmd =
        app.add_subcommand("orbit-table", "Tabulate r(v) and planar position over a grid");
    table_cmd->add_option("--e", table_args.eccentricity, "eccentricity >= 0")->required();
    auto* p_opt = table_cmd->add_option("--p", table_args.semi_latus, "semi-latus rectum");
    auto* a_opt = table_cmd->add_option("--a", table_args.semimajor, "semimajor axis");
    table_cmd->add_option("--v-start", table_args.v_start, "grid start")->capture_default_str();
    auto* v_end_opt = table_cmd->add_option("--v-end", table_args.v_end,
                                            "grid end (default one full turn)");
    table_cmd->add_option("--count", table_args.count, "grid points")->capture_default_str();
    table_cmd->add_flag("--radians", table_args.radians, "angles in radians");
    table_cmd->add_option("-o,--output", table_output, "write CSV to a file");

    StarFixArgs fix_args;
    std::string fix_output;
    auto* fix_cmd = app.add_subcommand(
        "star-fix", "Recover latitude, declination, and hour angle from three altitudes");
    fix_cmd->add_option("--h1", fix_args.h1, "first altitude")->required();
    fix_cmd->add_option("--h2", fix_args.h2, "second altitude")->required();
    fix_cmd->add_option("--h3", fix_args.h3, "third altitude")->required();
    fix_cmd->add_option("--tau1", fix_args.tau1, "hour-angle gap between sightings 1 and 2")
        ->required();
    fix_cmd->add_option("--tau2", fix_args.tau2, "hour-angle gap between sightings 2 and 3")
        ->required();
    fix_cmd->add_flag("--radians", fix_args.radians, "angles in radians");
    fix_cmd->add_option("-o,--output", fix_output, "write CSV to a file");

    double lagrange_mu = 0.0;
    std::string lagrange_output;
    auto* lagrange_cmd =
        app.add_subcommand("lagrange", "Equilibrium points and their stability");
    lagrange_cmd->add_option("--mu", lagrange_mu, "mass parameter in (0, 1/2]")->required();
    lagrange_cmd->add_option("-o,--output", lagrange_output, "write CSV to a file");

    PropagateArgs prop_args;
    std::string prop_output;
    auto* prop_cmd =
        app.add_subcommand("propagate", "Integrate a rotating-frame state, logging the Jacobi constant");
    prop_cmd->add_option("--mu", prop_args.mu, "mass parameter in (0, 1/2]")->required();
    prop_cmd->add_option("--x", prop_args.x, "initial x")->capture_default_str();
    prop_cmd->add_option("--y", prop_args.y, "initial y")->capture_default_str();
    prop_cmd->add_option("--z", prop_args.z, "initial z")->capture_default_str();
    prop_cmd->add_option("--vx", prop_args.vx, "initial vx")->capture_default_str();
    prop_cmd->add_option("--vy", prop_args.vy, "initial vy")->capture_default_str();
    prop_cmd->add_option("--vz", prop_args.vz, "initial vz")->capture_default_str();
    prop_cmd->add_option("--t-end", prop_args.t_end, "end time")->required();
    prop_cmd->add_option("--dt", prop_args.dt, "fixed step (rk4) or initial step (rkf45)")
        ->capture_default_str();
    prop_cmd->add_option("--method", prop_args.method, "integrator")
        ->check(CLI::IsMember({"rk4", "rkf45"}))
        ->capture_default_str();
    prop_cmd->add_option("--abs-tol", prop_args.abs_tol, "rkf45 absolute tolerance")
        ->capture_default_str();
    prop_cmd->add_option("--rel-tol", prop_args.rel_tol, "rkf45 relative tolerance")
        ->capture_default_str();
    prop_cmd->add_option("-o,--output", prop_output, "write CSV to a file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n\n" << app.help();
        return 64;
    }

    try {
        table_args.has_semi_latus = p_opt->count() > 0;
        table_args.has_semimajor = a_opt->count() > 0;
        table_args.has_v_end = v_end_opt->count() > 0;

        if (app.got_subcommand(kepler_cmd)) {
            emit(run_kepler_solve(kepler_args), kepler_output);
        } else if (app.got_subcommand(table_cmd)) {
            emit(run_orbit_table(table_args), table_output);
        } else if (app.got_subcommand(fix_cmd)) {
            emit(run_star_fix(fix_args), fix_output);
        } else if (app.got_subcommand(lagrange_cmd)) {
            emit(run_lagrange(lagrange_mu), lagrange_output);
        } else if (app.got_subcommand(prop_cmd)) {
            emit(run_propagate(prop_args), prop_output);
        }
    } catch (const std::exception& e) {
        std::cerr << "celmech: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
