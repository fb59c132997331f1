#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <iostream>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "cc4/cocircular.hpp"
#include "cc4/core_dynamics.hpp"
#include "cc4/dipole_field.hpp"
#include "cc4/errors.hpp"
#include "cc4/json_io.hpp"
#include "cc4/nonzero_multiplier.hpp"
#include "cc4/simulate.hpp"
#include "cc4/zero_multiplier.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitNoSolution = 2;
constexpr int kExitNotCentral = 3;
constexpr int kExitUsage = 64;
constexpr int kExitIo = 66;

struct RunSettings {
    double certification_tol = 1e-10;
    double bisection_tol = 1e-14;
    double circle_tol = 1e-9;
    std::string format = "csv";
    int jobs = 1;
};

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

double require_mass(double m, const char* name) {
    if (m == 0.0 || !std::isfinite(m))
        throw UsageError(std::string(name) + " must be finite and nonzero");
    return m;
}

void emit_configuration(cc4::JsonWriter& w, const cc4::Configuration& config) {
    w.raw(cc4::config_to_json(config));
}

void emit_body_order(cc4::JsonWriter& w, const std::array<int, 4>& order) {
    w.begin_array();
    for (int b : order) w.value(b);
    w.end_array();
}

void emit_zero_solution(cc4::JsonWriter& w, double x, double y,
                        const cc4::ZeroMultSolution& sol) {
    w.begin_object();
    w.key("result").value(std::string("solution"));
    w.key("multiplier").value(std::string("zero"));
    w.key("x").value(x);
    w.key("y").value(y);
    w.key("normalized_x").value(sol.x);
    w.key("normalized_y").value(sol.y);
    w.key("u").value(sol.u);
    w.key("v").value(sol.v);
    w.key("u_prime").value(sol.u_prime);
    w.key("v_prime").value(sol.v_prime);
    w.key("body_order");
    emit_body_order(w, sol.caller_body);
    w.key("configuration");
    emit_configuration(w, sol.configuration);
    w.key("xi_fit").value(sol.report.xi_fit);
    w.key("max_pair_residual").value(sol.report.max_pair_residual);
    w.end_object();
}

void emit_trapezoid_solution(cc4::JsonWriter& w, const cc4::TrapezoidSolution& sol) {
    w.begin_object();
    w.key("u").value(sol.u);
    w.key("v").value(sol.v);
    w.key("r23_sq").value(sol.r23_sq);
    w.key("r14_sq").value(sol.r14_sq);
    w.key("band_class").value(std::string(cc4::to_string(sol.band_class)));
    w.key("body_order");
    emit_body_order(w, sol.caller_body);
    w.key("configuration");
    emit_configuration(w, sol.configuration);
    w.key("xi_fit").value(sol.report.xi_fit);
    w.key("max_pair_residual").value(sol.report.max_pair_residual);
    w.end_object();
}

void emit_no_solution(cc4::JsonWriter& w) {
    w.begin_object();
    w.key("result").value(std::string("no_solution"));
    w.key("multiplier").value(std::string("zero"));
    w.end_object();
}

void emit_nonzero_pair(cc4::JsonWriter& w, double x, double y,
                       const std::pair<cc4::TrapezoidSolution,
                                       cc4::TrapezoidSolution>& pair) {
    w.begin_object();
    w.key("result").value(std::string("solution"));
    w.key("multiplier").value(std::string("nonzero"));
    w.key("normalized_x").value(pair.first.x);
    w.key("normalized_y").value(pair.first.y);
    w.key("x").value(x);
    w.key("y").value(y);
    w.key("solutions").begin_array();
    emit_trapezoid_solution(w, pair.first);
    emit_trapezoid_solution(w, pair.second);
    w.end_array();
    w.end_object();
}

int run_solve(double x, double y, const std::string& multiplier) {
    require_mass(x, "--x");
    require_mass(y, "--y");
    cc4::JsonWriter w;
    int status = kExitOk;
    if (multiplier == "zero") {
        const auto sol = cc4::solve_zero(x, y);
        if (sol) {
            emit_zero_solution(w, x, y, *sol);
        } else {
            emit_no_solution(w);
            status = kExitNoSolution;
        }
    } else if (multiplier == "nonzero") {
        emit_nonzero_pair(w, x, y, cc4::solve_nonzero(x, y));
    } else {
        w.begin_object();
        w.key("multiplier").value(std::string("all"));
        w.key("x").value(x);
        w.key("y").value(y);
        w.key("zero");
        const auto sol = cc4::solve_zero(x, y);
        if (sol)
            emit_zero_solution(w, x, y, *sol);
        else
            emit_no_solution(w);
        w.key("nonzero");
        {
            cc4::JsonWriter inner;
            emit_nonzero_pair(inner, x, y, cc4::solve_nonzero(x, y));
            w.raw(inner.str());
        }
        w.end_object();
    }
    std::cout << w.str() << "\n";
    return status;
}

int run_verify(const std::string& path, const RunSettings& settings) {
    const cc4::Configuration config = cc4::load_config(path);
    const cc4::CentralityReport report = cc4::fit_multiplier(config);
    const bool central = report.max_pair_residual < settings.certification_tol;

    cc4::JsonWriter w;
    w.begin_object();
    w.key("xi_fit").value(report.xi_fit);
    w.key("max_pair_residual").value(report.max_pair_residual);
    w.key("laura_andoyer_triple");
    if (report.laura_andoyer_triple) {
        w.begin_array();
        for (double s : *report.laura_andoyer_triple) w.value(s);
        w.end_array();
    } else {
        w.null();
    }
    w.key("inertia_vector").begin_array();
    w.value(report.inertia_vector.x).value(report.inertia_vector.y);
    w.end_array();
    w.key("moment_of_inertia_at_origin").value(report.moment_of_inertia_at_origin);
    w.key("collinear_triples").begin_array();
    for (const auto& t : report.collinear_triples) {
        w.begin_array().value(t[0]).value(t[1]).value(t[2]).end_array();
    }
    w.end_array();
    w.key("central").value(central);
    w.key("tolerance").value(settings.certification_tol);
    w.end_object();
    std::cout << w.str() << "\n";
    return central ? kExitOk : kExitNotCentral;
}

struct SweepAxis {
    double lo = 0.0, hi = 0.0;
    int count = 0;
};

SweepAxis parse_axis(const std::string& text) {
    SweepAxis axis;
    char colon1 = 0, colon2 = 0;
    std::istringstream ss(text);
    if (!(ss >> axis.lo >> colon1 >> axis.hi >> colon2 >> axis.count) ||
        colon1 != ':' || colon2 != ':' || !ss.eof() || axis.count < 1)
        throw UsageError("axis must be <lo>:<hi>:<count> with count >= 1, got " + text);
    return axis;
}

double axis_value(const SweepAxis& axis, int i) {
    if (axis.count == 1) return axis.lo;
    return axis.lo + (axis.hi - axis.lo) * i / (axis.count - 1);
}

int run_sweep(const std::string& xspec, const std::string& yspec,
              const RunSettings& settings) {
    const SweepAxis xaxis = parse_axis(xspec);
    const SweepAxis yaxis = parse_axis(yspec);
    for (int i = 0; i < xaxis.count; ++i) require_mass(axis_value(xaxis, i), "--x");
    for (int i = 0; i < yaxis.count; ++i) require_mass(axis_value(yaxis, i), "--y");

    const std::size_t cells =
        static_cast<std::size_t>(xaxis.count) * yaxis.count;
    std::vector<std::string> rows(2 * cells);
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;

    auto worker = [&] {
        for (;;) {
            const std::size_t c = next.fetch_add(1);
            if (c >= cells) return;
            try {
                const double x = axis_value(xaxis, static_cast<int>(c) / yaxis.count);
                const double y = axis_value(yaxis, static_cast<int>(c) % yaxis.count);
                const auto pair = cc4::solve_nonzero(x, y);
                for (int b = 0; b < 2; ++b) {
                    const auto& sol = b == 0 ? pair.first : pair.second;
                    rows[2 * c + b] = cc4::format_double(x) + "," +
                                      cc4::format_double(y) + "," +
                                      cc4::format_double(sol.u) + "," +
                                      cc4::format_double(sol.v) + "," +
                                      cc4::format_double(sol.report.xi_fit) + "," +
                                      cc4::format_double(sol.report.max_pair_residual);
                }
            } catch (...) {
                std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                return;
            }
        }
    };
    const std::size_t nThreads =
        std::min<std::size_t>(std::max(settings.jobs, 1), cells);
    std::vector<std::thread> pool;
    for (std::size_t i = 0; i < nThreads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);

    std::cout << "x,y,u,v,xi_fit,residual\n";
    for (const std::string& row : rows) std::cout << row << "\n";
    return kExitOk;
}

std::string csv_double(double v) {
    return std::isfinite(v) ? cc4::format_double(v) : "nan";
}

int run_dipole(double umin, double umax, double vmin, double vmax, int steps) {
    if (steps < 2) throw UsageError("--steps must be at least 2");
    const auto samples = cc4::sample_field_grid(umin, umax, vmin, vmax, steps);
    std::cout << "u,v,gamma_u,gamma_v,jacobian_det\n";
    std::string line;
    for (const auto& s : samples) {
        line = csv_double(s.point.x) + "," + csv_double(s.point.y) + "," +
               csv_double(s.field.x) + "," + csv_double(s.field.y) + "," +
               csv_double(s.jacobian_det);
        std::cout << line << "\n";
    }
    return kExitOk;
}

int run_simulate(const std::string& path, double t_end, double tol,
                 const RunSettings& settings) {
    const cc4::Configuration config = cc4::load_config(path);
    const cc4::Trajectory traj = cc4::integrate(config, t_end, tol);
    const cc4::HomotheticFit fit = cc4::homothetic_fit(traj);
    const std::size_t n = config.size();

    if (settings.format == "csv") {
        std::string header = "t";
        for (std::size_t i = 1; i <= n; ++i)
            header += ",x" + std::to_string(i) + ",y" + std::to_string(i);
        for (std::size_t i = 1; i <= n; ++i)
            header += ",vx" + std::to_string(i) + ",vy" + std::to_string(i);
        std::cout << header << ",alpha,shape_dev\n";
        for (std::size_t k = 0; k < traj.times.size(); ++k) {
            std::string row = cc4::format_double(traj.times[k]);
            for (std::size_t i = 0; i < n; ++i)
                row += "," + cc4::format_double(traj.positions[k][i].x) + "," +
                       cc4::format_double(traj.positions[k][i].y);
            for (std::size_t i = 0; i < n; ++i)
                row += "," + cc4::format_double(traj.velocities[k][i].x) + "," +
                       cc4::format_double(traj.velocities[k][i].y);
            row += "," + cc4::format_double(fit.alpha[k]) + "," +
                   cc4::format_double(fit.shape_deviation[k]);
            std::cout << row << "\n";
        }
        return kExitOk;
    }

    double drift = 0.0;
    for (double e : traj.energy)
        drift = std::max(drift, std::abs(e - traj.energy.front()));
    cc4::JsonWriter w;
    w.begin_object();
    w.key("t_end").value(t_end);
    w.key("steps").value(static_cast<int>(traj.times.size()) - 1);
    w.key("close_approach").value(traj.close_approach);
    w.key("alpha_final").value(fit.alpha.back());
    w.key("max_shape_deviation").value(fit.max_shape_deviation);
    w.key("fixed_center");
    if (fit.fixed_center) {
        w.begin_array().value(fit.fixed_center->x).value(fit.fixed_center->y);
        w.end_array();
    } else {
        w.null();
    }
    w.key("fixed_center_residual");
    if (fit.fixed_center_residual)
        w.value(*fit.fixed_center_residual);
    else
        w.null();
    w.key("max_energy_drift").value(drift);
    w.end_object();
    std::cout << w.str() << "\n";
    return kExitOk;
}

int run_cocircular(const std::string& angles_text, double radius,
                   const RunSettings& settings) {
    std::vector<double> angles;
    std::istringstream ss(angles_text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            angles.push_back(std::stod(tok));
        } catch (const std::exception&) {
            throw UsageError("--angles must be four comma-separated numbers");
        }
    }
    if (angles.size() != 4)
        throw UsageError("--angles must list exactly four values (degrees)");
    if (!(radius > 0.0)) throw UsageError("--radius must be positive");

    constexpr double kDegree = 3.141592653589793238462643383279 / 180.0;
    std::vector<cc4::Vec2> positions;
    for (double a : angles)
        positions.push_back({radius * std::cos(a * kDegree),
                             radius * std::sin(a * kDegree)});
    const cc4::Configuration config({1.0, -1.0, 1.0, -1.0}, positions);
    const cc4::GapReport report = cc4::cocircular_gap(config, settings.circle_tol);

    cc4::JsonWriter w;
    w.begin_object();
    w.key("ordering").begin_array();
    for (int i : report.ordering) w.value(i);
    w.end_array();
    w.key("arc_normalized").value(report.arc_normalized);
    w.key("gap").value(report.gap);
    w.end_object();
    std::cout << w.str() << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    RunSettings settings;
    if (const char* env = std::getenv("CC4_TOL")) {
        try {
            settings.certification_tol = std::stod(env);
        } catch (const std::exception&) {
            std::cerr << "cc4: invalid CC4_TOL value\n";
            return kExitUsage;
        }
    }

    CLI::App app{"Central configurations of four bodies with masses x, -x, y, -y"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags may follow the subcommand
    app.add_option("--tol", settings.certification_tol,
                   "certification tolerance (overrides CC4_TOL)");
    app.add_option("--format", settings.format, "output format: csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--jobs", settings.jobs, "worker threads for sweeps");

    auto* solve = app.add_subcommand("solve", "solve for central configurations");
    double x = 0.0, y = 0.0;
    std::string multiplier = "all";
    solve->add_option("--x", x, "mass x")->required();
    solve->add_option("--y", y, "mass y")->required();
    solve->add_option("--multiplier", multiplier, "zero, nonzero or all")
        ->check(CLI::IsMember({"zero", "nonzero", "all"}));

    auto* verify = app.add_subcommand("verify", "certify a configuration file");
    std::string verify_path;
    verify->add_option("path", verify_path, "configuration JSON file")->required();

    auto* sweep = app.add_subcommand("sweep", "nonzero-multiplier mass sweep (CSV)");
    std::string xspec, yspec;
    sweep->add_option("--x", xspec, "x range lo:hi:count")->required();
    sweep->add_option("--y", yspec, "y range lo:hi:count")->required();

    auto* dipole = app.add_subcommand("dipole", "sample the two-body field (CSV)");
    double umin = -4.0, umax = 4.0, vmin = -4.0, vmax = 4.0;
    int steps = 200;
    dipole->add_option("--umin", umin);
    dipole->add_option("--umax", umax);
    dipole->add_option("--vmin", vmin);
    dipole->add_option("--vmax", vmax);
    dipole->add_option("--steps", steps, "samples per axis");

    auto* simulate = app.add_subcommand("simulate", "integrate Newton's equations from rest");
    std::string sim_path;
    double t_end = 0.1, sim_tol = 1e-10;
    simulate->add_option("config", sim_path, "configuration JSON file")->required();
    simulate->add_option("--t-end", t_end, "integration time (may be negative)");
    simulate->add_option("--tol", sim_tol, "integrator tolerance");

    auto* cocircular = app.add_subcommand("cocircular", "gap certificate for a co-circular quadruple");
    std::string angles_text;
    double radius = 1.0;
    cocircular->add_option("--angles", angles_text, "four angles in degrees, comma separated")
        ->required();
    cocircular->add_option("--radius", radius, "circle radius");
    cocircular->add_option("--circle-tol", settings.circle_tol,
                           "relative co-circularity tolerance");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError&) {
        std::cerr << "cc4: invalid usage (see --help)\n";
        return kExitUsage;
    }

    try {
        if (!(settings.certification_tol > 0.0) || settings.certification_tol >= 1e-2)
            throw UsageError("--tol must lie in (0, 1e-2)");
        if (!(settings.circle_tol > 0.0) || settings.circle_tol >= 1e-2)
            throw UsageError("--circle-tol must lie in (0, 1e-2)");
        if (settings.jobs < 1) throw UsageError("--jobs must be at least 1");

        if (solve->parsed()) return run_solve(x, y, multiplier);
        if (verify->parsed()) return run_verify(verify_path, settings);
        if (sweep->parsed()) return run_sweep(xspec, yspec, settings);
        if (dipole->parsed()) return run_dipole(umin, umax, vmin, vmax, steps);
        if (simulate->parsed()) return run_simulate(sim_path, t_end, sim_tol, settings);
        if (cocircular->parsed()) return run_cocircular(angles_text, radius, settings);
        std::cerr << "cc4: no subcommand\n";
        return kExitUsage;
    } catch (const UsageError& e) {
        std::cerr << "cc4: " << e.what() << "\n";
        return kExitUsage;
    } catch (const cc4::ParseError& e) {
        std::cerr << "cc4: " << e.what() << "\n";
        return kExitIo;
    } catch (const cc4::InvalidMassError& e) {
        std::cerr << "cc4: " << e.what() << "\n";
        return kExitUsage;
    } catch (const cc4::Error& e) {
        std::cerr << "cc4: " << e.what() << "\n";
        return kExitError;
    } catch (const std::exception& e) {
        std::cerr << "cc4: " << e.what() << "\n";
        return kExitError;
    }
}
