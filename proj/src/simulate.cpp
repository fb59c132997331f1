#include "cc4/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "cc4/core_dynamics.hpp"
#include "cc4/errors.hpp"

namespace cc4 {

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                 a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                 b5 = -2187.0 / 6784, b6 = 11.0 / 84;
// 5th-order minus embedded 4th-order weights.
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

using State = std::vector<double>;  // [x0,y0,...,vx0,vy0,...]

struct NBodyOde {
    const std::vector<double>& masses;
    std::size_t n;

    void eval(const State& s, State& ds) const {
        for (std::size_t i = 0; i < 2 * n; ++i) ds[i] = s[2 * n + i];
        for (std::size_t i = 0; i < 2 * n; ++i) ds[2 * n + i] = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                const double dx = s[2 * j] - s[2 * i];
                const double dy = s[2 * j + 1] - s[2 * i + 1];
                const double r2 = dx * dx + dy * dy;
                const double w = 1.0 / (r2 * std::sqrt(r2));
                ds[2 * n + 2 * i] += masses[j] * dx * w;
                ds[2 * n + 2 * i + 1] += masses[j] * dy * w;
                ds[2 * n + 2 * j] -= masses[i] * dx * w;
                ds[2 * n + 2 * j + 1] -= masses[i] * dy * w;
            }
        }
    }
};

double pair_distance(const State& s, std::size_t i, std::size_t j) {
    const double dx = s[2 * j] - s[2 * i];
    const double dy = s[2 * j + 1] - s[2 * i + 1];
    return std::hypot(dx, dy);
}

}  // namespace

Trajectory integrate(const Configuration& config, double t_end, double tol) {
    if (t_end == 0.0 || !std::isfinite(t_end))
        throw std::invalid_argument("integrate: t_end must be nonzero and finite");
    if (!(tol > 0.0) || tol >= 1e-2)
        throw std::invalid_argument("integrate: tol must be in (0, 1e-2)");

    const std::size_t n = config.size();
    const NBodyOde ode{config.masses(), n};
    const double dir = t_end > 0.0 ? 1.0 : -1.0;

    State s(4 * n, 0.0);  // zero initial velocities
    for (std::size_t i = 0; i < n; ++i) {
        s[2 * i] = config.position(i).x;
        s[2 * i + 1] = config.position(i).y;
    }
    std::vector<double> initial_dist(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            initial_dist[i * n + j] = pair_distance(s, i, j);

    Trajectory traj{config, {}, {}, {}, {}, false};
    auto record = [&](double t, const State& st) {
        traj.times.push_back(t);
        std::vector<Vec2> pos(n), vel(n);
        double kinetic = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            pos[i] = {st[2 * i], st[2 * i + 1]};
            vel[i] = {st[2 * n + 2 * i], st[2 * n + 2 * i + 1]};
            kinetic += 0.5 * config.mass(i) * vel[i].norm2();
        }
        double u = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                u += config.mass(i) * config.mass(j) / pair_distance(st, i, j);
        traj.positions.push_back(std::move(pos));
        traj.velocities.push_back(std::move(vel));
        traj.energy.push_back(kinetic - u);
    };
    record(0.0, s);

    // Initial step from the acceleration scale, clipped to the span.
    State k1(4 * n), k2(4 * n), k3(4 * n), k4(4 * n), k5(4 * n), k6(4 * n),
        k7(4 * n), tmp(4 * n), snew(4 * n);
    ode.eval(s, k1);
    double acc = 0.0;
    for (std::size_t i = 0; i < 2 * n; ++i)
        acc = std::max(acc, std::abs(k1[2 * n + i]));
    const double span = std::abs(t_end);
    double h = dir * std::min(span, acc > 0.0
                                        ? 0.01 * std::sqrt(config.scale() / acc)
                                        : span);

    double t = 0.0;
    // k1 always holds the derivative at the current (t, s): filled above at
    // t = 0 and recycled from stage 7 after every accepted step (FSAL).
    while (dir * (t_end - t) > 0.0) {
        bool last = false;
        if (std::abs(h) >= dir * (t_end - t)) {
            h = t_end - t;
            last = true;
        } else if (std::abs(h) < 1e-14 * std::max(1.0, std::abs(t))) {
            throw StepFailureError("integrate: step size underflow");
        }

        for (std::size_t i = 0; i < 4 * n; ++i)
            tmp[i] = s[i] + h * a21 * k1[i];
        ode.eval(tmp, k2);
        for (std::size_t i = 0; i < 4 * n; ++i)
            tmp[i] = s[i] + h * (a31 * k1[i] + a32 * k2[i]);
        ode.eval(tmp, k3);
        for (std::size_t i = 0; i < 4 * n; ++i)
            tmp[i] = s[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
        ode.eval(tmp, k4);
        for (std::size_t i = 0; i < 4 * n; ++i)
            tmp[i] = s[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] +
                                 a54 * k4[i]);
        ode.eval(tmp, k5);
        for (std::size_t i = 0; i < 4 * n; ++i)
            tmp[i] = s[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] +
                                 a64 * k4[i] + a65 * k5[i]);
        ode.eval(tmp, k6);
        // 5th-order solution; stage 7 is the derivative there (FSAL).
        for (std::size_t i = 0; i < 4 * n; ++i)
            snew[i] = s[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] +
                                  b5 * k5[i] + b6 * k6[i]);
        ode.eval(snew, k7);

        double err = 0.0;
        for (std::size_t i = 0; i < 4 * n; ++i) {
            const double e = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] +
                                  e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
            const double sc = tol + tol * std::max(std::abs(s[i]), std::abs(snew[i]));
            err += (e / sc) * (e / sc);
        }
        err = std::sqrt(err / (4 * n));

        if (err <= 1.0) {
            t = last ? t_end : t + h;
            s.swap(snew);
            k1 = k7;
            record(t, s);
            bool close = false;
            for (std::size_t i = 0; i < n && !close; ++i)
                for (std::size_t j = i + 1; j < n && !close; ++j)
                    if (pair_distance(s, i, j) < 1e-3 * initial_dist[i * n + j])
                        close = true;
            if (close) {
                traj.close_approach = true;
                break;
            }
            const double grow = 0.9 * std::pow(std::max(err, 1e-10), -0.2);
            h *= std::clamp(grow, 0.2, 5.0);
        } else {
            const double shrink = 0.9 * std::pow(err, -0.2);
            h *= std::clamp(shrink, 0.1, 0.9);
        }
    }
    return traj;
}

HomotheticFit homothetic_fit(const Trajectory& traj) {
    const std::size_t n = traj.initial.size();
    const std::size_t steps = traj.times.size();
    if (steps == 0) throw std::invalid_argument("homothetic_fit: empty trajectory");
    const auto& p0 = traj.initial.positions();
    const double scale = traj.initial.scale();
    const double d0 = (p0[1] - p0[0]).norm();

    HomotheticFit fit;
    fit.alpha.resize(steps);
    fit.shape_deviation.resize(steps);
    for (std::size_t k = 0; k < steps; ++k) {
        const auto& p = traj.positions[k];
        const double alpha = (p[1] - p[0]).norm() / d0;
        fit.alpha[k] = alpha;
        double dev = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                dev = std::max(dev, ((p[j] - p[i]) - alpha * (p0[j] - p0[i])).norm());
        fit.shape_deviation[k] = dev / scale;
        fit.max_shape_deviation = std::max(fit.max_shape_deviation, dev / scale);
    }

    // Fixed center only makes sense for a nonzero multiplier (otherwise the
    // drift is rigid and the normal system is singular).
    const auto g0 = accelerations(traj.initial);
    const auto [xi, residual] = detail::fit_xi(p0, g0);
    (void)residual;
    if (std::abs(xi) > 1e-8) {
        Vec2 num;
        double den = 0.0;
        for (std::size_t k = 0; k < steps; ++k) {
            const double w = 1.0 - fit.alpha[k];
            for (std::size_t i = 0; i < n; ++i)
                num += w * (traj.positions[k][i] - fit.alpha[k] * p0[i]);
            den += n * w * w;
        }
        if (den > 0.0) {
            const Vec2 center = num / den;
            double res = 0.0;
            for (std::size_t k = 0; k < steps; ++k)
                for (std::size_t i = 0; i < n; ++i)
                    res = std::max(res, (traj.positions[k][i] - center -
                                         fit.alpha[k] * (p0[i] - center)).norm());
            fit.fixed_center = center;
            fit.fixed_center_residual = res / scale;
        }
    }
    return fit;
}

}  // namespace cc4
