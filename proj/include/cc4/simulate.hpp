#pragma once

#include <optional>
#include <vector>

#include "cc4/configuration.hpp"
#include "cc4/geometry.hpp"

namespace cc4 {

/// Output of the adaptive integration of Newton's equations from rest.
struct Trajectory {
    Configuration initial;
    std::vector<double> times;                    // strictly monotone
    std::vector<std::vector<Vec2>> positions;     // one entry per time
    std::vector<std::vector<Vec2>> velocities;
    std::vector<double> energy;                   // kinetic - potential
    bool close_approach = false;                  // stopped early
};

/// Homothety diagnostics of a zero-initial-velocity trajectory.
struct HomotheticFit {
    std::vector<double> alpha;            // |r2 - r1|(t) / |r2 - r1|(0)
    std::vector<double> shape_deviation;  // per-time, relative to scale
    double max_shape_deviation = 0.0;
    std::optional<Vec2> fixed_center;     // fitted when the start is central
    std::optional<double> fixed_center_residual;
};

/// Integrates the 2N-dimensional second-order system with an embedded
/// adaptive Runge-Kutta 5(4) pair from zero initial velocities. Every
/// accepted step is recorded. Stops early (close_approach) if any pairwise
/// distance falls below 1e-3 of its initial value. t_end may be negative.
Trajectory integrate(const Configuration& config, double t_end,
                     double tol = 1e-10);

/// alpha(t), the worst relative shape deviation from a homothety, and (when
/// the initial configuration is central with |xi| > 1e-8) the least-squares
/// fixed center with its residual.
HomotheticFit homothetic_fit(const Trajectory& traj);

}  // namespace cc4
