#pragma once

#include <array>

#include "cc4/configuration.hpp"
#include "cc4/geometry.hpp"

namespace cc4 {

struct CircleFit {
    Vec2 center;
    double radius = 0.0;
    double max_deviation = 0.0;  // largest | |r_i - center| - radius |
};

/// Certificate that a co-circular quadruple violates the mutual-distance
/// identity required of vanishing-mass central configurations.
struct GapReport {
    /// Original body index (1-based) holding each normalized label.
    std::array<int, 4> ordering{1, 2, 3, 4};
    /// Both normalizing arc conditions hold after the recorded swaps.
    bool arc_normalized = false;
    /// (1/r21^3 + 1/r43^3) - (1/r31^3 + 1/r42^3); strictly positive.
    double gap = 0.0;
};

/// Exact circumcenter and radius via perpendicular bisector intersection.
CircleFit circumcircle(Vec2 p1, Vec2 p2, Vec2 p3);

/// Orders four co-circular bodies by angle, applies the two label swaps that
/// put both defining arcs at or below pi, and returns the strictly positive
/// distance-sum gap. tol_circle is relative to the fitted radius.
GapReport cocircular_gap(const Configuration& config, double tol_circle = 1e-9);

}  // namespace cc4
