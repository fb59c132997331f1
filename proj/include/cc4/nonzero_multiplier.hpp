#pragma once

#include <array>
#include <utility>

#include "cc4/configuration.hpp"
#include "cc4/core_dynamics.hpp"

namespace cc4 {

/// Relation between the two strips swept by translating each base of a
/// trapezoid perpendicular to itself.
enum class BandClass { Balanced, SemiBalanced, Unbalanced };

const char* to_string(BandClass c);

/// One of the two non-vanishing-multiplier trapezoids for masses x, -x, y, -y.
///
/// u = |r3 - r1|^2 and v = |r4 - r2|^2 are the squared diagonals in the frame
/// normalized by |r4 - r3| = x; (r23_sq, r14_sq) = phi_map(u, v). Bodies are
/// in normalized order (x, -x, y, -y) with x, y > 0; caller_body maps back to
/// the caller's original indices.
struct TrapezoidSolution {
    double x = 0.0;
    double y = 0.0;
    double u = 0.0;
    double v = 0.0;
    double r23_sq = 0.0;
    double r14_sq = 0.0;
    Configuration configuration;
    std::array<int, 4> caller_body{0, 1, 2, 3};
    BandClass band_class = BandClass::SemiBalanced;
    CentralityReport report;
};

/// a^{-3/2} + b^{-3/2}; the mutual-distance sum driving the trapezoid system.
double inv_cube_sum(double a, double b);

/// Affine map taking squared diagonals (u, v) to the other squared distance
/// pair (|r3 - r2|^2, |r4 - r1|^2): a contraction toward the first bisector
/// followed by translation by -xy (1, 1).
std::pair<double, double> phi_map(double u, double v, double x, double y);

/// Solves for the exactly two trapezoid solutions, returned as the (u >= v)
/// branch first; the second is the component swap of the first. Masses are
/// sign-normalized to x, y > 0. Both solutions are realized, classified and
/// certified.
std::pair<TrapezoidSolution, TrapezoidSolution> solve_nonzero(double x, double y);

/// Realizes squared diagonals (u, v) as the trapezoid with |r4 - r3| = x.
/// Canonical pose: diagonal intersection at the origin, r3 on the +x axis,
/// r4 in the upper half plane; masses (x, -x, y, -y).
Configuration build_trapezoid(double u, double v, double x, double y);

/// Projects both bases of a trapezoid (or parallelogram, using the (1,2) /
/// (3,4) pair) onto the base direction and classifies the band overlap.
BandClass classify_bands(const Configuration& config);

}  // namespace cc4
