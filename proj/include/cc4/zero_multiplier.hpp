#pragma once

#include <array>
#include <optional>
#include <utility>

#include "cc4/configuration.hpp"
#include "cc4/core_dynamics.hpp"

namespace cc4 {

/// The vanishing-multiplier parallelogram for masses x, -x, y, -y.
///
/// (u, v) are the inverse-cube side lengths 1/r31^3 and 1/r32^3 in the
/// similarity frame with r31^2 + r32^2 = 1; (u', v') = 1/r21^3 and 1/r43^3
/// are the inverse-cube diagonals. Bodies are in normalized order
/// (x, -x, y, -y) with 0 < x < y; caller_body maps each body back to the
/// caller's original index.
struct ZeroMultSolution {
    double x = 0.0;
    double y = 0.0;
    double u = 0.0;
    double v = 0.0;
    double u_prime = 0.0;
    double v_prime = 0.0;
    Configuration configuration;
    std::array<int, 4> caller_body{0, 1, 2, 3};
    CentralityReport report;
};

/// r31^2 + r32^2 expressed in (u, v) = inverse-cube side lengths.
double zero_side_sum(double u, double v);

/// The linear map taking inverse-cube sides (u, v) to inverse-cube
/// diagonals (u', v').
std::pair<double, double> zero_diag_map(double u, double v, double x, double y);

/// r21^2 + r43^2 expressed in (u, v); the parallelogram-law constraint is
/// zero_diag_sum = 2.
double zero_diag_sum(double u, double v, double x, double y);

/// The unique v >= 1 with zero_diag_sum(u, v) = 2, for 0 < x < y and u >= 1.
/// Returns 1 at u = 1. Found by bracket expansion and bisection in v.
double curve_g_point(double u, double x, double y);

/// Solves for the unique vanishing-multiplier parallelogram. Masses are sign-
/// and order-normalized first (0 < x < y); returns nullopt when |x| = |y|
/// (no such configuration exists). The result is certified with
/// fit_multiplier.
std::optional<ZeroMultSolution> solve_zero(double x, double y);

/// Realizes (u, v, v') as the triangle (r1, r3, r4) and completes the
/// parallelogram, diagonals [r1,r2] and [r3,r4] sharing their midpoint.
/// Canonical pose: midpoint at the origin, r2 - r1 along +x, r3 in the upper
/// half plane. Masses (x, -x, y, -y). u_prime is implied by the
/// parallelogram law and accepted for interface symmetry only.
Configuration build_parallelogram(double u, double v, double u_prime,
                                  double v_prime, double x, double y);

/// LHS - RHS of the flat-parallelogram degeneracy comparison, in expanded
/// form 12 b^4 + 48 b^3 + 66 b^2 + 42 b + 14; strictly positive for b > 0,
/// so the solution triangle can never collapse.
double flat_degeneracy_gap(double b);

/// The two product-form sides of the same comparison (test hook for the
/// expanded identity).
std::pair<double, double> flat_degeneracy_products(double b);

}  // namespace cc4
