#pragma once

#include <array>
#include <vector>

#include "cc4/geometry.hpp"

namespace cc4 {

/// One evaluation of the two-body field in the normalized frame (masses -1
/// and +1 at (-1,0) and (1,0)).
struct FieldSample {
    Vec2 point;
    Vec2 field;
    double jacobian_det = 0.0;
};

/// Field of the unit dipole: -(r1 - r)/|r1 - r|^3 + (r2 - r)/|r2 - r|^3 with
/// r1 = (-1,0), r2 = (1,0). Even in r. Throws SingularityError within 1e-12
/// of a body.
Vec2 field_eval(Vec2 r);

/// Jacobian matrix of field_eval as {du/du, du/dv, dv/du, dv/dv} (symmetric).
std::array<double, 4> field_jacobian(Vec2 r);

/// Closed-form determinant of the field Jacobian; non-positive everywhere,
/// zero only at the origin.
double jacobian_det(Vec2 r);

/// All solutions of field_eval(r) = target, found by damped Newton iteration
/// from a structured seed grid plus the antipode of every convergent root.
/// Roots closer than tol are merged; the result is sorted lexicographically.
/// For a generic attained target this is exactly {rhat, -rhat}.
std::vector<Vec2> preimage(Vec2 target, double tol = 1e-8);

/// Rectangular sampling of the field and its Jacobian determinant (CLI
/// backend). Samples inside the singular disks carry NaN entries.
std::vector<FieldSample> sample_field_grid(double umin, double umax,
                                           double vmin, double vmax,
                                           int steps);

}  // namespace cc4
