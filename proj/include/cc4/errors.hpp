#pragma once

#include <stdexcept>
#include <string>

namespace cc4 {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Two bodies closer than the geometric tolerance.
struct CollisionError : Error { using Error::Error; };
/// A computation lost rank (all separations vanish, collinear kernel, ...).
struct DegenerateError : Error { using Error::Error; };
/// Dipole field evaluated at (or too near) a body position.
struct SingularityError : Error { using Error::Error; };
/// Multi-start root search found no convergent seed.
struct NoConvergenceError : Error { using Error::Error; };
/// A bracketed root search exhausted its expansion range.
struct NoRootError : Error { using Error::Error; };
/// A mass argument is zero or not finite.
struct InvalidMassError : Error { using Error::Error; };
/// Requested triangle side lengths violate the strict triangle inequalities.
struct FlatTriangleError : Error { using Error::Error; };
/// Quadrilateral has no pair of parallel sides.
struct NotATrapezoidError : Error { using Error::Error; };
/// Four bodies do not lie on a common circle within tolerance.
struct NotCocircularError : Error { using Error::Error; };
/// Three points are collinear where a proper triangle is required.
struct CollinearError : Error { using Error::Error; };
/// Adaptive integrator step size underflowed.
struct StepFailureError : Error { using Error::Error; };
/// Malformed input document (JSON schema violation).
struct ParseError : Error { using Error::Error; };

}  // namespace cc4
