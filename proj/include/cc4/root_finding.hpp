#pragma once

#include <cmath>
#include <cstdlib>

#include "cc4/errors.hpp"

namespace cc4 {

inline int sign_of(double v) { return (v > 0.0) - (v < 0.0); }

/// Bisection on a bracketing interval [lo, hi] (f changes sign, infinities
/// allowed) down to relative width rel_tol. Returns the midpoint.
template <class F>
double bisect(F&& f, double lo, double hi, double rel_tol = 1e-14) {
    double flo = f(lo);
    if (flo == 0.0) return lo;
    double fhi = f(hi);
    if (fhi == 0.0) return hi;
    if (sign_of(flo) == sign_of(fhi))
        throw NoRootError("bisect: endpoints do not bracket a sign change");
    for (int it = 0; it < 2000; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (hi - lo <= rel_tol * std::max({std::abs(lo), std::abs(hi), 1e-300}))
            return mid;
        const double fm = f(mid);
        if (fm == 0.0) return mid;
        if (sign_of(fm) == sign_of(flo)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

// z^{-1/3}, z^{-2/3}, z^{-3/2} for z > 0
inline double inv_cbrt(double z) { return 1.0 / std::cbrt(z); }
inline double inv_cbrt_sq(double z) {
    const double c = std::cbrt(z);
    return 1.0 / (c * c);
}
inline double inv_pow32(double z) { return 1.0 / (z * std::sqrt(z)); }

}  // namespace cc4
