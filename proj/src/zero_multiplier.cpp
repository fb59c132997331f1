#include "cc4/zero_multiplier.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

#include "cc4/errors.hpp"
#include "cc4/root_finding.hpp"

namespace cc4 {

double zero_side_sum(double u, double v) {
    return inv_cbrt_sq(u) + inv_cbrt_sq(v);
}

std::pair<double, double> zero_diag_map(double u, double v, double x, double y) {
    return {((x + y) * u + (x - y) * v) / (2.0 * x),
            ((x + y) * u + (y - x) * v) / (2.0 * y)};
}

double zero_diag_sum(double u, double v, double x, double y) {
    const auto [up, vp] = zero_diag_map(u, v, x, y);
    return inv_cbrt_sq(up) + inv_cbrt_sq(vp);
}

double curve_g_point(double u, double x, double y) {
    if (!(x > 0.0) || !(y > x))
        throw InvalidMassError("curve_g_point: requires 0 < x < y");
    if (!(u >= 1.0))
        throw std::invalid_argument("curve_g_point: requires u >= 1");
    if (u == 1.0) return 1.0;

    // u' = ((x+y)u - (y-x)v)/(2x) stays positive only for v below this line;
    // the constraint value blows up as v approaches it from below.
    const double v_limit = (x + y) * u / (y - x);
    auto excess = [&](double v) { return zero_diag_sum(u, v, x, y) - 2.0; };

    const double at_one = excess(1.0);
    if (at_one == 0.0) return 1.0;
    if (at_one > 0.0) {
        // Strictly below the curve this cannot happen; tolerate rounding for
        // u barely above 1.
        if (at_one < 1e-9) return 1.0;
        throw NoRootError("curve_g_point: no bracket at v = 1");
    }

    double lo = 1.0;
    double hi = std::min(2.0, 0.5 * (1.0 + v_limit));
    while (excess(hi) < 0.0) {
        lo = hi;
        const double next = std::min(2.0 * hi, hi + 0.75 * (v_limit - hi));
        if (next - hi <= 1e-15 * v_limit)
            throw NoRootError("curve_g_point: bracket expansion exhausted");
        hi = next;
    }
    return bisect(excess, lo, hi, 1e-14);
}

std::optional<ZeroMultSolution> solve_zero(double x, double y) {
    if (x == 0.0 || y == 0.0 || !std::isfinite(x) || !std::isfinite(y))
        throw InvalidMassError("solve_zero: masses must be finite and nonzero");

    // Sign and order normalization: bodies (1,2) <-> (3,4) swaps keep the
    // mass vector equal to (x,-x,y,-y) with 0 < x <= y.
    std::array<int, 4> perm{0, 1, 2, 3};
    double xn = x, yn = y;
    if (xn < 0.0) {
        std::swap(perm[0], perm[1]);
        xn = -xn;
    }
    if (yn < 0.0) {
        std::swap(perm[2], perm[3]);
        yn = -yn;
    }
    if (xn > yn) {
        perm = {perm[2], perm[3], perm[0], perm[1]};
        std::swap(xn, yn);
    }
    if (std::abs(xn - yn) <= 1e-12 * std::max(xn, yn))
        return std::nullopt;  // equal magnitudes admit no such configuration

    // Outer root of side_sum(u, v_curve(u)) = 1 along the diagonal-law curve.
    auto excess = [&](double u) {
        return zero_side_sum(u, curve_g_point(u, xn, yn)) - 1.0;
    };
    double lo = 1.0 + 1e-6;
    double hi = 2.0;
    while (excess(hi) > 0.0) {
        lo = hi;
        hi *= 2.0;
        if (hi > 1e12)
            throw NoRootError("solve_zero: bracket cap reached at u = 1e12");
    }
    const double u = bisect(excess, lo, hi, 1e-14);
    const double v = curve_g_point(u, xn, yn);
    const auto [up, vp] = zero_diag_map(u, v, xn, yn);

    ZeroMultSolution sol{
        xn, yn, u, v, up, vp,
        build_parallelogram(u, v, up, vp, xn, yn),
        perm,
        {}};
    sol.report = fit_multiplier(sol.configuration);
    return sol;
}

Configuration build_parallelogram(double u, double v, double u_prime,
                                  double v_prime, double x, double y) {
    (void)u_prime;  // implied by the parallelogram law
    const double p = inv_cbrt(u);        // |r3 - r1|
    const double q = inv_cbrt(v);        // |r4 - r1| = |r3 - r2|
    const double w = inv_cbrt(v_prime);  // |r4 - r3|
    if (!(p + q > w && p + w > q && q + w > p))
        throw FlatTriangleError("build_parallelogram: side lengths are not a triangle");

    // Parallelogram law fixes the other diagonal.
    const double d1 = std::sqrt(2.0 * p * p + 2.0 * q * q - w * w);
    const double a = (p * p - q * q) / (2.0 * d1);
    const double b2 = p * p - (a + 0.5 * d1) * (a + 0.5 * d1);
    if (!(b2 > 0.0))
        throw FlatTriangleError("build_parallelogram: flat parallelogram");
    const double b = std::sqrt(b2);

    return Configuration({x, -x, y, -y},
                         {{-0.5 * d1, 0.0}, {0.5 * d1, 0.0}, {a, b}, {-a, -b}});
}

std::pair<double, double> flat_degeneracy_products(double b) {
    const double lhs = (b * b * b + std::pow(b + 2.0, 3)) *
                       (std::pow(b + 1.0, 3) + 1.0);
    const double rhs = 2.0 * (b * b * b * std::pow(b + 2.0, 3) +
                              std::pow(b + 1.0, 3));
    return {lhs, rhs};
}

double flat_degeneracy_gap(double b) {
    return ((12.0 * b + 48.0) * b + 66.0) * b * b + 42.0 * b + 14.0;
}

}  // namespace cc4
