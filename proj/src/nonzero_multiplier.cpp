#include "cc4/nonzero_multiplier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "cc4/errors.hpp"
#include "cc4/root_finding.hpp"

namespace cc4 {

const char* to_string(BandClass c) {
    switch (c) {
        case BandClass::Balanced: return "balanced";
        case BandClass::SemiBalanced: return "semi_balanced";
        case BandClass::Unbalanced: return "unbalanced";
    }
    return "?";
}

double inv_cube_sum(double a, double b) {
    return inv_pow32(a) + inv_pow32(b);
}

std::pair<double, double> phi_map(double u, double v, double x, double y) {
    if (!(x > 0.0) || !(y > 0.0))
        throw InvalidMassError("phi_map: requires x, y > 0");
    return {(x * u + y * v) / (x + y) - x * y,
            (y * u + x * v) / (x + y) - x * y};
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// inv_cube_sum extended by continuity: +inf once a squared distance
// reaches zero.
double inv_cube_sum_ext(std::pair<double, double> ab) {
    if (ab.first <= 0.0 || ab.second <= 0.0) return kInf;
    return inv_cube_sum(ab.first, ab.second);
}

struct ContourProblem {
    double x, y;
    double level;  // f(x^2, y^2) = x^-3 + y^-3
    double u_min;  // v(u) -> inf as u -> u_min+

    // Second coordinate of the contour inv_cube_sum = level.
    double v_on_contour(double u) const {
        const double rest = level - inv_pow32(u);  // v^{-3/2}
        return inv_cbrt_sq(rest);
    }

    // Signed mismatch of the mapped point's distance sum along the contour.
    double mapped_excess(double u) const {
        const double v = v_on_contour(u);
        return inv_cube_sum_ext(phi_map(u, v, x, y)) - level;
    }
};

ContourProblem make_problem(double x, double y) {
    ContourProblem p;
    p.x = x;
    p.y = y;
    p.level = 1.0 / (x * x * x) + 1.0 / (y * y * y);
    p.u_min = inv_cbrt_sq(p.level);  // level^{-2/3}
    return p;
}

}  // namespace

Configuration build_trapezoid(double u, double v, double x, double y) {
    if (!(x > 0.0) || !(y > 0.0))
        throw InvalidMassError("build_trapezoid: requires x, y > 0");
    if (!(u > 0.0) || !(v > 0.0))
        throw std::invalid_argument("build_trapezoid: u, v must be positive");
    const double su = std::sqrt(u), sv = std::sqrt(v);
    if (!(su + sv > x + y && su + x + y > sv && sv + x + y > su))
        throw FlatTriangleError("build_trapezoid: (sqrt(u), sqrt(v), x+y) is not a triangle");

    // Diagonals meet at the origin and are split in ratio x : y.
    const double da = x * su / (x + y);  // |r3|
    const double db = x * sv / (x + y);  // |r4|
    const double cth = (da * da + db * db - x * x) / (2.0 * da * db);
    if (!(std::abs(cth) < 1.0))
        throw FlatTriangleError("build_trapezoid: flat diagonal triangle");
    const double sth = std::sqrt(1.0 - cth * cth);

    const Vec2 r3{da, 0.0};
    const Vec2 r4{db * cth, db * sth};
    const Vec2 r1 = -(y / x) * r3;
    const Vec2 r2 = -(y / x) * r4;
    return Configuration({x, -x, y, -y}, {r1, r2, r3, r4});
}

BandClass classify_bands(const Configuration& config) {
    if (config.size() != 4)
        throw std::invalid_argument("classify_bands: four bodies required");
    const Vec2 s12 = config.position(1) - config.position(0);
    const Vec2 s34 = config.position(3) - config.position(2);
    const Vec2 s23 = config.position(2) - config.position(1);
    const Vec2 s41 = config.position(0) - config.position(3);
    const double tol_area = kEpsGeom * config.scale() * config.scale();
    const bool par_a = std::abs(s12.cross(s34)) < tol_area;
    const bool par_b = std::abs(s23.cross(s41)) < tol_area;
    if (!par_a && !par_b)
        throw NotATrapezoidError("classify_bands: no parallel side pair");

    // Parallelograms are classified on the (1,2)/(3,4) bases.
    Vec2 a1 = config.position(0), a2 = config.position(1);
    Vec2 b1 = config.position(2), b2 = config.position(3);
    if (!par_a) {
        a1 = config.position(1);
        a2 = config.position(2);
        b1 = config.position(3);
        b2 = config.position(0);
    }

    Vec2 dir = a2 - a1;
    if ((b2 - b1).norm() > dir.norm()) dir = b2 - b1;
    dir = dir / dir.norm();

    const double alo = std::min(a1.dot(dir), a2.dot(dir));
    const double ahi = std::max(a1.dot(dir), a2.dot(dir));
    const double blo = std::min(b1.dot(dir), b2.dot(dir));
    const double bhi = std::max(b1.dot(dir), b2.dot(dir));
    const double tol = kEpsGeom * config.scale();

    const bool a_in_b = alo >= blo - tol && ahi <= bhi + tol;
    const bool b_in_a = blo >= alo - tol && bhi <= ahi + tol;
    if (a_in_b || b_in_a) return BandClass::Balanced;
    if (ahi < blo - tol || bhi < alo - tol) return BandClass::Unbalanced;
    return BandClass::SemiBalanced;
}

std::pair<TrapezoidSolution, TrapezoidSolution> solve_nonzero(double x, double y) {
    if (x == 0.0 || y == 0.0 || !std::isfinite(x) || !std::isfinite(y))
        throw InvalidMassError("solve_nonzero: masses must be finite and nonzero");

    // Sign normalization: a negative x swaps bodies 1 and 2, a negative y
    // swaps bodies 3 and 4.
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

    const ContourProblem prob = make_problem(xn, yn);

    // Logarithmic sweep of the contour; the mapped excess is negative at both
    // ends and crosses zero exactly twice.
    const int samples = 800;
    const double lo_u = prob.u_min * (1.0 + 1e-8);
    const double hi_u = 1e6 * (xn + yn) * (xn + yn);
    const double log_span = std::log(hi_u / lo_u);
    std::vector<double> roots;
    double prev_u = lo_u;
    double prev_f = prob.mapped_excess(prev_u);
    for (int i = 1; i < samples; ++i) {
        const double cur_u = lo_u * std::exp(log_span * i / (samples - 1));
        const double cur_f = prob.mapped_excess(cur_u);
        if (cur_f == 0.0)
            roots.push_back(cur_u);
        else if (sign_of(prev_f) * sign_of(cur_f) < 0)
            roots.push_back(bisect([&](double t) { return prob.mapped_excess(t); },
                                   prev_u, cur_u, 1e-14));
        prev_u = cur_u;
        prev_f = cur_f;
    }
    if (roots.size() == 1) {
        // Crossings come in component-swap pairs; at extreme mass ratios one
        // branch sits within the 1e-8 margin above u_min and escapes the
        // sweep. Its partner is the swap image of the crossing we did find.
        const double partner = prob.v_on_contour(roots[0]);
        if (std::isfinite(partner) && partner > 0.0 &&
            std::abs(partner - roots[0]) > 1e-9 * roots[0]) {
            roots.push_back(partner);
            std::sort(roots.begin(), roots.end());
        }
    }
    if (roots.size() != 2)
        throw NoRootError("solve_nonzero: expected exactly two contour crossings, found " +
                          std::to_string(roots.size()));

    auto realize = [&](double u) {
        const double v = prob.v_on_contour(u);
        const auto mapped = phi_map(u, v, xn, yn);
        TrapezoidSolution s{xn, yn, u, v, mapped.first, mapped.second,
                            build_trapezoid(u, v, xn, yn), perm,
                            BandClass::SemiBalanced, {}};
        s.band_class = classify_bands(s.configuration);
        s.report = fit_multiplier(s.configuration);
        return s;
    };
    // u >= v branch first.
    return {realize(roots[1]), realize(roots[0])};
}

}  // namespace cc4
