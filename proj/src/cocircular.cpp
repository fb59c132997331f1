#include "cc4/cocircular.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "cc4/errors.hpp"

namespace cc4 {

namespace {

constexpr double kPi = 3.141592653589793238462643383279;
constexpr double kTwoPi = 2.0 * kPi;

double ccw_arc(double from, double to) {
    double a = std::fmod(to - from, kTwoPi);
    if (a < 0.0) a += kTwoPi;
    return a;
}

}  // namespace

CircleFit circumcircle(Vec2 p1, Vec2 p2, Vec2 p3) {
    const Vec2 b = p2 - p1;
    const Vec2 c = p3 - p1;
    const double scale = std::max({b.norm(), c.norm(), (c - b).norm()});
    const double twice_area = b.cross(c);
    if (std::abs(twice_area) < 2.0 * kEpsGeom * scale * scale)
        throw CollinearError("circumcircle: points are collinear");
    const double d = 2.0 * twice_area;
    const Vec2 u{(c.y * b.norm2() - b.y * c.norm2()) / d,
                 (b.x * c.norm2() - c.x * b.norm2()) / d};
    CircleFit fit;
    fit.center = p1 + u;
    fit.radius = u.norm();
    for (const Vec2& p : {p1, p2, p3})
        fit.max_deviation = std::max(
            fit.max_deviation, std::abs((p - fit.center).norm() - fit.radius));
    return fit;
}

GapReport cocircular_gap(const Configuration& config, double tol_circle) {
    if (config.size() != 4)
        throw std::invalid_argument("cocircular_gap: four bodies required");
    const CircleFit fit =
        circumcircle(config.position(0), config.position(1), config.position(2));
    const double dev4 =
        std::abs((config.position(3) - fit.center).norm() - fit.radius);
    if (dev4 > tol_circle * fit.radius)
        throw NotCocircularError(
            "cocircular_gap: fourth body deviates from the circumcircle by " +
            std::to_string(dev4));

    double angle[4];
    for (int i = 0; i < 4; ++i) {
        const Vec2 d = config.position(i) - fit.center;
        angle[i] = std::atan2(d.y, d.x);
    }

    // lab[k] = original body index holding normalized label k+1; start from
    // the counterclockwise angular order.
    std::array<int, 4> lab{0, 1, 2, 3};
    std::sort(lab.begin(), lab.end(),
              [&](int a, int b) { return angle[a] < angle[b]; });
    for (int k = 0; k < 4; ++k) {
        const double gap_angle =
            ccw_arc(angle[lab[k]], angle[lab[(k + 1) % 4]]);
        if (gap_angle < 1e-12 || gap_angle > kTwoPi - 1e-12)
            throw CollisionError("cocircular_gap: coincident angular positions");
    }

    // Non-oriented arc with the given ends that contains `via`.
    auto arc_through = [&](int end_a, int end_b, int via) {
        const double full = ccw_arc(angle[lab[end_a]], angle[lab[end_b]]);
        const double part = ccw_arc(angle[lab[end_a]], angle[lab[via]]);
        return part < full ? full : kTwoPi - full;
    };

    if (arc_through(0, 2, 1) > kPi) std::swap(lab[1], lab[3]);
    if (arc_through(3, 1, 2) > kPi) std::swap(lab[0], lab[2]);

    auto inv_cube = [&](int a, int b) {
        const double r =
            (config.position(lab[b]) - config.position(lab[a])).norm();
        return 1.0 / (r * r * r);
    };

    GapReport report;
    for (int k = 0; k < 4; ++k) report.ordering[k] = lab[k] + 1;
    report.arc_normalized = true;
    report.gap = (inv_cube(0, 1) + inv_cube(2, 3)) -
                 (inv_cube(0, 2) + inv_cube(1, 3));
    return report;
}

}  // namespace cc4
