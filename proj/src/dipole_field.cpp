#include "cc4/dipole_field.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>

#include "cc4/errors.hpp"

namespace cc4 {

namespace {

constexpr double kEpsSing = 1e-12;
constexpr double kTwoPi = 6.283185307179586476925286766559;

// Squared distances to the two bodies at (-1, 0) and (1, 0).
struct Denoms {
    double p;  // (1+u)^2 + v^2
    double m;  // (1-u)^2 + v^2
};

Denoms denoms(Vec2 r) {
    const double a = 1.0 + r.x, b = 1.0 - r.x;
    return {a * a + r.y * r.y, b * b + r.y * r.y};
}

bool near_body(const Denoms& d) {
    return d.p < kEpsSing * kEpsSing || d.m < kEpsSing * kEpsSing;
}

Vec2 field_from(Vec2 r, const Denoms& d) {
    const double p32 = d.p * std::sqrt(d.p);
    const double m32 = d.m * std::sqrt(d.m);
    return {(1.0 + r.x) / p32 + (1.0 - r.x) / m32,
            r.y / p32 - r.y / m32};
}

std::array<double, 4> jacobian_from(Vec2 r, const Denoms& d) {
    const double p52 = d.p * d.p * std::sqrt(d.p);
    const double m52 = d.m * d.m * std::sqrt(d.m);
    const double up = 1.0 + r.x, um = 1.0 - r.x, v = r.y;
    const double duu = (v * v - 2.0 * up * up) / p52 - (v * v - 2.0 * um * um) / m52;
    const double duv = -3.0 * v * (up / p52 + um / m52);
    const double dvv = (up * up - 2.0 * v * v) / p52 + (2.0 * v * v - um * um) / m52;
    return {duu, duv, duv, dvv};
}

std::optional<Vec2> field_nothrow(Vec2 r) {
    const Denoms d = denoms(r);
    if (near_body(d)) return std::nullopt;
    return field_from(r, d);
}

// One damped Newton run for field(r) = target; nullopt if it fails to
// converge.
std::optional<Vec2> newton_root(Vec2 seed, Vec2 target) {
    const double res_tol = 1e-12 * std::max(1.0, target.norm());
    Vec2 r = seed;
    auto fr = field_nothrow(r);
    if (!fr) return std::nullopt;
    double res = (*fr - target).norm();
    for (int it = 0; it < 100; ++it) {
        if (res < res_tol) return r;
        const Denoms d = denoms(r);
        if (near_body(d)) return std::nullopt;
        const auto j = jacobian_from(r, d);
        const double det = j[0] * j[3] - j[1] * j[2];
        if (std::abs(det) < 1e-300) return std::nullopt;
        const Vec2 rhs = target - *fr;
        const Vec2 step{(j[3] * rhs.x - j[1] * rhs.y) / det,
                        (-j[2] * rhs.x + j[0] * rhs.y) / det};
        double s = 1.0;
        bool improved = false;
        for (int h = 0; h <= 40; ++h) {
            const Vec2 cand = r + s * step;
            if (auto fc = field_nothrow(cand)) {
                const double cres = (*fc - target).norm();
                if (cres < res) {
                    r = cand;
                    fr = fc;
                    res = cres;
                    improved = true;
                    break;
                }
            }
            s *= 0.5;
        }
        if (!improved) return std::nullopt;
    }
    return res < res_tol ? std::optional<Vec2>(r) : std::nullopt;
}

}  // namespace

Vec2 field_eval(Vec2 r) {
    const Denoms d = denoms(r);
    if (near_body(d))
        throw SingularityError("field_eval: point coincides with a body");
    return field_from(r, d);
}

std::array<double, 4> field_jacobian(Vec2 r) {
    const Denoms d = denoms(r);
    if (near_body(d))
        throw SingularityError("field_jacobian: point coincides with a body");
    return jacobian_from(r, d);
}

double jacobian_det(Vec2 r) {
    const Denoms d = denoms(r);
    if (near_body(d))
        throw SingularityError("jacobian_det: point coincides with a body");
    const double p52 = d.p * d.p * std::sqrt(d.p);
    const double m52 = d.m * d.m * std::sqrt(d.m);
    const double up = 1.0 + r.x, um = 1.0 - r.x, v = r.y;
    const double t1 = up * v / p52 + um * v / m52;
    const double t2 = (up * up - v * v) / p52 + (v * v - um * um) / m52;
    return -8.0 * t1 * t1 - 2.0 * t2 * t2 - 4.0 * v * v / (p52 * m52);
}

std::vector<Vec2> preimage(Vec2 target, double tol) {
    std::vector<Vec2> found;

    auto try_seed = [&](Vec2 seed) {
        if (auto r = newton_root(seed, target)) found.push_back(*r);
    };

    // Structured grid over [-5,5]^2, skipping the singular disks.
    constexpr int kGrid = 24;
    for (int i = 0; i < kGrid; ++i) {
        for (int j = 0; j < kGrid; ++j) {
            const Vec2 seed{-5.0 + 10.0 * i / (kGrid - 1),
                            -5.0 + 10.0 * j / (kGrid - 1)};
            if ((seed - Vec2{1, 0}).norm() < 0.2 ||
                (seed - Vec2{-1, 0}).norm() < 0.2)
                continue;
            try_seed(seed);
        }
    }
    // Rings around the bodies: preimages of large field values live there.
    for (const Vec2 body : {Vec2{-1, 0}, Vec2{1, 0}})
        for (const double rad : {0.01, 0.03, 0.1, 0.3})
            for (int k = 0; k < 12; ++k) {
                const double a = kTwoPi * k / 12;
                try_seed(body + Vec2{rad * std::cos(a), rad * std::sin(a)});
            }

    // The field is even, so the antipode of every root is a root; polish it
    // through the same iteration to machine accuracy.
    const std::size_t direct = found.size();
    for (std::size_t i = 0; i < direct; ++i)
        try_seed(-found[i]);

    std::sort(found.begin(), found.end(), [](Vec2 a, Vec2 b) {
        return a.x != b.x ? a.x < b.x : a.y < b.y;
    });
    std::vector<Vec2> roots;
    for (const Vec2& r : found) {
        bool fresh = true;
        for (const Vec2& kept : roots)
            if ((r - kept).norm() <= tol) {
                fresh = false;
                break;
            }
        if (fresh) roots.push_back(r);
    }
    if (roots.empty())
        throw NoConvergenceError("preimage: no Newton seed converged");
    return roots;
}

std::vector<FieldSample> sample_field_grid(double umin, double umax,
                                           double vmin, double vmax,
                                           int steps) {
    if (steps < 2) throw std::invalid_argument("sample_field_grid: steps >= 2");
    std::vector<FieldSample> out;
    out.reserve(static_cast<std::size_t>(steps) * steps);
    const double nan = std::numeric_limits<double>::quiet_NaN();
    for (int i = 0; i < steps; ++i) {
        for (int j = 0; j < steps; ++j) {
            FieldSample s;
            s.point = {umin + (umax - umin) * i / (steps - 1),
                       vmin + (vmax - vmin) * j / (steps - 1)};
            const Denoms d = denoms(s.point);
            if (near_body(d)) {
                s.field = {nan, nan};
                s.jacobian_det = nan;
            } else {
                s.field = field_from(s.point, d);
                s.jacobian_det = jacobian_det(s.point);
            }
            out.push_back(s);
        }
    }
    return out;
}

}  // namespace cc4
