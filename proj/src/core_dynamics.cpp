#include "cc4/core_dynamics.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "cc4/errors.hpp"
#include "cc4/root_finding.hpp"

namespace cc4 {

std::vector<Vec2> accelerations(const Configuration& config) {
    const std::size_t n = config.size();
    const double collide = kEpsGeom * config.scale();
    std::vector<Vec2> g(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const Vec2 d = config.position(j) - config.position(i);
            const double r = d.norm();
            if (r <= collide)
                throw CollisionError("accelerations: bodies " + std::to_string(i) +
                                     " and " + std::to_string(j) + " collide");
            const Vec2 w = d / (r * r * r);
            g[i] += config.mass(j) * w;
            g[j] -= config.mass(i) * w;
        }
    }
    return g;
}

double potential(const Configuration& config) {
    const std::size_t n = config.size();
    const double collide = kEpsGeom * config.scale();
    double u = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double r = (config.position(j) - config.position(i)).norm();
            if (r <= collide)
                throw CollisionError("potential: bodies collide");
            u += config.mass(i) * config.mass(j) / r;
        }
    }
    return u;
}

namespace detail {

std::pair<double, double> fit_xi(const std::vector<Vec2>& positions,
                                 const std::vector<Vec2>& accels) {
    const std::size_t n = positions.size();
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const Vec2 dr = positions[j] - positions[i];
            const Vec2 dg = accels[j] - accels[i];
            num += dg.dot(dr);
            den += dr.norm2();
        }
    }
    if (den == 0.0)
        throw DegenerateError("fit_xi: all pairwise separations vanish");
    const double xi = num / den;
    double res = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            res = std::max(res, (accels[j] - accels[i] -
                                 xi * (positions[j] - positions[i])).norm());
    return {xi, res};
}

}  // namespace detail

std::array<double, 3> laura_andoyer_triple(const Configuration& config) {
    if (config.size() != 4)
        throw std::invalid_argument("laura_andoyer_triple: four bodies required");
    auto inv_cube = [&config](int i, int j) {
        const double r = (config.position(j) - config.position(i)).norm();
        return 1.0 / (r * r * r);
    };
    return {inv_cube(0, 1) + inv_cube(2, 3),
            inv_cube(0, 2) + inv_cube(1, 3),
            inv_cube(1, 2) + inv_cube(0, 3)};
}

Vec2 inertia_vector(const Configuration& config, Vec2 a) {
    Vec2 l;
    for (std::size_t i = 0; i < config.size(); ++i)
        l += config.mass(i) * (config.position(i) - a);
    return l;
}

double moment_of_inertia(const Configuration& config, Vec2 a) {
    double s = 0.0;
    for (std::size_t i = 0; i < config.size(); ++i)
        s += config.mass(i) * (config.position(i) - a).norm2();
    return s;
}

CentralityReport fit_multiplier(const Configuration& config) {
    if (config.size() < 3)
        throw std::invalid_argument("fit_multiplier: at least three bodies required");
    const auto g = accelerations(config);
    const auto [xi, res] = detail::fit_xi(config.positions(), g);

    CentralityReport report;
    report.xi_fit = xi;
    report.max_pair_residual = res;
    report.inertia_vector = inertia_vector(config, Vec2{0.0, 0.0});
    report.moment_of_inertia_at_origin = moment_of_inertia(config, Vec2{0.0, 0.0});
    if (config.size() == 4) {
        report.laura_andoyer_triple = laura_andoyer_triple(config);
        const double tol = kEpsGeom * config.scale() * config.scale();
        for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j)
                for (int k = j + 1; k < 4; ++k) {
                    const Vec2 a = config.position(j) - config.position(i);
                    const Vec2 b = config.position(k) - config.position(i);
                    if (std::abs(a.cross(b)) < tol)
                        report.collinear_triples.push_back({i, j, k});
                }
    }
    return report;
}

AffineWeights affine_weights(const Configuration& config) {
    if (config.size() != 4)
        throw std::invalid_argument("affine_weights: four bodies required");
    // Kernel vector of the 3x4 system as signed 3x3 minors: each entry is
    // twice the signed area of the triangle formed by the other three bodies.
    std::array<double, 4> delta{};
    for (int i = 0; i < 4; ++i) {
        int c[3], k = 0;
        for (int j = 0; j < 4; ++j)
            if (j != i) c[k++] = j;
        const Vec2 a = config.position(c[1]) - config.position(c[0]);
        const Vec2 b = config.position(c[2]) - config.position(c[0]);
        delta[i] = (i % 2 == 0 ? 1.0 : -1.0) * a.cross(b);
    }
    double max_mag = 0.0;
    for (double d : delta) max_mag = std::max(max_mag, std::abs(d));
    const double tol = kEpsGeom * config.scale() * config.scale();
    if (max_mag < tol)
        throw DegenerateError("affine_weights: configuration is collinear");
    // Ties within rounding pick the lowest index, so exactly symmetric
    // configurations normalize reproducibly.
    int imax = 0;
    while (std::abs(delta[imax]) < max_mag * (1.0 - 1e-12)) ++imax;
    const double pivot = delta[imax];
    for (double& d : delta) d /= pivot;
    return AffineWeights{delta};
}

}  // namespace cc4
