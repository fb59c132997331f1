#include <doctest.h>

#include <cmath>
#include <vector>

#include "cc4/core_dynamics.hpp"
#include "cc4/errors.hpp"
#include "cc4/zero_multiplier.hpp"
#include "test_helpers.hpp"

using namespace cc4;
using cc4::testing::uniform;

namespace {

// ---- independent oracle -------------------------------------------------
// A from-scratch evaluation of the constraint system using std::pow only,
// plus dense-grid sign scans refined by plain bisection. Kept deliberately
// separate from the library's bracketing logic.

double oracle_f(double u, double v) {
    return std::pow(u, -2.0 / 3.0) + std::pow(v, -2.0 / 3.0);
}

double oracle_g(double u, double v, double x, double y) {
    const double h1 = (x + y) / (2 * x) * u + (x - y) / (2 * x) * v;
    const double h2 = (x + y) / (2 * y) * u + (y - x) / (2 * y) * v;
    return std::pow(h1, -2.0 / 3.0) + std::pow(h2, -2.0 / 3.0);
}

// v >= 1 with oracle_g = 2 from a dense scan of 4000 v-samples.
double oracle_curve_v(double u, double x, double y) {
    if (u == 1.0) return 1.0;
    const double vmax = (x + y) * u / (y - x);
    const int n = 4000;
    double prev = 1.0;
    double prev_val = oracle_g(u, prev, x, y) - 2.0;
    for (int i = 1; i <= n; ++i) {
        const double v = 1.0 + (vmax * (1.0 - 1e-12) - 1.0) * i / n;
        const double val = oracle_g(u, v, x, y) - 2.0;
        if ((prev_val < 0) != (val < 0)) {
            double lo = prev, hi = v;
            for (int it = 0; it < 200; ++it) {
                const double mid = 0.5 * (lo + hi);
                if ((oracle_g(u, mid, x, y) - 2.0 < 0) == (prev_val < 0))
                    lo = mid;
                else
                    hi = mid;
            }
            return 0.5 * (lo + hi);
        }
        prev = v;
        prev_val = val;
    }
    FAIL("oracle_curve_v: no sign change found");
    return 0.0;
}

// Grid scan of f - 1 along the curve, refined by bisection in u.
double oracle_solve_u(double x, double y) {
    const int n = 2000;
    double prev = 1.0 + 1e-9;
    double prev_val = oracle_f(prev, oracle_curve_v(prev, x, y)) - 1.0;
    for (int i = 1; i <= n; ++i) {
        const double u = std::pow(10.0, 4.0 * i / n) * (1.0 + 1e-9);  // up to 1e4
        const double val = oracle_f(u, oracle_curve_v(u, x, y)) - 1.0;
        if ((prev_val < 0) != (val < 0)) {
            double lo = prev, hi = u;
            for (int it = 0; it < 200; ++it) {
                const double mid = 0.5 * (lo + hi);
                const double fm = oracle_f(mid, oracle_curve_v(mid, x, y)) - 1.0;
                if ((fm < 0) == (prev_val < 0))
                    lo = mid;
                else
                    hi = mid;
            }
            return 0.5 * (lo + hi);
        }
        prev = u;
        prev_val = val;
    }
    FAIL("oracle_solve_u: no sign change found");
    return 0.0;
}

void check_solution_invariants(const ZeroMultSolution& sol) {
    CHECK(sol.u > 1.0);
    CHECK(sol.v > 1.0);
    CHECK(std::abs(zero_side_sum(sol.u, sol.v) - 1.0) < 1e-12);
    const auto [up, vp] = zero_diag_map(sol.u, sol.v, sol.x, sol.y);
    CHECK(sol.u_prime == doctest::Approx(up).epsilon(1e-14));
    CHECK(sol.v_prime == doctest::Approx(vp).epsilon(1e-14));
    CHECK(std::abs(std::pow(up, -2.0 / 3.0) + std::pow(vp, -2.0 / 3.0) - 2.0) < 1e-12);

    const auto& c = sol.configuration;
    const double r21 = (c.position(1) - c.position(0)).norm();
    const double r43 = (c.position(3) - c.position(2)).norm();
    const double r31 = (c.position(2) - c.position(0)).norm();
    const double r32 = (c.position(2) - c.position(1)).norm();
    CHECK(r43 < 1.0);
    CHECK(1.0 < r21);
    CHECK(r32 < r31);
    CHECK(std::abs(r31 * r31 + r32 * r32 - 1.0) < 1e-12);

    CHECK(std::abs(sol.report.xi_fit) < 1e-10);
    CHECK(sol.report.max_pair_residual < 1e-10);
    // Multiplier-weight product: xi lambda = 0 holds with xi ~ 0 here even
    // though lambda itself need not vanish.
    CHECK(std::abs(sol.report.xi_fit) * sol.report.inertia_vector.norm() < 1e-9);
    // The diagonals of any parallelogram share their midpoint.
    const Vec2 mid12 = (c.position(0) + c.position(1)) / 2.0;
    const Vec2 mid34 = (c.position(2) + c.position(3)) / 2.0;
    CHECK((mid12 - mid34).norm() < 1e-12);
    CHECK(r21 == doctest::Approx(std::pow(sol.u_prime, -1.0 / 3.0)).epsilon(1e-12));
}

}  // namespace

TEST_CASE("curve_g_point: starts at (1,1)") {
    CHECK(curve_g_point(1.0, 1.0, 2.0) == 1.0);
    CHECK(curve_g_point(1.0, 0.3, 0.7) == 1.0);
}

TEST_CASE("curve_g_point: matches the dense-scan oracle at u = 2, masses (1,2)") {
    const double v = curve_g_point(2.0, 1.0, 2.0);
    CHECK(std::abs(zero_diag_sum(2.0, v, 1.0, 2.0) - 2.0) < 1e-12);
    CHECK(v == doctest::Approx(oracle_curve_v(2.0, 1.0, 2.0)).epsilon(1e-10));
    CHECK(v == doctest::Approx(4.8974152823382407).epsilon(1e-10));
}

TEST_CASE("curve_g_point: v >= u along the curve") {
    const std::vector<std::pair<double, double>> masses{
        {1.0, 2.0}, {1.0, 1.5}, {0.5, 3.0}};
    for (const auto& [x, y] : masses) {
        for (double u = 1.0; u < 100.0; u *= 1.37) {
            const double v = curve_g_point(u, x, y);
            CHECK(v >= u - 1e-12);
        }
    }
}

TEST_CASE("curve_g_point: rejects bad mass order") {
    CHECK_THROWS_AS(curve_g_point(2.0, 2.0, 1.0), InvalidMassError);
    CHECK_THROWS_AS(curve_g_point(2.0, 1.0, 1.0), InvalidMassError);
}

TEST_CASE("solve_zero: equal magnitudes have no solution") {
    CHECK(!solve_zero(1.0, 1.0).has_value());
    CHECK(!solve_zero(2.0, -2.0).has_value());
    CHECK(!solve_zero(3.0, 3.0 * (1.0 + 1e-13)).has_value());
}

TEST_CASE("solve_zero: rejects zero or non-finite masses") {
    CHECK_THROWS_AS(solve_zero(0.0, 1.0), InvalidMassError);
    CHECK_THROWS_AS(solve_zero(1.0, std::nan("")), InvalidMassError);
}

TEST_CASE("solve_zero: masses (1,2) against the grid-scan oracle") {
    const auto sol = solve_zero(1.0, 2.0);
    REQUIRE(sol.has_value());
    const double u_oracle = oracle_solve_u(1.0, 2.0);
    CHECK(sol->u == doctest::Approx(u_oracle).epsilon(1e-8));
    // Frozen from the oracle.
    CHECK(sol->u == doctest::Approx(1.9376231355065651).epsilon(1e-9));
    CHECK(sol->v == doctest::Approx(4.6961765724975881).epsilon(1e-9));
    CHECK(sol->u_prime == doctest::Approx(0.55834641701105355).epsilon(1e-9));
    CHECK(sol->v_prime == doctest::Approx(2.6272614947543208).epsilon(1e-9));
    check_solution_invariants(*sol);
}

TEST_CASE("solve_zero: depends only on the mass ratio") {
    const auto a = solve_zero(1.0, 2.0);
    const auto b = solve_zero(2.0, 4.0);
    const auto c = solve_zero(0.5, 1.0);
    const auto d = solve_zero(3.0, 6.0);
    REQUIRE(a);
    REQUIRE(b);
    REQUIRE(c);
    REQUIRE(d);
    for (const auto* s : {&b, &c, &d}) {
        CHECK((*s)->u == doctest::Approx(a->u).epsilon(1e-10));
        CHECK((*s)->v == doctest::Approx(a->v).epsilon(1e-10));
    }
}

TEST_CASE("solve_zero: sign and pair normalization is recorded") {
    const auto neg = solve_zero(-1.0, 2.0);
    REQUIRE(neg);
    CHECK(neg->x == 1.0);
    CHECK(neg->y == 2.0);
    CHECK(neg->caller_body == std::array<int, 4>{1, 0, 2, 3});

    const auto swapped = solve_zero(2.0, 1.0);
    REQUIRE(swapped);
    CHECK(swapped->x == 1.0);
    CHECK(swapped->y == 2.0);
    CHECK(swapped->caller_body == std::array<int, 4>{2, 3, 0, 1});
    const auto direct = solve_zero(1.0, 2.0);
    REQUIRE(direct);
    CHECK(swapped->u == doctest::Approx(direct->u).epsilon(1e-12));
}

TEST_CASE("solve_zero: invariants on a mass grid") {
    for (const auto& [x, y] : std::vector<std::pair<double, double>>{
             {1.0, 2.0}, {0.5, 3.0}, {1.5, 2.0}, {2.0, 3.0}, {0.7, 4.0}}) {
        const auto sol = solve_zero(x, y);
        REQUIRE(sol.has_value());
        check_solution_invariants(*sol);
        // The mass and weight vectors are collinear for lambda = 0 ... here
        // xi = 0 instead, so only the parallelogram weights apply.
        const auto w = affine_weights(sol->configuration);
        CHECK(std::abs(std::abs(w.delta[0]) - std::abs(w.delta[1])) < 1e-9);
        CHECK(std::abs(std::abs(w.delta[2]) - std::abs(w.delta[3])) < 1e-9);
    }
}

TEST_CASE("solve_zero: exactly one crossing along the curve, f monotone") {
    const double x = 1.0, y = 2.0;
    const int n = 400;
    int crossings = 0;
    double prev_f = zero_side_sum(1.0 + 1e-6, curve_g_point(1.0 + 1e-6, x, y));
    bool monotone = true;
    for (int i = 1; i < n; ++i) {
        const double u = (1.0 + 1e-6) * std::pow(1e4, double(i) / (n - 1));
        const double f = zero_side_sum(u, curve_g_point(u, x, y));
        if ((prev_f - 1.0 < 0) != (f - 1.0 < 0)) ++crossings;
        if (f >= prev_f) monotone = false;
        prev_f = f;
    }
    CHECK(crossings == 1);
    CHECK(monotone);  // strictly decreasing along the sampled curve
}

TEST_CASE("build_parallelogram: flat triangles are rejected") {
    // (p, q, w) = (1, 0.1, 1.2) violates p + q > w.
    CHECK_THROWS_AS(build_parallelogram(1.0, 1000.0, 1.0, std::pow(1.2, -3.0),
                                        1.0, 2.0),
                    FlatTriangleError);
}

TEST_CASE("flat_degeneracy_gap: expanded coefficients") {
    CHECK(flat_degeneracy_gap(0.0) == doctest::Approx(14.0));
    CHECK(flat_degeneracy_gap(1.0) == doctest::Approx(182.0));
}

TEST_CASE("flat_degeneracy_gap: matches the product forms, positive for b > 0") {
    for (int trial = 0; trial < 100; ++trial) {
        const double b = uniform(1e-6, 10.0);
        const auto [lhs, rhs] = flat_degeneracy_products(b);
        const double gap = flat_degeneracy_gap(b);
        CHECK(std::abs((lhs - rhs) - gap) <= 1e-9 * std::abs(gap));
        CHECK(gap > 0.0);
    }
}
