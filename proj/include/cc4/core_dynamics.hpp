#pragma once

#include <array>
#include <optional>
#include <vector>

#include "cc4/configuration.hpp"
#include "cc4/geometry.hpp"

namespace cc4 {

/// Result of the least-squares multiplier fit, plus the derived first
/// integrals of a vanishing-total-mass system.
struct CentralityReport {
    /// Multiplier minimizing sum over pairs of |(g_j - g_i) - xi (r_j - r_i)|^2.
    double xi_fit = 0.0;
    /// Largest per-pair residual at xi_fit; the centrality certificate.
    double max_pair_residual = 0.0;
    /// (S1, S2, S3) mutual-distance sums; four-body configurations only.
    std::optional<std::array<double, 3>> laura_andoyer_triple;
    /// sum m_i r_i, evaluated with the origin as reference point.
    Vec2 inertia_vector;
    /// sum m_i |r_i|^2, evaluated at the origin.
    double moment_of_inertia_at_origin = 0.0;
    /// Index triples (0-based) lying on a common line; four-body only.
    std::vector<std::array<int, 3>> collinear_triples;
};

/// The unique-up-to-scale weights with sum 0 and weighted position sum 0
/// carried by every non-collinear planar 4-body configuration.
struct AffineWeights {
    std::array<double, 4> delta{};  // largest-magnitude entry normalized to +1
};

/// Newtonian accelerations g_i = sum_{j != i} m_j (r_j - r_i) / |r_j - r_i|^3.
std::vector<Vec2> accelerations(const Configuration& config);

/// Newtonian potential U = sum_{i<j} m_i m_j / |r_j - r_i|.
double potential(const Configuration& config);

/// Least-squares multiplier fit over all pairs; also fills the inertia
/// quantities and, for four bodies, the Laura-Andoyer triple and the list of
/// collinear triples. Requires N >= 3.
CentralityReport fit_multiplier(const Configuration& config);

/// S1 = 1/r12^3 + 1/r34^3, S2 = 1/r13^3 + 1/r24^3, S3 = 1/r23^3 + 1/r14^3.
std::array<double, 3> laura_andoyer_triple(const Configuration& config);

/// Kernel of [sum d_i = 0; sum d_i r_i = 0] for four non-collinear bodies,
/// normalized so the largest-magnitude entry equals +1.
AffineWeights affine_weights(const Configuration& config);

/// Moment of inertia sum m_i |r_i - a|^2 about an arbitrary point.
double moment_of_inertia(const Configuration& config, Vec2 a);

/// Vector of inertia sum m_i (r_i - a).
Vec2 inertia_vector(const Configuration& config, Vec2 a);

namespace detail {
/// Shared least-squares fit; valid for N >= 2 (fit_multiplier adds the N >= 3
/// precondition of the public contract).
std::pair<double, double> fit_xi(const std::vector<Vec2>& positions,
                                 const std::vector<Vec2>& accels);
}  // namespace detail

}  // namespace cc4
