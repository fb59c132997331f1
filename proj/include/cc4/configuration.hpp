#pragma once

#include <cstddef>
#include <vector>

#include "cc4/errors.hpp"
#include "cc4/geometry.hpp"

namespace cc4 {

/// N point bodies as (mass, position) pairs. Masses may be negative but not
/// zero; positions must be pairwise distinct. Immutable once constructed.
class Configuration {
public:
    Configuration(std::vector<double> masses, std::vector<Vec2> positions);

    std::size_t size() const { return masses_.size(); }
    double mass(std::size_t i) const { return masses_[i]; }
    const Vec2& position(std::size_t i) const { return positions_[i]; }
    const std::vector<double>& masses() const { return masses_; }
    const std::vector<Vec2>& positions() const { return positions_; }

    double total_mass() const;
    /// Largest pairwise distance; the natural length scale of the configuration.
    double scale() const { return scale_; }
    double min_pair_distance() const;

    Configuration translated(Vec2 t) const;
    Configuration rotated(double angle) const;
    Configuration scaled(double s) const;
    /// Same masses, new positions (revalidates).
    Configuration with_positions(std::vector<Vec2> positions) const;

private:
    std::vector<double> masses_;
    std::vector<Vec2> positions_;
    double scale_ = 0.0;
};

}  // namespace cc4
