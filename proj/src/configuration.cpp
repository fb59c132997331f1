#include "cc4/configuration.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <utility>

namespace cc4 {

Configuration::Configuration(std::vector<double> masses,
                             std::vector<Vec2> positions)
    : masses_(std::move(masses)), positions_(std::move(positions)) {
    if (masses_.size() != positions_.size())
        throw ParseError("configuration: masses and positions differ in length");
    if (masses_.size() < 2)
        throw ParseError("configuration: at least two bodies required");
    for (double m : masses_)
        if (m == 0.0 || !std::isfinite(m))
            throw InvalidMassError("configuration: masses must be finite and nonzero");
    for (const Vec2& p : positions_)
        if (!p.finite())
            throw ParseError("configuration: positions must be finite");
    for (std::size_t i = 0; i < positions_.size(); ++i)
        for (std::size_t j = i + 1; j < positions_.size(); ++j)
            scale_ = std::max(scale_, (positions_[j] - positions_[i]).norm());
    const double tol = kEpsGeom * scale_;
    for (std::size_t i = 0; i < positions_.size(); ++i)
        for (std::size_t j = i + 1; j < positions_.size(); ++j)
            if ((positions_[j] - positions_[i]).norm() <= tol)
                throw CollisionError("configuration: bodies " + std::to_string(i) +
                                     " and " + std::to_string(j) + " coincide");
}

double Configuration::total_mass() const {
    double m = 0.0;
    for (double mi : masses_) m += mi;
    return m;
}

double Configuration::min_pair_distance() const {
    double d = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < positions_.size(); ++i)
        for (std::size_t j = i + 1; j < positions_.size(); ++j)
            d = std::min(d, (positions_[j] - positions_[i]).norm());
    return d;
}

Configuration Configuration::translated(Vec2 t) const {
    std::vector<Vec2> p = positions_;
    for (Vec2& v : p) v += t;
    return Configuration(masses_, std::move(p));
}

Configuration Configuration::rotated(double angle) const {
    std::vector<Vec2> p = positions_;
    for (Vec2& v : p) v = rotate(v, angle);
    return Configuration(masses_, std::move(p));
}

Configuration Configuration::scaled(double s) const {
    std::vector<Vec2> p = positions_;
    for (Vec2& v : p) v = v * s;
    return Configuration(masses_, std::move(p));
}

Configuration Configuration::with_positions(std::vector<Vec2> positions) const {
    return Configuration(masses_, std::move(positions));
}

}  // namespace cc4
