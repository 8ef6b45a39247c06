#pragma once

#include <cstddef>
#include <vector>

#include "polyapprox/geometry.hpp"

namespace polyapprox {

/// Uniform grid on the facets of [-1, 1]^d, centrally projected to the unit
/// sphere. Every unit vector lies within `covering_angle` radians of some net
/// direction. Nodes shared by several facets appear once (owned by the facet
/// of lowest axis).
class DirectionNet {
public:
    /// Default cap on the number of directions; larger nets raise SizeLimit.
    static constexpr std::size_t kMaxDirections = 4'000'000;

    DirectionNet(int dim, double covering_angle, std::size_t max_directions = kMaxDirections);
    /// Net with `divisions` grid steps per facet axis.
    static DirectionNet with_divisions(int dim, int divisions,
                                       std::size_t max_directions = kMaxDirections);
    /// Coarsest net with at least `count` directions.
    static DirectionNet with_min_size(int dim, std::size_t count);

    int dim() const { return dim_; }
    int divisions() const { return divisions_; }
    double covering_angle() const { return covering_angle_; }
    std::size_t size() const { return directions_.size(); }
    const std::vector<Vec>& directions() const { return directions_; }
    const Vec& operator[](std::size_t i) const { return directions_[i]; }

    /// Index of a net direction within covering_angle of unit-or-not u.
    /// Requires enable_lookup() to have been called.
    std::size_t nearest(const Vec& u) const;
    void enable_lookup();
    bool has_lookup() const { return !lookup_.empty(); }

private:
    DirectionNet() = default;
    void build(int dim, int divisions, std::size_t max_directions);
    std::size_t slot(int axis, int sign, const int* coords) const;

    int dim_ = 0;
    int divisions_ = 0;
    double covering_angle_ = 0.0;
    std::vector<Vec> directions_;
    std::vector<std::size_t> lookup_;
};

}  // namespace polyapprox
