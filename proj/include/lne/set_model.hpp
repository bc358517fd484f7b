#pragma once

#include <cstddef>
#include <functional>
#include <numbers>
#include <optional>
#include <vector>

#include "lne/graph.hpp"
#include "lne/sample.hpp"

namespace lne {

class InsufficientTail : public Error {
public:
    using Error::Error;
};

inline constexpr double kDefaultDeltaBin = 2.0 * std::numbers::pi / 180.0;
inline constexpr std::size_t kMinTailPoints = 32;

/// Connected components of a radial slice.
struct ComponentSplit {
    double radius = 0.0;
    double eps = 0.0;
    std::vector<Sample> parts;
    /// indices of each part's points in the input sample
    std::vector<std::vector<std::size_t>> indices;
};

/// Components of the eps-graph on the slice |x| >= R. eps <= 0 selects
/// 3 x median nearest-neighbour spacing of the slice. Parts are ordered by
/// (smallest radius, lexicographically smallest point).
ComponentSplit split_components_at_radius(const Sample& s, double R, double eps = 0.0);

/// Components of {|x| >= R} for a sample of an arc network, read off the
/// arc parametrizations instead of a proximity graph.
ComponentSplit split_network_at_radius(const ArcNetwork& net, const Sample& s, double R);

/// Components of {x : keep(|x|)} for a network sample; `R` is recorded as the
/// split radius.
ComponentSplit split_network_where(const ArcNetwork& net, const Sample& s, const std::function<bool(double)>& keep,
                                   double R);

/// Limit directions at infinity (anchor unset) or at a base point.
struct AsymptoticSet {
    std::vector<UnitDirection> directions;
    double resolution = kDefaultDeltaBin;
    std::optional<Point> anchor;
};

/// Directions of the extreme dyadic band ([R/2, R] for the largest radius R
/// at infinity, [r, 2r] for the smallest distance r at a point), merged by
/// single linkage at angle delta_bin. With `extrapolate`, each cluster's mean
/// direction is carried over the two neighbouring bands and accelerated by
/// Aitken's delta-squared process before the final merge.
AsymptoticSet asymptotic_set(const Sample& s, const std::optional<Point>& anchor, double delta_bin = kDefaultDeltaBin,
                             bool extrapolate = true);

/// Rays vertex + t u over the directions of the set.
SetDescriptor tangent_cone(const AsymptoticSet& a, const Point& vertex);

}  // namespace lne
