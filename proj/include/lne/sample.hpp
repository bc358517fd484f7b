#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <vector>

#include "lne/descriptor.hpp"

namespace lne {

class EmptySample : public Error {
public:
    using Error::Error;
};

/// Where a sample point came from.
struct Provenance {
    enum class Source { Arc, Node, Implicit, Cloud };
    Source source = Source::Cloud;
    int arc = -1;
    double param = std::numeric_limits<double>::quiet_NaN();
    int node = -1;
    std::size_t index = 0;
    /// |x| of the affine preimage for samples pushed into another chart
    /// (projective lift); NaN otherwise.
    double chart_radius = std::numeric_limits<double>::quiet_NaN();
};

/// A finite point set drawn from a descriptor.
struct Sample {
    AmbientMetric metric = AmbientMetric::euclidean(2);
    std::vector<Point> points;
    std::vector<Provenance> provenance;
    /// |coords| of each point
    std::vector<double> radial;

    std::size_t size() const { return points.size(); }
    bool empty() const { return points.empty(); }
    void add(Point p, Provenance prov);
    Sample subset(const std::vector<std::size_t>& indices) const;
    /// Scaling all coordinates by lambda (euclidean samples only).
    Sample scaled(double lambda) const;
};

/// How sample_network spreads points along arcs.
struct SamplingPlan {
    std::size_t budget = 5000;
    /// distances rho are measured from here (origin when unset)
    std::optional<Point> anchor;
    double r_min = 0.0;
    double r_max = std::numeric_limits<double>::infinity();
    /// density is |gamma'| / max(rho, floor); floor = inf gives plain arc length
    double floor = 0.0;
    bool include_nodes = true;
};

/// Sample an arc network according to an explicit plan.
Sample sample_network(const ArcNetwork& net, const SamplingPlan& plan);

/// Sample any descriptor with `budget` points whose radius lies in
/// [r_min, r_max]. Unbounded networks are sampled log-uniformly in |x|
/// (relative arc length), bounded ones uniformly in arc length. Junctions in
/// range are always included.
Sample sample_descriptor(const SetDescriptor& d, std::size_t budget, double r_min, double r_max);

struct SliceMode {
    enum class Kind { LE, EQ, GE };
    Kind kind = Kind::GE;
    double t = 1.0;
    double band = 0.0;

    static SliceMode le(double t) { return {Kind::LE, t, 0.0}; }
    static SliceMode ge(double t) { return {Kind::GE, t, 0.0}; }
    static SliceMode eq(double t, double band) { return {Kind::EQ, t, band}; }
};

/// Indices of points kept by a slice (no emptiness check).
std::vector<std::size_t> slice_indices(const Sample& s, const SliceMode& mode);
/// Sub-sample of points with |x| <= t, ||x| - t| <= band, or |x| >= t.
Sample slice(const Sample& s, const SliceMode& mode);

/// Median over points of the distance to the nearest other point.
double median_nn_spacing(const Sample& s);

}  // namespace lne
