#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

#include "lne/sample.hpp"

namespace lne {

class ScaleError : public Error {
public:
    using Error::Error;
};

/// Symmetric epsilon-neighbour graph over a sample, stored in CSR form.
/// Edge weights are ambient distances (chords).
struct ProximityGraph {
    AmbientMetric metric;
    double eps = 0.0;
    std::vector<std::size_t> offsets;
    std::vector<std::size_t> targets;
    std::vector<double> weights;
    std::vector<int> component;
    int num_components = 0;

    std::size_t size() const { return offsets.empty() ? 0 : offsets.size() - 1; }
    std::size_t edge_count() const { return targets.size() / 2; }
    std::span<const std::size_t> neighbors(std::size_t i) const {
        return {targets.data() + offsets[i], offsets[i + 1] - offsets[i]};
    }
    std::span<const double> neighbor_weights(std::size_t i) const {
        return {weights.data() + offsets[i], offsets[i + 1] - offsets[i]};
    }
};

/// All pairs within eps (inclusive) under the sample's ambient metric.
ProximityGraph build_graph(const Sample& s, double eps);

/// Connected components of the graph restricted to `vertices`
/// (labels indexed like `vertices`, numbered in order of first appearance).
std::vector<int> restricted_components(const ProximityGraph& g, std::span<const std::size_t> vertices, int* count = nullptr);

/// Dijkstra distances from `source` (binary heap); infinity marks other
/// components.
std::vector<double> single_source(const ProximityGraph& g, std::size_t source);
double inner_distance(const ProximityGraph& g, std::size_t i, std::size_t j);

inline constexpr std::size_t kAllPairsLimit = 4096;

struct GeodesicTable {
    std::vector<std::size_t> sources;
    std::vector<std::vector<double>> rows;
};

/// Every row of the distance matrix; only for graphs of at most 4096 vertices.
GeodesicTable all_pairs(const ProximityGraph& g);
GeodesicTable geodesic_rows(const ProximityGraph& g, std::span<const std::size_t> sources);

/// CSV matrix, one row per source, `inf` for unreachable pairs.
void write_csv(const GeodesicTable& t, std::ostream& out);

}  // namespace lne
