#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include "lne/graph.hpp"
#include "lne/quadrature.hpp"

namespace lne {

class Unreachable : public Error {
public:
    using Error::Error;
};

/// Inner distance between the points of a sample. Infinity means the two
/// points lie in different components.
class InnerMetric {
public:
    virtual ~InnerMetric() = default;
    virtual std::size_t size() const = 0;
    virtual double distance(std::size_t i, std::size_t j) const = 0;
    virtual std::vector<double> distances_from(std::size_t i) const;
    /// True when distance() is cheap (no search per query).
    virtual bool random_access() const = 0;
};

/// Shortest paths in an epsilon-neighbour graph.
class GraphMetric final : public InnerMetric {
public:
    explicit GraphMetric(ProximityGraph g) : g_(std::move(g)) {}
    std::size_t size() const override { return g_.size(); }
    double distance(std::size_t i, std::size_t j) const override { return inner_distance(g_, i, j); }
    std::vector<double> distances_from(std::size_t i) const override { return single_source(g_, i); }
    bool random_access() const override { return false; }
    const ProximityGraph& graph() const { return g_; }

private:
    ProximityGraph g_;
};

/// Exact inner distance through an arc network for samples drawn from it
/// (arc provenance or network nodes). Within-arc lengths come from
/// quadrature; passages through nodes from a shortest-path table over the
/// finite node graph.
class NetworkMetric final : public InnerMetric {
public:
    NetworkMetric(const ArcNetwork& net, const Sample& s, double tol = kDefaultQuadratureTol);
    std::size_t size() const override { return entries_.size(); }
    double distance(std::size_t i, std::size_t j) const override;
    bool random_access() const override { return true; }

    /// Length of the network path from node a to node b.
    double node_distance(int a, int b) const;

private:
    struct Entry {
        int arc = -1;   // -1 for node points
        int node = -1;  // node id for node points
        double s = 0.0; // arc length from the arc's first sample
        double to_lo = 0.0;
        double to_hi = 0.0;
    };
    std::vector<Entry> entries_;
    std::vector<std::pair<int, int>> arc_nodes_;
    std::vector<std::vector<double>> node_dist_;
};

/// Either a parameter on a named arc or a network node point.
struct NetworkPoint {
    std::string arc;
    double param = 0.0;
};

/// Exact inner distance between two points of an arc network.
/// Throws Unreachable if they lie in different components.
double network_inner_distance(const ArcNetwork& net, const NetworkPoint& p, const NetworkPoint& q,
                              double tol = kDefaultQuadratureTol);

/// Graph metric with the default scale: 3 x median nearest-neighbour spacing.
std::unique_ptr<InnerMetric> make_graph_metric(const Sample& s, double eps = 0.0);

/// Network metric for network descriptors, graph metric otherwise.
std::unique_ptr<InnerMetric> make_inner_metric(const SetDescriptor& d, const Sample& s, double eps = 0.0);

}  // namespace lne
