#pragma once

#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "lne/expression.hpp"
#include "lne/geometry.hpp"

namespace lne {

class InvalidDescriptor : public Error {
public:
    using Error::Error;
};

/// Position and velocity of an arc at one parameter value.
struct ArcJet {
    Point pos;
    Point vel;
};

using ArcMap = std::function<ArcJet(double)>;

/// How an arc behaves at one end of its parameter interval.
struct ArcEnd {
    enum class Kind {
        Closed,     ///< finite parameter, the end point belongs to the set
        Unbounded,  ///< |gamma| -> infinity at this end
        Limit,      ///< gamma converges to `limit`, which belongs to the closure
        Open,       ///< bounded end excluded from the set (no junction possible)
    };
    Kind kind = Kind::Closed;
    std::optional<Point> limit;

    static ArcEnd closed() { return {Kind::Closed, std::nullopt}; }
    static ArcEnd unbounded() { return {Kind::Unbounded, std::nullopt}; }
    static ArcEnd open() { return {Kind::Open, std::nullopt}; }
    static ArcEnd converging_to(Point p) { return {Kind::Limit, std::move(p)}; }
};

std::string to_string(ArcEnd::Kind k);

/// A C^1 map gamma: [lo, hi] -> R^n (lo and hi may be infinite).
struct ParamArc {
    std::string label;
    std::size_t dim = 2;
    ArcMap map;
    double lo = 0.0;
    double hi = 1.0;
    ArcEnd lo_end = ArcEnd::closed();
    ArcEnd hi_end = ArcEnd::closed();
    /// Beyond this parameter |gamma| is monotone towards an unbounded end.
    double t_mono = std::numeric_limits<double>::quiet_NaN();

    ArcJet jet(double t) const;
    Point position(double t) const { return jet(t).pos; }
    double speed(double t) const { return jet(t).vel.norm(); }

    /// The point the arc reaches at an end, if it reaches one.
    std::optional<Point> end_point(bool high) const;
    const ArcEnd& end(bool high) const { return high ? hi_end : lo_end; }
    double end_param(bool high) const { return high ? hi : lo; }

    /// Build an arc from coordinate expressions in the variable `t`.
    static ParamArc from_expressions(std::string label, const std::vector<std::string>& coords, double lo, double hi);
};

/// Finite union of parametrized arcs glued at junction points. Arcs meet
/// only at their ends; a junction is a declared arc end point.
struct ArcNetwork {
    AmbientMetric metric = AmbientMetric::euclidean(2);
    std::vector<ParamArc> arcs;
    std::vector<Point> junctions;

    std::size_t coord_dim() const { return metric.coord_dim(); }
    const ParamArc& arc(const std::string& label) const;
    std::size_t arc_index(const std::string& label) const;
    bool unbounded() const;
};

/// Zero set of F: R^q -> R^m inside the box [-B, B]^q.
struct ImplicitSet {
    std::size_t dim = 2;
    std::vector<Expression> equations;
    double box = 1.0;

    std::vector<double> values(const Point& x) const;
    /// Row-major m x q Jacobian.
    std::vector<double> jacobian(const Point& x) const;
    static std::vector<std::string> variable_names(std::size_t dim);
};

struct PointCloud {
    AmbientMetric metric = AmbientMetric::euclidean(2);
    std::vector<Point> points;
};

struct SetDescriptor {
    std::string name;
    std::variant<ArcNetwork, ImplicitSet, PointCloud> body;

    AmbientMetric metric() const;
    bool is_network() const { return std::holds_alternative<ArcNetwork>(body); }
    const ArcNetwork& network() const { return std::get<ArcNetwork>(body); }
    bool unbounded() const;
};

/// Node structure of an arc network: arc ends that reach a point, merged when
/// they coincide (up to sign for projective networks).
struct NetworkTopology {
    std::vector<Point> nodes;
    /// node id of each arc's (lo, hi) end; -1 when the end reaches no point
    std::vector<std::pair<int, int>> end_node;
    std::vector<int> degree;
    /// true when the node is the limit of an arc at an open parameter end
    std::vector<bool> limit_node;
    std::vector<bool> junction;

    int find(const Point& p, AmbientMetric::Kind kind, double tol = 1e-8) const;
};

NetworkTopology topology(const ArcNetwork& net);

/// Check the structural invariants; throws InvalidDescriptor.
void validate(const SetDescriptor& d);

/// Network image under a smooth map with known directional derivative.
enum class NetworkTransform { Inversion, Stereographic, ProjectiveLift };
ArcNetwork transform_network(const ArcNetwork& net, NetworkTransform which);

/// Nonnegative rays vertex + t u, t >= 0, joined at the vertex.
ArcNetwork ray_network(const Point& vertex, const std::vector<UnitDirection>& directions);

}  // namespace lne
