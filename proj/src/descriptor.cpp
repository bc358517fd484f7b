#include "lne/descriptor.hpp"

#include <cmath>
#include <fmt/format.h>

#include "lne/arc_params.hpp"

namespace lne {

std::string to_string(ArcEnd::Kind k) {
    switch (k) {
        case ArcEnd::Kind::Closed: return "closed";
        case ArcEnd::Kind::Unbounded: return "unbounded";
        case ArcEnd::Kind::Limit: return "limit";
        case ArcEnd::Kind::Open: return "open";
    }
    return "closed";
}

ArcJet ParamArc::jet(double t) const {
    ArcJet j = map(t);
    if (!j.pos.finite() || !j.vel.finite()) {
        throw EvalError(fmt::format("arc '{}' is not finite at t = {}", label, t));
    }
    return j;
}

std::optional<Point> ParamArc::end_point(bool high) const {
    const ArcEnd& e = end(high);
    switch (e.kind) {
        case ArcEnd::Kind::Closed: return position(end_param(high));
        case ArcEnd::Kind::Limit: return e.limit;
        default: return std::nullopt;
    }
}

ParamArc ParamArc::from_expressions(std::string label, const std::vector<std::string>& coords, double lo, double hi) {
    if (coords.empty()) throw InvalidDescriptor("arc '" + label + "' has no coordinates");
    std::vector<Expression> ex;
    ex.reserve(coords.size());
    for (const auto& c : coords) ex.push_back(Expression::parse(c, {"t"}));
    ParamArc a;
    a.label = std::move(label);
    a.dim = coords.size();
    a.lo = lo;
    a.hi = hi;
    a.lo_end = std::isinf(lo) ? ArcEnd::unbounded() : ArcEnd::closed();
    a.hi_end = std::isinf(hi) ? ArcEnd::unbounded() : ArcEnd::closed();
    a.map = [ex = std::move(ex)](double t) {
        const Dual v[1] = {{t, 1.0}};
        std::vector<double> p(ex.size()), d(ex.size());
        for (std::size_t i = 0; i < ex.size(); ++i) {
            const Dual r = ex[i].eval(std::span<const Dual>(v, 1));
            p[i] = r.v;
            d[i] = r.d;
        }
        return ArcJet{Point(std::move(p)), Point(std::move(d))};
    };
    return a;
}

const ParamArc& ArcNetwork::arc(const std::string& label) const { return arcs[arc_index(label)]; }

std::size_t ArcNetwork::arc_index(const std::string& label) const {
    for (std::size_t i = 0; i < arcs.size(); ++i) {
        if (arcs[i].label == label) return i;
    }
    throw InvalidDescriptor("no arc labelled '" + label + "'");
}

bool ArcNetwork::unbounded() const {
    for (const auto& a : arcs) {
        if (a.lo_end.kind == ArcEnd::Kind::Unbounded || a.hi_end.kind == ArcEnd::Kind::Unbounded) return true;
    }
    return false;
}

std::vector<std::string> ImplicitSet::variable_names(std::size_t dim) {
    if (dim <= 3) {
        static const char* xyz[] = {"x", "y", "z"};
        return std::vector<std::string>(xyz, xyz + dim);
    }
    std::vector<std::string> v;
    for (std::size_t i = 0; i < dim; ++i) v.push_back(fmt::format("x{}", i + 1));
    return v;
}

std::vector<double> ImplicitSet::values(const Point& x) const {
    std::vector<double> f;
    f.reserve(equations.size());
    for (const auto& e : equations) f.push_back(e.eval(x.coords()));
    return f;
}

std::vector<double> ImplicitSet::jacobian(const Point& x) const {
    std::vector<double> jac(equations.size() * dim);
    std::vector<Dual> v(dim);
    for (std::size_t k = 0; k < dim; ++k) {
        for (std::size_t i = 0; i < dim; ++i) v[i] = {x[i], i == k ? 1.0 : 0.0};
        for (std::size_t r = 0; r < equations.size(); ++r) jac[r * dim + k] = equations[r].eval(std::span<const Dual>(v)).d;
    }
    return jac;
}

AmbientMetric SetDescriptor::metric() const {
    if (const auto* n = std::get_if<ArcNetwork>(&body)) return n->metric;
    if (const auto* c = std::get_if<PointCloud>(&body)) return c->metric;
    return AmbientMetric::euclidean(std::get<ImplicitSet>(body).dim);
}

bool SetDescriptor::unbounded() const {
    if (const auto* n = std::get_if<ArcNetwork>(&body)) return n->unbounded();
    return false;
}

namespace {

bool same_point(const Point& a, const Point& b, AmbientMetric::Kind kind, double tol) {
    if (a.dim() != b.dim()) return false;
    const double scale = 1.0 + std::max(a.norm(), b.norm());
    double d = distance(a, b);
    if (kind == AmbientMetric::Kind::Projective) d = std::min(d, (a + b).norm());
    return d <= tol * scale;
}

}  // namespace

int NetworkTopology::find(const Point& p, AmbientMetric::Kind kind, double tol) const {
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (same_point(nodes[i], p, kind, tol)) return static_cast<int>(i);
    }
    return -1;
}

NetworkTopology topology(const ArcNetwork& net) {
    NetworkTopology topo;
    const auto kind = net.metric.kind;
    auto node_of = [&](const Point& p, bool is_limit, bool is_junction) {
        int id = topo.find(p, kind);
        if (id < 0) {
            id = static_cast<int>(topo.nodes.size());
            topo.nodes.push_back(p);
            topo.degree.push_back(0);
            topo.limit_node.push_back(false);
            topo.junction.push_back(false);
        }
        if (is_limit) topo.limit_node[static_cast<std::size_t>(id)] = true;
        if (is_junction) topo.junction[static_cast<std::size_t>(id)] = true;
        return id;
    };
    for (const auto& j : net.junctions) node_of(j, false, true);
    for (const auto& a : net.arcs) {
        std::pair<int, int> ends{-1, -1};
        for (bool high : {false, true}) {
            const auto p = a.end_point(high);
            if (!p) continue;
            const bool lim = a.end(high).kind == ArcEnd::Kind::Limit;
            const int id = node_of(*p, lim, false);
            ++topo.degree[static_cast<std::size_t>(id)];
            (high ? ends.second : ends.first) = id;
        }
        topo.end_node.push_back(ends);
    }
    return topo;
}

void validate(const SetDescriptor& d) {
    if (const auto* net = std::get_if<ArcNetwork>(&d.body)) {
        if (net->arcs.empty()) throw InvalidDescriptor("arc network has no arcs");
        for (const auto& a : net->arcs) {
            if (!a.map) throw InvalidDescriptor("arc '" + a.label + "' has no map");
            if (!(a.lo < a.hi)) throw InvalidDescriptor("arc '" + a.label + "' has an empty parameter interval");
            if (a.dim != net->coord_dim()) {
                throw InvalidDescriptor(fmt::format("arc '{}' has dimension {}, network expects {}", a.label, a.dim,
                                                    net->coord_dim()));
            }
            for (bool high : {false, true}) {
                const ArcEnd& e = a.end(high);
                if (e.kind == ArcEnd::Kind::Closed && std::isinf(a.end_param(high))) {
                    throw InvalidDescriptor("arc '" + a.label + "' has a closed end at an infinite parameter");
                }
                if (e.kind == ArcEnd::Kind::Limit && !e.limit) {
                    throw InvalidDescriptor("arc '" + a.label + "' declares a limit end without a point");
                }
            }
            const Point p = a.position(reference_param(a));
            if (p.dim() != a.dim) throw InvalidDescriptor("arc '" + a.label + "' evaluates to the wrong dimension");
        }
        const NetworkTopology topo = topology(*net);
        for (std::size_t i = 0; i < net->junctions.size(); ++i) {
            const int id = topo.find(net->junctions[i], net->metric.kind);
            if (id < 0 || topo.degree[static_cast<std::size_t>(id)] == 0) {
                throw InvalidDescriptor(
                    fmt::format("junction {} does not lie on an arc end", to_string(net->junctions[i])));
            }
        }
    } else if (const auto* imp = std::get_if<ImplicitSet>(&d.body)) {
        if (!(imp->box > 0.0)) throw InvalidDescriptor("implicit box bound must be positive");
        if (imp->equations.empty()) throw InvalidDescriptor("implicit set has no equations");
        if (imp->dim < 1) throw InvalidDescriptor("implicit set has dimension 0");
    } else {
        const auto& cloud = std::get<PointCloud>(d.body);
        for (const auto& p : cloud.points) {
            if (p.dim() != cloud.metric.coord_dim()) throw InvalidDescriptor("cloud point has the wrong dimension");
        }
    }
}

namespace {

// Limit of the direction gamma/|gamma| along an unbounded end, if it settles.
std::optional<Point> settled_direction(const ParamArc& a, bool high) {
    std::optional<Point> prev;
    int stable = 0;
    for (int k = 8; k <= 60; ++k) {
        Point p;
        try {
            p = a.position(approach_param(a, high, k));
        } catch (const Error&) {
            break;
        }
        const double n = p.norm();
        if (!(n > 0.0) || !std::isfinite(n)) break;
        Point u = p * (1.0 / n);
        if (prev) {
            const double d = std::min(distance(u, *prev), (u + *prev).norm());
            stable = d < 1e-9 ? stable + 1 : 0;
            if (stable >= 3) return u;
        }
        prev = u;
    }
    return std::nullopt;
}

}  // namespace

ArcNetwork transform_network(const ArcNetwork& net, NetworkTransform which) {
    if (net.metric.kind != AmbientMetric::Kind::Euclidean) {
        throw InvalidDescriptor("network transforms act on euclidean networks");
    }
    const std::size_t q = net.metric.dim;
    ArcNetwork out;
    switch (which) {
        case NetworkTransform::Inversion: out.metric = AmbientMetric::euclidean(q); break;
        case NetworkTransform::Stereographic: out.metric = AmbientMetric::sphere(q); break;
        case NetworkTransform::ProjectiveLift: out.metric = AmbientMetric::projective(q); break;
    }

    auto map_point = [&](const Point& p) {
        switch (which) {
            case NetworkTransform::Inversion: return invert(p);
            case NetworkTransform::Stereographic: return stereo_to_sphere(p);
            case NetworkTransform::ProjectiveLift: return projective_lift(p);
        }
        return p;
    };
    auto at_origin = [](const Point& p) { return p.norm() <= kSingularRadius; };

    for (const auto& a : net.arcs) {
        ParamArc b = a;
        b.dim = out.metric.coord_dim();
        const ArcMap inner = a.map;
        switch (which) {
            case NetworkTransform::Inversion:
                b.map = [inner](double t) {
                    const ArcJet j = inner(t);
                    return ArcJet{invert(j.pos), invert_jvp(j.pos, j.vel)};
                };
                break;
            case NetworkTransform::Stereographic:
                b.map = [inner](double t) {
                    const ArcJet j = inner(t);
                    return ArcJet{stereo_to_sphere(j.pos), stereo_to_sphere_jvp(j.pos, j.vel)};
                };
                break;
            case NetworkTransform::ProjectiveLift:
                b.map = [inner](double t) {
                    const ArcJet j = inner(t);
                    return ArcJet{projective_lift(j.pos), projective_lift_jvp(j.pos, j.vel)};
                };
                break;
        }
        for (bool high : {false, true}) {
            const ArcEnd& e = a.end(high);
            ArcEnd& f = high ? b.hi_end : b.lo_end;
            switch (e.kind) {
                case ArcEnd::Kind::Closed: {
                    const Point p = a.position(a.end_param(high));
                    if (which == NetworkTransform::Inversion && at_origin(p)) f = ArcEnd::unbounded();
                    else f = ArcEnd::closed();
                    break;
                }
                case ArcEnd::Kind::Limit:
                    if (which == NetworkTransform::Inversion && at_origin(*e.limit)) f = ArcEnd::unbounded();
                    else f = ArcEnd::converging_to(map_point(*e.limit));
                    break;
                case ArcEnd::Kind::Unbounded:
                    if (which == NetworkTransform::Inversion) f = ArcEnd::converging_to(Point(q));
                    else if (which == NetworkTransform::Stereographic) f = ArcEnd::converging_to(north_pole(q));
                    else {
                        const auto u = settled_direction(a, high);
                        if (u) {
                            std::vector<double> c(u->vec());
                            c.push_back(0.0);
                            f = ArcEnd::converging_to(Point(std::move(c)));
                        } else {
                            f = ArcEnd::open();
                        }
                    }
                    break;
                case ArcEnd::Kind::Open: f = ArcEnd::open(); break;
            }
        }
        b.t_mono = std::numeric_limits<double>::quiet_NaN();
        out.arcs.push_back(std::move(b));
    }
    for (const auto& j : net.junctions) {
        if (which == NetworkTransform::Inversion && at_origin(j)) continue;
        out.junctions.push_back(map_point(j));
    }
    return out;
}

ArcNetwork ray_network(const Point& vertex, const std::vector<UnitDirection>& directions) {
    ArcNetwork net;
    net.metric = AmbientMetric::euclidean(vertex.dim());
    for (std::size_t i = 0; i < directions.size(); ++i) {
        const Point u = directions[i].point();
        if (u.dim() != vertex.dim()) throw DimensionMismatch("ray direction and vertex differ in dimension");
        ParamArc a;
        a.label = fmt::format("ray{}", i);
        a.dim = vertex.dim();
        a.lo = 0.0;
        a.hi = std::numeric_limits<double>::infinity();
        a.lo_end = ArcEnd::closed();
        a.hi_end = ArcEnd::unbounded();
        a.t_mono = 0.0;
        a.map = [vertex, u](double t) { return ArcJet{vertex + u * t, u}; };
        net.arcs.push_back(std::move(a));
    }
    if (directions.size() > 1) net.junctions.push_back(vertex);
    return net;
}

}  // namespace lne
