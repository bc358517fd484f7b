#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <numeric>

#include "lne/arc_params.hpp"
#include "lne/implicit_sampling.hpp"
#include "lne/sample.hpp"

namespace lne {

void Sample::add(Point p, Provenance prov) {
    radial.push_back(p.norm());
    points.push_back(std::move(p));
    provenance.push_back(prov);
}

Sample Sample::subset(const std::vector<std::size_t>& indices) const {
    Sample out;
    out.metric = metric;
    out.points.reserve(indices.size());
    for (std::size_t i : indices) {
        out.points.push_back(points[i]);
        out.provenance.push_back(provenance[i]);
        out.radial.push_back(radial[i]);
    }
    return out;
}

Sample Sample::scaled(double lambda) const {
    if (metric.kind != AmbientMetric::Kind::Euclidean) throw Error("only euclidean samples can be scaled");
    Sample out = *this;
    for (std::size_t i = 0; i < out.size(); ++i) {
        out.points[i] *= lambda;
        out.radial[i] = out.points[i].norm();
    }
    return out;
}

namespace {

struct Node {
    double t;
    double rho;
    Point vel;
};

struct Segment {
    double a, b;
    double mass;
};

class ArcSampler {
public:
    ArcSampler(const ParamArc& arc, const SamplingPlan& plan, const Point& anchor)
        : arc_(arc), plan_(plan), anchor_(anchor) {}

    std::vector<Segment> segments() {
        const auto [ta, tb] = bounds();
        if (!(ta < tb)) return {};
        std::vector<double> grid = initial_grid(ta, tb);
        std::vector<Segment> out;
        for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
            Node a = eval(grid[i]), b = eval(grid[i + 1]);
            refine(a, b, 0, out);
        }
        return out;
    }

    double density(const Node& n) const {
        const double s = n.vel.norm();
        if (std::isinf(plan_.floor)) return s;
        return s / std::max(n.rho, plan_.floor);
    }

    bool in_range(double rho) const { return rho >= plan_.r_min && rho <= plan_.r_max; }

    Node eval(double t) const {
        const ArcJet j = arc_.jet(t);
        return {t, distance(j.pos, anchor_), j.vel};
    }

private:
    std::pair<double, double> bounds() const {
        approach_.clear();
        double lo = bound(false), hi = bound(true);
        return {lo, hi};
    }

    double bound(bool high) const {
        const ArcEnd& e = arc_.end(high);
        const double p = arc_.end_param(high);
        if (e.kind == ArcEnd::Kind::Closed) return p;
        const bool infinite = std::isinf(p);
        if (e.kind == ArcEnd::Kind::Unbounded && std::isinf(plan_.r_max)) {
            throw Error(fmt::format("arc '{}' is unbounded; sampling needs a finite r_max", arc_.label));
        }
        const double mono = arc_.t_mono;
        double last = reference_param(arc_);
        const int cap = infinite ? (e.kind == ArcEnd::Kind::Open ? 24 : 62) : 48;
        for (int k = 0; k <= cap; ++k) {
            const double t = approach_param(arc_, high, k);
            if (t == last && k > 0) break;
            Point pos;
            try {
                pos = arc_.position(t);
            } catch (const Error&) {
                break;
            }
            last = t;
            approach_.push_back(t);
            const double rho = distance(pos, anchor_);
            if (e.kind == ArcEnd::Kind::Unbounded) {
                const bool past_mono = std::isnan(mono) || (high ? t >= mono : t <= mono);
                if (rho > plan_.r_max * 1.0001 && past_mono) break;
            } else if (e.kind == ArcEnd::Kind::Limit) {
                const double to_limit = distance(pos, *e.limit);
                const double limit_rho = distance(*e.limit, anchor_);
                if (to_limit <= 1e-12 * (1.0 + e.limit->norm())) break;
                if (limit_rho + to_limit < plan_.r_min) break;
                if (limit_rho - to_limit > plan_.r_max) break;
            }
        }
        return last;
    }

    std::vector<double> initial_grid(double ta, double tb) const {
        std::vector<double> knots{ta, tb};
        for (double t : approach_) {
            if (t > ta && t < tb) knots.push_back(t);
        }
        std::sort(knots.begin(), knots.end());
        knots.erase(std::unique(knots.begin(), knots.end()), knots.end());
        std::vector<double> grid;
        constexpr int kSub = 64;
        for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
            for (int j = 0; j < kSub; ++j) grid.push_back(knots[i] + (knots[i + 1] - knots[i]) * j / kSub);
        }
        grid.push_back(knots.back());
        return grid;
    }

    double weighted_rho(double rho) const { return std::isinf(plan_.floor) ? 1.0 : std::max(rho, plan_.floor); }

    bool out_of_range(double r0, double r1, double r2) const {
        const double lo = std::min({r0, r1, r2}), hi = std::max({r0, r1, r2});
        return hi < plan_.r_min / 1.2 || lo > plan_.r_max * 1.2;
    }

    void refine(const Node& a, const Node& b, int depth, std::vector<Segment>& out) const {
        const double m = 0.5 * (a.t + b.t);
        const Node mid = eval(m);
        bool split = false;
        if (depth < 48 && (b.t - a.t) > 1e-13 * (1.0 + std::abs(a.t)) && !out_of_range(a.rho, mid.rho, b.rho)) {
            const double wa = weighted_rho(a.rho), wm = weighted_rho(mid.rho), wb = weighted_rho(b.rho);
            const double wlo = std::min({wa, wm, wb}), whi = std::max({wa, wm, wb});
            const double sa = a.vel.norm(), sm = mid.vel.norm(), sb = b.vel.norm();
            const double slo = std::min({sa, sm, sb}), shi = std::max({sa, sm, sb});
            double turn = 0.0;
            if (sa > 0.0 && sb > 0.0) turn = angle_between(UnitDirection(a.vel), UnitDirection(b.vel));
            split = whi > 1.05 * wlo || shi > 1.2 * slo || turn > 0.3;
            // a range boundary inside the segment is located by bisection
            for (double r : {plan_.r_min, plan_.r_max}) {
                if (std::isfinite(r) && r > 0.0 && (a.rho - r) * (b.rho - r) < 0.0 && (b.t - a.t) > 1e-12 * (1.0 + std::abs(a.t))) {
                    split = split || depth < 30;
                }
            }
        }
        if (split) {
            refine(a, mid, depth + 1, out);
            refine(mid, b, depth + 1, out);
            return;
        }
        double mass = 0.0;
        if (in_range(mid.rho)) mass = (b.t - a.t) / 6.0 * (density(a) + 4.0 * density(mid) + density(b));
        out.push_back({a.t, b.t, mass});
    }

    const ParamArc& arc_;
    const SamplingPlan& plan_;
    const Point& anchor_;
    mutable std::vector<double> approach_;
};

}  // namespace

Sample sample_network(const ArcNetwork& net, const SamplingPlan& plan) {
    if (plan.budget < 2) throw Error("sampling budget must be at least 2");
    if (!(plan.r_min < plan.r_max)) throw Error("sampling needs r_min < r_max");
    const Point anchor = plan.anchor.value_or(Point(net.coord_dim()));
    if (anchor.dim() != net.coord_dim()) throw DimensionMismatch("sampling anchor has the wrong dimension");

    Sample s;
    s.metric = net.metric;

    const NetworkTopology topo = topology(net);
    std::vector<int> node_points;
    if (plan.include_nodes) {
        for (std::size_t n = 0; n < topo.nodes.size(); ++n) {
            const double rho = distance(topo.nodes[n], anchor);
            if (rho >= plan.r_min && rho <= plan.r_max && topo.degree[n] > 0) node_points.push_back(static_cast<int>(n));
        }
    }

    std::vector<std::vector<Segment>> segs(net.arcs.size());
    double total = 0.0;
    for (std::size_t i = 0; i < net.arcs.size(); ++i) {
        ArcSampler sampler(net.arcs[i], plan, anchor);
        segs[i] = sampler.segments();
        for (const auto& sg : segs[i]) total += sg.mass;
    }

    const std::size_t n_arc = plan.budget > node_points.size() ? plan.budget - node_points.size() : 0;
    if (total > 0.0 && n_arc > 0) {
        std::size_t k = 0;
        double acc = 0.0;
        for (std::size_t i = 0; i < net.arcs.size() && k < n_arc; ++i) {
            for (const auto& sg : segs[i]) {
                while (k < n_arc) {
                    const double target = (static_cast<double>(k) + 0.5) / static_cast<double>(n_arc) * total;
                    if (target > acc + sg.mass) break;
                    const double frac = sg.mass > 0.0 ? (target - acc) / sg.mass : 0.5;
                    const double t = sg.a + std::clamp(frac, 0.0, 1.0) * (sg.b - sg.a);
                    Provenance prov;
                    prov.source = Provenance::Source::Arc;
                    prov.arc = static_cast<int>(i);
                    prov.param = t;
                    s.add(net.arcs[i].position(t), prov);
                    ++k;
                }
                acc += sg.mass;
            }
        }
        // round-off can leave the last quantile just past the final segment
        while (k < n_arc) {
            for (std::size_t i = net.arcs.size(); i-- > 0;) {
                if (segs[i].empty()) continue;
                const auto it = std::find_if(segs[i].rbegin(), segs[i].rend(), [](const Segment& g) { return g.mass > 0.0; });
                if (it == segs[i].rend()) continue;
                Provenance prov;
                prov.source = Provenance::Source::Arc;
                prov.arc = static_cast<int>(i);
                prov.param = 0.5 * (it->a + it->b);
                s.add(net.arcs[i].position(prov.param), prov);
                break;
            }
            ++k;
        }
    }
    for (int n : node_points) {
        Provenance prov;
        prov.source = Provenance::Source::Node;
        prov.node = n;
        s.add(topo.nodes[static_cast<std::size_t>(n)], prov);
    }
    if (s.empty()) throw EmptySample("descriptor has no points in the requested range");
    return s;
}

Sample sample_descriptor(const SetDescriptor& d, std::size_t budget, double r_min, double r_max) {
    validate(d);
    if (budget < 2) throw Error("sampling budget must be at least 2");
    if (!(r_min < r_max)) throw Error("sampling needs r_min < r_max");
    if (const auto* net = std::get_if<ArcNetwork>(&d.body)) {
        SamplingPlan plan;
        plan.budget = budget;
        plan.r_min = r_min;
        plan.r_max = r_max;
        plan.floor = net->unbounded() ? (r_min > 0.0 ? r_min : 1.0) : std::numeric_limits<double>::infinity();
        return sample_network(*net, plan);
    }
    if (const auto* imp = std::get_if<ImplicitSet>(&d.body)) {
        Sample s = sample_implicit(*imp, budget);
        std::vector<std::size_t> keep;
        for (std::size_t i = 0; i < s.size(); ++i) {
            if (s.radial[i] >= r_min && s.radial[i] <= r_max) keep.push_back(i);
        }
        if (keep.empty()) throw EmptySample("implicit set has no points in the requested range");
        return s.subset(keep);
    }
    const auto& cloud = std::get<PointCloud>(d.body);
    Sample s;
    s.metric = cloud.metric;
    for (std::size_t i = 0; i < cloud.points.size(); ++i) {
        const double r = cloud.points[i].norm();
        if (r < r_min || r > r_max) continue;
        Provenance prov;
        prov.source = Provenance::Source::Cloud;
        prov.index = i;
        s.add(cloud.points[i], prov);
    }
    if (s.empty()) throw EmptySample("point cloud has no points in the requested range");
    if (s.size() > budget) {
        std::vector<std::size_t> idx = farthest_point_order(s, budget);
        std::sort(idx.begin(), idx.end());
        s = s.subset(idx);
    }
    return s;
}

std::vector<std::size_t> slice_indices(const Sample& s, const SliceMode& mode) {
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < s.size(); ++i) {
        const double r = s.radial[i];
        bool ok = false;
        switch (mode.kind) {
            case SliceMode::Kind::LE: ok = r <= mode.t; break;
            case SliceMode::Kind::GE: ok = r >= mode.t; break;
            case SliceMode::Kind::EQ: ok = std::abs(r - mode.t) <= mode.band; break;
        }
        if (ok) keep.push_back(i);
    }
    return keep;
}

Sample slice(const Sample& s, const SliceMode& mode) {
    if (!(mode.t > 0.0)) throw Error("slice radius must be positive");
    if (mode.kind == SliceMode::Kind::EQ && !(mode.band > 0.0)) throw Error("slice band must be positive");
    const auto keep = slice_indices(s, mode);
    if (keep.empty()) throw EmptySample(fmt::format("slice at t = {} is empty", mode.t));
    return s.subset(keep);
}

double median_nn_spacing(const Sample& s) {
    const std::size_t n = s.size();
    if (n < 2) return 0.0;
    std::vector<double> nn(n, std::numeric_limits<double>::infinity());
    if (s.metric.kind == AmbientMetric::Kind::Projective) {
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                if (i != j) nn[i] = std::min(nn[i], ambient_distance(s.metric, s.points[i], s.points[j]));
            }
        }
    } else {
        // sweep along the first coordinate
        std::vector<std::size_t> order(n);
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](auto a, auto b) { return s.points[a][0] < s.points[b][0]; });
        for (std::size_t oi = 0; oi < n; ++oi) {
            const std::size_t i = order[oi];
            for (std::size_t oj = oi + 1; oj < n; ++oj) {
                const std::size_t j = order[oj];
                if (s.points[j][0] - s.points[i][0] >= nn[i]) break;
                const double d = distance(s.points[i], s.points[j]);
                nn[i] = std::min(nn[i], d);
                nn[j] = std::min(nn[j], d);
            }
            for (std::size_t oj = oi; oj-- > 0;) {
                const std::size_t j = order[oj];
                if (s.points[i][0] - s.points[j][0] >= nn[i]) break;
                nn[i] = std::min(nn[i], distance(s.points[i], s.points[j]));
            }
        }
    }
    std::nth_element(nn.begin(), nn.begin() + static_cast<std::ptrdiff_t>(n / 2), nn.end());
    return nn[n / 2];
}

}  // namespace lne
