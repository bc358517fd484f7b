#include "lne/set_model.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <map>
#include <numeric>

namespace lne {

namespace {

struct DisjointSets {
    std::vector<std::size_t> parent;
    explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    std::size_t find(std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
};

// Group slice members (given as input-sample indices) by label and order the
// groups by (smallest radius, lexicographically smallest point).
ComponentSplit assemble(const Sample& s, double R, double eps, const std::vector<std::size_t>& members,
                        const std::vector<std::size_t>& labels) {
    std::map<std::size_t, std::vector<std::size_t>> groups;
    for (std::size_t k = 0; k < members.size(); ++k) groups[labels[k]].push_back(members[k]);
    std::vector<std::vector<std::size_t>> parts;
    for (auto& [_, g] : groups) parts.push_back(std::move(g));
    auto key = [&](const std::vector<std::size_t>& g) {
        double rmin = std::numeric_limits<double>::infinity();
        const Point* pmin = nullptr;
        for (std::size_t i : g) {
            rmin = std::min(rmin, s.radial[i]);
            if (!pmin || s.points[i].vec() < pmin->vec()) pmin = &s.points[i];
        }
        return std::make_pair(rmin, pmin->vec());
    };
    std::vector<std::pair<std::pair<double, std::vector<double>>, std::size_t>> order;
    for (std::size_t p = 0; p < parts.size(); ++p) order.push_back({key(parts[p]), p});
    std::sort(order.begin(), order.end());
    ComponentSplit cs;
    cs.radius = R;
    cs.eps = eps;
    for (const auto& [_, p] : order) {
        cs.indices.push_back(parts[p]);
        cs.parts.push_back(s.subset(parts[p]));
    }
    return cs;
}

}  // namespace

ComponentSplit split_components_at_radius(const Sample& s, double R, double eps) {
    const auto members = slice_indices(s, SliceMode::ge(R));
    if (members.empty()) throw EmptySample(fmt::format("slice |x| >= {} is empty", R));
    const Sample sl = s.subset(members);
    if (!(eps > 0.0)) eps = 3.0 * median_nn_spacing(sl);
    std::vector<std::size_t> labels(members.size(), 0);
    if (members.size() > 1) {
        const ProximityGraph g = build_graph(sl, eps);
        for (std::size_t k = 0; k < members.size(); ++k) labels[k] = static_cast<std::size_t>(g.component[k]);
    }
    return assemble(s, R, eps, members, labels);
}

ComponentSplit split_network_at_radius(const ArcNetwork& net, const Sample& s, double R) {
    return split_network_where(net, s, [R](double r) { return r >= R; }, R);
}

ComponentSplit split_network_where(const ArcNetwork& net, const Sample& s, const std::function<bool(double)>& keep,
                                   double R) {
    const NetworkTopology topo = topology(net);
    const std::size_t n = s.size();
    DisjointSets ds(n);
    auto inside = [&](std::size_t i) { return keep(s.radial[i]); };

    std::vector<std::vector<std::size_t>> on_arc(net.arcs.size());
    std::vector<int> node_sample(topo.nodes.size(), -1);
    for (std::size_t i = 0; i < n; ++i) {
        const Provenance& p = s.provenance[i];
        if (p.source == Provenance::Source::Arc && p.arc >= 0) {
            on_arc[static_cast<std::size_t>(p.arc)].push_back(i);
        } else if (p.source == Provenance::Source::Node) {
            const int id = topo.find(s.points[i], net.metric.kind);
            if (id >= 0) node_sample[static_cast<std::size_t>(id)] = static_cast<int>(i);
        }
    }
    for (std::size_t a = 0; a < net.arcs.size(); ++a) {
        auto& idx = on_arc[a];
        if (idx.empty()) continue;
        std::sort(idx.begin(), idx.end(), [&](auto x, auto y) {
            return s.provenance[x].param != s.provenance[y].param ? s.provenance[x].param < s.provenance[y].param : x < y;
        });
        const ParamArc& arc = net.arcs[a];
        for (std::size_t k = 0; k + 1 < idx.size(); ++k) {
            const std::size_t i = idx[k], j = idx[k + 1];
            if (!inside(i) || !inside(j)) continue;
            // the stretch between neighbours must stay in the region as well
            const double mid = 0.5 * (s.provenance[i].param + s.provenance[j].param);
            if (keep(arc.position(mid).norm())) ds.unite(i, j);
        }
        const auto [lo, hi] = topo.end_node[a];
        for (const auto& [node, extreme] : {std::pair{lo, idx.front()}, std::pair{hi, idx.back()}}) {
            if (node < 0) continue;
            const int ns = node_sample[static_cast<std::size_t>(node)];
            if (ns >= 0 && inside(static_cast<std::size_t>(ns)) && inside(extreme)) {
                ds.unite(static_cast<std::size_t>(ns), extreme);
            }
        }
    }
    std::vector<std::size_t> members, labels;
    for (std::size_t i = 0; i < n; ++i) {
        if (!inside(i)) continue;
        members.push_back(i);
        labels.push_back(ds.find(i));
    }
    if (members.empty()) throw EmptySample(fmt::format("no sample points in the region at R = {}", R));
    return assemble(s, R, 0.0, members, labels);
}

namespace {

Point normalized(const Point& p) { return p * (1.0 / p.norm()); }

// Single-linkage groups of unit vectors at angular threshold delta.
std::vector<std::size_t> link_directions(const std::vector<Point>& dirs, double delta) {
    DisjointSets ds(dirs.size());
    const double chord = 2.0 * std::sin(delta / 2.0);
    for (std::size_t i = 0; i < dirs.size(); ++i) {
        for (std::size_t j = i + 1; j < dirs.size(); ++j) {
            if (ds.find(i) != ds.find(j) && distance(dirs[i], dirs[j]) <= chord) ds.unite(i, j);
        }
    }
    std::vector<std::size_t> label(dirs.size());
    for (std::size_t i = 0; i < dirs.size(); ++i) label[i] = ds.find(i);
    return label;
}

// One Aitken step per coordinate over the sequence x0, x1, x2 (x2 newest),
// keeping x2 wherever the increments do not shrink geometrically.
Point aitken(const Point& x0, const Point& x1, const Point& x2) {
    Point out = x2;
    for (std::size_t c = 0; c < x2.dim(); ++c) {
        const double d1 = x1[c] - x0[c], d2 = x2[c] - x1[c];
        if (std::abs(d2) <= 1e-13 || std::abs(d1) <= 1e-13) continue;
        const double r = d2 / d1;
        if (r <= 0.0 || r > 0.85) continue;
        out[c] = x2[c] + d2 * r / (1.0 - r);
    }
    return out;
}

}  // namespace

AsymptoticSet asymptotic_set(const Sample& s, const std::optional<Point>& anchor, double delta_bin, bool extrapolate) {
    if (!(delta_bin > 0.0)) throw Error("angular resolution must be positive");
    AsymptoticSet out;
    out.resolution = delta_bin;
    out.anchor = anchor;

    std::vector<double> rho(s.size());
    std::vector<Point> dir(s.size());
    double extreme = anchor ? std::numeric_limits<double>::infinity() : 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        const Point v = anchor ? s.points[i] - *anchor : s.points[i];
        rho[i] = v.norm();
        if (rho[i] <= 1e-12 * (1.0 + (anchor ? anchor->norm() : 0.0))) {
            rho[i] = std::numeric_limits<double>::quiet_NaN();
            continue;
        }
        dir[i] = v * (1.0 / rho[i]);
        extreme = anchor ? std::min(extreme, rho[i]) : std::max(extreme, rho[i]);
    }
    // band k: [R/2^(k+1), R/2^k] at infinity, [r 2^k, r 2^(k+1)] at a point
    auto band_of = [&](std::size_t i) -> int {
        if (std::isnan(rho[i])) return -1;
        const double x = anchor ? rho[i] / extreme : extreme / rho[i];
        const int k = static_cast<int>(std::floor(std::log2(x)));
        return std::clamp(k, 0, 1000);
    };
    std::vector<std::vector<std::size_t>> bands(3);
    for (std::size_t i = 0; i < s.size(); ++i) {
        const int k = band_of(i);
        if (k >= 0 && k < 3) bands[static_cast<std::size_t>(k)].push_back(i);
    }
    if (bands[0].size() < kMinTailPoints) {
        throw InsufficientTail(fmt::format("only {} points in the extreme dyadic band (need {})", bands[0].size(),
                                           kMinTailPoints));
    }

    std::vector<Point> top;
    for (std::size_t i : bands[0]) top.push_back(dir[i]);
    const auto label = link_directions(top, delta_bin);
    std::vector<std::size_t> roots;
    for (std::size_t l : label) {
        if (std::find(roots.begin(), roots.end(), l) == roots.end()) roots.push_back(l);
    }
    const std::size_t nc = roots.size();
    const std::size_t dim = top[0].dim();
    std::vector<std::vector<Point>> means(3, std::vector<Point>(nc, Point(dim)));
    std::vector<std::vector<std::size_t>> counts(3, std::vector<std::size_t>(nc, 0));
    for (std::size_t k = 0; k < top.size(); ++k) {
        const std::size_t c = static_cast<std::size_t>(std::find(roots.begin(), roots.end(), label[k]) - roots.begin());
        means[0][c] += top[k];
        ++counts[0][c];
    }
    for (std::size_t c = 0; c < nc; ++c) means[0][c] = normalized(means[0][c]);

    std::vector<Point> result = means[0];
    std::vector<double> weight(nc);
    for (std::size_t c = 0; c < nc; ++c) weight[c] = static_cast<double>(counts[0][c]);
    if (extrapolate) {
        for (std::size_t b = 1; b < 3; ++b) {
            for (std::size_t i : bands[b]) {
                std::size_t best = 0;
                double bd = std::numeric_limits<double>::infinity();
                for (std::size_t c = 0; c < nc; ++c) {
                    const double d = distance(dir[i], means[0][c]);
                    if (d < bd) {
                        bd = d;
                        best = c;
                    }
                }
                means[b][best] += dir[i];
                ++counts[b][best];
            }
        }
        for (std::size_t c = 0; c < nc; ++c) {
            if (counts[1][c] == 0 || counts[2][c] == 0) continue;
            const Point x = aitken(normalized(means[2][c]), normalized(means[1][c]), means[0][c]);
            if (x.norm() > 0.0) result[c] = normalized(x);
        }
    }
    // clusters that meet after extrapolation are one direction
    const auto merged = link_directions(result, delta_bin);
    std::vector<std::size_t> seen;
    for (std::size_t c = 0; c < nc; ++c) {
        if (std::find(seen.begin(), seen.end(), merged[c]) != seen.end()) continue;
        seen.push_back(merged[c]);
        Point sum(dim);
        for (std::size_t k = 0; k < nc; ++k) {
            if (merged[k] == merged[c]) sum += result[k] * weight[k];
        }
        out.directions.emplace_back(sum.norm() > 0.0 ? sum : result[c]);
    }
    return out;
}

SetDescriptor tangent_cone(const AsymptoticSet& a, const Point& vertex) {
    if (a.directions.empty()) throw Error("tangent cone of an empty direction set");
    SetDescriptor d;
    d.name = "tangent_cone";
    d.body = ray_network(vertex, a.directions);
    return d;
}

}  // namespace lne
