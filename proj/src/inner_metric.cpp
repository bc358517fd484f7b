#include "lne/inner_metric.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <limits>
#include <numeric>

namespace lne {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

std::vector<double> InnerMetric::distances_from(std::size_t i) const {
    std::vector<double> d(size());
    for (std::size_t j = 0; j < d.size(); ++j) d[j] = distance(i, j);
    return d;
}

NetworkMetric::NetworkMetric(const ArcNetwork& net, const Sample& s, double tol) {
    const NetworkTopology topo = topology(net);
    arc_nodes_ = topo.end_node;
    entries_.resize(s.size());

    std::vector<std::vector<std::size_t>> on_arc(net.arcs.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        const Provenance& p = s.provenance[i];
        if (p.source == Provenance::Source::Arc && p.arc >= 0 && static_cast<std::size_t>(p.arc) < net.arcs.size()) {
            on_arc[static_cast<std::size_t>(p.arc)].push_back(i);
        } else if (p.source == Provenance::Source::Node) {
            int id = topo.find(s.points[i], net.metric.kind);
            if (id < 0) id = p.node;
            if (id < 0 || static_cast<std::size_t>(id) >= topo.nodes.size()) {
                throw Error(fmt::format("sample point {} is not a node of the network", i));
            }
            entries_[i].node = id;
        } else {
            throw Error(fmt::format("sample point {} has no position on the network", i));
        }
    }

    const std::size_t nn = topo.nodes.size();
    node_dist_.assign(nn, std::vector<double>(nn, kInf));
    for (std::size_t n = 0; n < nn; ++n) node_dist_[n][n] = 0.0;

    for (std::size_t a = 0; a < net.arcs.size(); ++a) {
        const ParamArc& arc = net.arcs[a];
        auto& idx = on_arc[a];
        std::sort(idx.begin(), idx.end(), [&](auto x, auto y) {
            const double px = s.provenance[x].param, py = s.provenance[y].param;
            return px != py ? px < py : x < y;
        });
        double total;
        if (idx.empty()) {
            total = total_length(arc, tol);
        } else {
            const double first = s.provenance[idx.front()].param;
            const double lo_len = length_to_end(arc, first, false, tol);
            double acc = 0.0;
            double prev = first;
            for (std::size_t k : idx) {
                const double t = s.provenance[k].param;
                if (t > prev) acc += arc_length(arc, prev, t, tol);
                prev = t;
                entries_[k].arc = static_cast<int>(a);
                entries_[k].s = acc;
                entries_[k].to_lo = lo_len + acc;
            }
            const double hi_len = length_to_end(arc, prev, true, tol);
            for (std::size_t k : idx) entries_[k].to_hi = hi_len + (acc - entries_[k].s);
            total = lo_len + acc + hi_len;
        }
        const auto [u, v] = topo.end_node[a];
        if (u >= 0 && v >= 0 && std::isfinite(total)) {
            auto& w = node_dist_[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)];
            w = std::min(w, total);
            node_dist_[static_cast<std::size_t>(v)][static_cast<std::size_t>(u)] = w;
        }
    }
    for (std::size_t k = 0; k < nn; ++k) {
        for (std::size_t i = 0; i < nn; ++i) {
            for (std::size_t j = 0; j < nn; ++j) {
                node_dist_[i][j] = std::min(node_dist_[i][j], node_dist_[i][k] + node_dist_[k][j]);
            }
        }
    }
}

double NetworkMetric::node_distance(int a, int b) const {
    if (a < 0 || b < 0) return kInf;
    return node_dist_[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
}

double NetworkMetric::distance(std::size_t i, std::size_t j) const {
    if (i == j) return 0.0;
    const Entry& a = entries_[i];
    const Entry& b = entries_[j];
    // exits from a point: (node, length to it)
    auto exits = [&](const Entry& e, std::pair<int, double> out[2]) {
        if (e.arc < 0) {
            out[0] = {e.node, 0.0};
            out[1] = {-1, kInf};
            return;
        }
        const auto [lo, hi] = arc_nodes_[static_cast<std::size_t>(e.arc)];
        out[0] = {lo, e.to_lo};
        out[1] = {hi, e.to_hi};
    };
    std::pair<int, double> ea[2], eb[2];
    exits(a, ea);
    exits(b, eb);
    double best = kInf;
    if (a.arc >= 0 && a.arc == b.arc) best = std::abs(a.s - b.s);
    for (const auto& [na, la] : ea) {
        if (na < 0 || !std::isfinite(la)) continue;
        for (const auto& [nb, lb] : eb) {
            if (nb < 0 || !std::isfinite(lb)) continue;
            best = std::min(best, la + node_distance(na, nb) + lb);
        }
    }
    return best;
}

double network_inner_distance(const ArcNetwork& net, const NetworkPoint& p, const NetworkPoint& q, double tol) {
    Sample s;
    s.metric = net.metric;
    for (const auto* np : {&p, &q}) {
        const std::size_t a = net.arc_index(np->arc);
        const ParamArc& arc = net.arcs[a];
        if (!(np->param >= arc.lo && np->param <= arc.hi)) {
            throw Error(fmt::format("parameter {} is outside arc '{}'", np->param, np->arc));
        }
        Provenance prov;
        prov.source = Provenance::Source::Arc;
        prov.arc = static_cast<int>(a);
        prov.param = np->param;
        s.add(arc.position(np->param), prov);
    }
    const double d = NetworkMetric(net, s, tol).distance(0, 1);
    if (!std::isfinite(d)) {
        throw Unreachable(fmt::format("points on '{}' and '{}' lie in different components", p.arc, q.arc));
    }
    return d;
}

std::unique_ptr<InnerMetric> make_graph_metric(const Sample& s, double eps) {
    if (!(eps > 0.0)) eps = 3.0 * median_nn_spacing(s);
    return std::make_unique<GraphMetric>(build_graph(s, eps));
}

std::unique_ptr<InnerMetric> make_inner_metric(const SetDescriptor& d, const Sample& s, double eps) {
    if (d.is_network()) return std::make_unique<NetworkMetric>(d.network(), s);
    return make_graph_metric(s, eps);
}

}  // namespace lne
