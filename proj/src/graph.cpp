#include "lne/graph.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <limits>
#include <numbers>
#include <numeric>
#include <ostream>
#include <queue>

namespace lne {

namespace {

using CellKey = std::vector<long long>;

// Chordal search radius equivalent to eps under the metric.
double chord_radius(const AmbientMetric& m, double eps) {
    if (m.kind == AmbientMetric::Kind::Projective) return 2.0 * std::sin(std::min(eps, std::numbers::pi / 2) / 2.0);
    return eps;
}

CellKey cell_of(std::span<const double> p, double h) {
    CellKey k(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) k[i] = static_cast<long long>(std::floor(p[i] / h));
    return k;
}

}  // namespace

ProximityGraph build_graph(const Sample& s, double eps) {
    if (!(eps > 0.0)) throw ScaleError("graph scale must be positive");
    const std::size_t n = s.size();
    const std::size_t d = n ? s.points[0].dim() : 0;
    const bool projective = s.metric.kind == AmbientMetric::Kind::Projective;
    const double h = chord_radius(s.metric, eps);

    std::vector<CellKey> keys(n);
    for (std::size_t i = 0; i < n; ++i) keys[i] = cell_of(s.points[i].coords(), h);
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](auto a, auto b) { return keys[a] != keys[b] ? keys[a] < keys[b] : a < b; });
    std::vector<CellKey> sorted_keys(n);
    for (std::size_t i = 0; i < n; ++i) sorted_keys[i] = keys[order[i]];

    std::vector<std::vector<std::pair<std::size_t, double>>> adj(n);
    CellKey probe(d);
    auto scan = [&](std::size_t i, std::span<const double> q) {
        const CellKey base = cell_of(q, h);
        std::vector<int> off(d, -1);
        for (;;) {
            for (std::size_t k = 0; k < d; ++k) probe[k] = base[k] + off[k];
            auto [lo, hi] = std::equal_range(sorted_keys.begin(), sorted_keys.end(), probe);
            for (auto it = lo; it != hi; ++it) {
                const std::size_t j = order[static_cast<std::size_t>(it - sorted_keys.begin())];
                if (j <= i) continue;
                const double w = ambient_distance(s.metric.kind, s.points[i].coords(), s.points[j].coords());
                if (w <= eps && w > 0.0) adj[i].emplace_back(j, w);
            }
            std::size_t k = 0;
            while (k < d && ++off[k] == 2) off[k++] = -1;
            if (k == d) break;
        }
    };
    for (std::size_t i = 0; i < n; ++i) {
        scan(i, s.points[i].coords());
        if (projective) {
            const Point neg = s.points[i] * -1.0;
            scan(i, neg.coords());
        }
    }
    // symmetrize, dropping duplicates found through both representatives
    std::vector<std::vector<std::pair<std::size_t, double>>> full(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (auto [j, w] : adj[i]) {
            full[i].emplace_back(j, w);
            full[j].emplace_back(i, w);
        }
    }
    ProximityGraph g;
    g.metric = s.metric;
    g.eps = eps;
    g.offsets.assign(n + 1, 0);
    for (std::size_t i = 0; i < n; ++i) {
        auto& row = full[i];
        std::sort(row.begin(), row.end());
        row.erase(std::unique(row.begin(), row.end(), [](auto& a, auto& b) { return a.first == b.first; }), row.end());
        g.offsets[i + 1] = g.offsets[i] + row.size();
        for (auto [j, w] : row) {
            g.targets.push_back(j);
            g.weights.push_back(w);
        }
    }
    if (n >= 2 && g.targets.empty()) {
        throw ScaleError(fmt::format("graph is fully disconnected at scale {}", eps));
    }
    std::vector<std::size_t> all(n);
    std::iota(all.begin(), all.end(), 0);
    g.component = restricted_components(g, all, &g.num_components);
    return g;
}

std::vector<int> restricted_components(const ProximityGraph& g, std::span<const std::size_t> vertices, int* count) {
    std::vector<int> local(g.size(), -2);
    for (std::size_t k = 0; k < vertices.size(); ++k) local[vertices[k]] = -1;
    std::vector<int> label(vertices.size(), -1);
    int c = 0;
    std::vector<std::size_t> stack;
    for (std::size_t k = 0; k < vertices.size(); ++k) {
        const std::size_t v0 = vertices[k];
        if (local[v0] != -1) continue;
        local[v0] = c;
        stack.push_back(v0);
        while (!stack.empty()) {
            const std::size_t v = stack.back();
            stack.pop_back();
            for (std::size_t w : g.neighbors(v)) {
                if (local[w] == -1) {
                    local[w] = c;
                    stack.push_back(w);
                }
            }
        }
        ++c;
    }
    for (std::size_t k = 0; k < vertices.size(); ++k) label[k] = local[vertices[k]];
    if (count) *count = c;
    return label;
}

std::vector<double> single_source(const ProximityGraph& g, std::size_t source) {
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> dist(g.size(), inf);
    using Item = std::pair<double, std::size_t>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    dist[source] = 0.0;
    pq.push({0.0, source});
    while (!pq.empty()) {
        auto [d, u] = pq.top();
        pq.pop();
        if (d > dist[u]) continue;
        const auto nb = g.neighbors(u);
        const auto wt = g.neighbor_weights(u);
        for (std::size_t k = 0; k < nb.size(); ++k) {
            const double nd = d + wt[k];
            if (nd < dist[nb[k]]) {
                dist[nb[k]] = nd;
                pq.push({nd, nb[k]});
            }
        }
    }
    return dist;
}

double inner_distance(const ProximityGraph& g, std::size_t i, std::size_t j) {
    if (i == j) return 0.0;
    if (g.component[i] != g.component[j]) return std::numeric_limits<double>::infinity();
    return single_source(g, i)[j];
}

GeodesicTable geodesic_rows(const ProximityGraph& g, std::span<const std::size_t> sources) {
    GeodesicTable t;
    t.sources.assign(sources.begin(), sources.end());
    for (std::size_t s : sources) t.rows.push_back(single_source(g, s));
    return t;
}

GeodesicTable all_pairs(const ProximityGraph& g) {
    if (g.size() > kAllPairsLimit) {
        throw Error(fmt::format("all-pairs table limited to {} vertices (graph has {})", kAllPairsLimit, g.size()));
    }
    std::vector<std::size_t> all(g.size());
    std::iota(all.begin(), all.end(), 0);
    return geodesic_rows(g, all);
}

void write_csv(const GeodesicTable& t, std::ostream& out) {
    for (const auto& row : t.rows) {
        for (std::size_t j = 0; j < row.size(); ++j) {
            if (j) out << ',';
            if (std::isinf(row[j])) out << "inf";
            else out << fmt::format("{:.17g}", row[j]);
        }
        out << '\n';
    }
}

}  // namespace lne
