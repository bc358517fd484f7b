#include "lne/implicit_sampling.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <set>

namespace lne {

namespace {

Eigen::MatrixXd jacobian_matrix(const ImplicitSet& set, const Point& x) {
    const auto jac = set.jacobian(x);
    Eigen::MatrixXd J(static_cast<Eigen::Index>(set.equations.size()), static_cast<Eigen::Index>(set.dim));
    for (Eigen::Index r = 0; r < J.rows(); ++r) {
        for (Eigen::Index c = 0; c < J.cols(); ++c) J(r, c) = jac[static_cast<std::size_t>(r * J.cols() + c)];
    }
    return J;
}

std::optional<Point> project(const ImplicitSet& set, Point x) {
    for (int it = 0; it < 30; ++it) {
        const auto f = set.values(x);
        Eigen::VectorXd F(static_cast<Eigen::Index>(f.size()));
        for (std::size_t i = 0; i < f.size(); ++i) F(static_cast<Eigen::Index>(i)) = f[i];
        const Eigen::MatrixXd J = jacobian_matrix(set, x);
        if (J.norm() == 0.0) return std::nullopt;
        if (F.norm() <= 1e-3 * kMemberTol * J.norm()) return x;
        const Eigen::VectorXd step = J.completeOrthogonalDecomposition().solve(F);
        for (std::size_t i = 0; i < set.dim; ++i) x[i] -= step(static_cast<Eigen::Index>(i));
        if (!x.finite()) return std::nullopt;
    }
    if (implicit_residual(set, x) <= kMemberTol) return x;
    return std::nullopt;
}

}  // namespace

double implicit_residual(const ImplicitSet& set, const Point& x) {
    const auto f = set.values(x);
    double fn = 0.0;
    for (double v : f) fn += v * v;
    const double jn = jacobian_matrix(set, x).norm();
    return std::sqrt(fn) / std::max(jn, 1e-300);
}

Sample sample_implicit(const ImplicitSet& set, std::size_t budget) {
    const std::size_t q = set.dim;
    const std::size_t n = q <= 1 ? 4096 : q == 2 ? std::clamp<std::size_t>(budget, 256, 1024) : q == 3 ? 128 : 24;
    const double h = 2.0 * set.box / static_cast<double>(n);

    Sample cand;
    cand.metric = AmbientMetric::euclidean(q);
    std::vector<std::size_t> idx(q, 0);
    std::size_t cell = 0;
    for (;;) {
        Point x(q);
        for (std::size_t i = 0; i < q; ++i) x[i] = -set.box + (static_cast<double>(idx[i]) + 0.5) * h;
        try {
            if (implicit_residual(set, x) <= h) {
                if (auto p = project(set, x)) {
                    bool inside = true;
                    for (std::size_t i = 0; i < q; ++i) inside = inside && std::abs((*p)[i]) <= set.box;
                    if (inside) {
                        Provenance prov;
                        prov.source = Provenance::Source::Implicit;
                        prov.index = cell;
                        cand.add(*p, prov);
                    }
                }
            }
        } catch (const Error&) {
        }
        ++cell;
        std::size_t k = 0;
        while (k < q && ++idx[k] == n) idx[k++] = 0;
        if (k == q) break;
    }
    if (cand.empty()) throw EmptySample("implicit set has no points in its box");

    // drop near-duplicates produced by neighbouring grid nodes
    std::set<std::vector<long long>> seen;
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < cand.size(); ++i) {
        std::vector<long long> key(q);
        for (std::size_t k = 0; k < q; ++k) key[k] = std::llround(cand.points[i][k] / (0.5 * h));
        if (seen.insert(std::move(key)).second) keep.push_back(i);
    }
    std::sort(keep.begin(), keep.end());
    Sample s = cand.subset(keep);
    if (s.size() > budget) {
        auto pick = farthest_point_order(s, budget);
        std::sort(pick.begin(), pick.end());
        s = s.subset(pick);
    }
    return s;
}

std::vector<std::size_t> farthest_point_order(const Sample& s, std::size_t count) {
    const std::size_t n = s.size();
    count = std::min(count, n);
    std::vector<std::size_t> out;
    if (count == 0) return out;
    std::vector<double> best(n, std::numeric_limits<double>::infinity());
    std::size_t cur = 0;
    for (std::size_t k = 0; k < count; ++k) {
        out.push_back(cur);
        std::size_t next = 0;
        double far = -1.0;
        for (std::size_t i = 0; i < n; ++i) {
            best[i] = std::min(best[i], ambient_distance(s.metric, s.points[i], s.points[cur]));
            if (best[i] > far) {
                far = best[i];
                next = i;
            }
        }
        cur = next;
    }
    return out;
}

}  // namespace lne
