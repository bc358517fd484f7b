#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "lne/inner_metric.hpp"
#include "support.hpp"

using namespace lne;

namespace {

constexpr double kPi = std::numbers::pi;

// Closed form of the parabola's arc length from 0 to u.
double parabola_length(double u) { return 0.5 * (u * std::sqrt(1 + 4 * u * u) + 0.5 * std::asinh(2 * u)); }

Sample circle_cloud(std::size_t n) {
    std::vector<Point> pts;
    for (std::size_t i = 0; i < n; ++i) {
        const double a = 2 * kPi * static_cast<double>(i) / static_cast<double>(n);
        pts.push_back(Point{std::cos(a), std::sin(a)});
    }
    return test::cloud_sample(pts);
}

}  // namespace

TEST(ArcLength, Segment) {
    const auto d = test::descriptor("segment");
    EXPECT_NEAR(total_length(d.network().arcs[0]), 1.0, 1e-12);
}

TEST(ArcLength, HalfCircle) {
    const auto d = test::descriptor("half_circle");
    EXPECT_NEAR(total_length(d.network().arcs[0]), kPi, 1e-9);
}

TEST(ArcLength, SpiralTurn) {
    const auto d = test::descriptor("spiral");
    EXPECT_NEAR(arc_length(d.network().arcs[0], 0.0, 1.0), std::sqrt(1 + 4 * kPi * kPi) * (std::numbers::e - 1), 1e-8);
}

TEST(ArcLength, SpiralTailToTheOrigin) {
    // from t = 0 down to the limit point the length is sqrt(1 + 4 pi^2)
    const auto d = test::descriptor("spiral");
    EXPECT_NEAR(length_to_end(d.network().arcs[0], 0.0, false), std::sqrt(1 + 4 * kPi * kPi), 1e-6);
    EXPECT_TRUE(std::isinf(length_to_end(d.network().arcs[0], 0.0, true)));
}

TEST(NetworkDistance, ParabolaAcrossTheVertex) {
    const auto d = test::descriptor("parabola");
    EXPECT_NEAR(network_inner_distance(d.network(), {"p", -10.0}, {"p", 10.0}), 2 * parabola_length(10.0), 1e-7);
    EXPECT_NEAR(network_inner_distance(d.network(), {"p", 3.0}, {"p", 10.0}),
                parabola_length(10.0) - parabola_length(3.0), 1e-7);
}

TEST(NetworkDistance, CuspBranchesMeetAtTheOrigin) {
    const auto d = test::descriptor("cusp");
    // length of (t^2, t^3) on [0, 1]: ((4 + 9)^(3/2) - 8) / 27
    const double branch = (std::pow(13.0, 1.5) - 8.0) / 27.0;
    EXPECT_NEAR(network_inner_distance(d.network(), {"upper", 1.0}, {"lower", 1.0}), 2 * branch, 1e-8);
}

TEST(NetworkDistance, CircleTakesTheShortWay) {
    const auto d = test::descriptor("circle");
    EXPECT_NEAR(network_inner_distance(d.network(), {"c", 0.1}, {"c", 0.9}), 0.4 * kPi, 1e-8);
    EXPECT_NEAR(network_inner_distance(d.network(), {"c", 0.0}, {"c", 0.5}), kPi, 1e-8);
}

TEST(Graph, PathExample) {
    const Sample s = test::cloud_sample({Point{0, 0}, Point{1, 0}, Point{2, 0}, Point{10, 0}});
    const ProximityGraph g = build_graph(s, 1.0);
    EXPECT_EQ(g.num_components, 2);
    EXPECT_DOUBLE_EQ(inner_distance(g, 0, 2), 2.0);
    EXPECT_TRUE(std::isinf(inner_distance(g, 0, 3)));
}

TEST(Graph, RightAngleDetour) {
    const Sample s = test::cloud_sample({Point{0, 0}, Point{1, 0}, Point{1, 1}});
    const ProximityGraph g = build_graph(s, 1.0);
    EXPECT_DOUBLE_EQ(inner_distance(g, 0, 2), 2.0);
    EXPECT_DOUBLE_EQ(inner_distance(build_graph(s, 1.5), 0, 2), std::sqrt(2.0));
}

TEST(Graph, CircleAntipodes) {
    const Sample s = circle_cloud(1000);
    const auto m = make_graph_metric(s);
    EXPECT_NEAR(m->distance(0, 500), kPi, 0.03 * kPi);
}

TEST(Graph, RefinementApproachesTheArc) {
    double prev_err = INFINITY;
    for (std::size_t n : {100u, 200u, 400u, 800u}) {
        const Sample s = circle_cloud(n);
        const double err = std::abs(make_graph_metric(s)->distance(0, n / 4) - kPi / 2);
        EXPECT_LE(err, prev_err + 1e-12) << n;
        prev_err = err;
    }
    EXPECT_LT(prev_err, 1e-3);
}

TEST(Graph, RejectsNonPositiveScale) {
    const Sample s = circle_cloud(10);
    EXPECT_THROW(build_graph(s, 0.0), ScaleError);
    EXPECT_THROW(build_graph(s, -1.0), ScaleError);
}

TEST(Invariants, InnerDominatesOuterAndSatisfiesTheTriangleInequality) {
    for (const char* name : {"spiral", "parabola", "cusp", "gamma_plus", "sin_e_0p5"}) {
        const auto d = test::descriptor(name);
        const Sample s = sample_descriptor(d, 600, 0.0, 1e3);
        const auto m = make_inner_metric(d, s);
        std::mt19937_64 rng(5);
        std::uniform_int_distribution<std::size_t> pick(0, s.size() - 1);
        for (int k = 0; k < 3000; ++k) {
            const std::size_t i = pick(rng), j = pick(rng), l = pick(rng);
            const double dij = m->distance(i, j);
            ASSERT_NEAR(dij, m->distance(j, i), 1e-9 * (1 + dij)) << name;
            ASSERT_GE(dij * (1 + 1e-9) + 1e-12, distance(s.points[i], s.points[j])) << name;
            ASSERT_LE(dij, (m->distance(i, l) + m->distance(l, j)) * (1 + 1e-9) + 1e-12) << name;
        }
    }
}

TEST(Invariants, GraphAgreesWithTheExactMetricOnASmoothArc) {
    const auto d = test::descriptor("half_circle");
    const Sample s = sample_descriptor(d, 2000, 0.0, INFINITY);
    const NetworkMetric exact(d.network(), s);
    const auto graph = make_graph_metric(s);
    for (std::size_t j = 1; j < s.size(); j += 97) {
        EXPECT_NEAR(graph->distance(0, j), exact.distance(0, j), 0.01 * exact.distance(0, j) + 1e-9);
    }
}

// For a definable arc going to infinity the length from a fixed point grows
// like |gamma(t)|, with a ratio that settles down.
TEST(Invariants, LengthToRadiusSettlesOnDefinableArcs) {
    for (const char* name : {"parabola", "gamma_plus", "line", "ray", "sin_e_m0p5"}) {
        const auto d = test::descriptor(name);
        const ParamArc& a = d.network().arcs.back();
        const double t0 = std::isfinite(a.lo) ? a.lo : 0.0;
        std::vector<double> ratio;
        for (double R : {1e2, 1e3}) {
            double t = t0 + 1.0;
            while (a.position(t).norm() < R) t = t0 + 2 * (t - t0);
            double lo = t0 + 0.5 * (t - t0), hi = t;
            for (int it = 0; it < 200; ++it) {
                const double mid = 0.5 * (lo + hi);
                (a.position(mid).norm() < R ? lo : hi) = mid;
            }
            ratio.push_back(arc_length(a, t0, hi) / R);
        }
        EXPECT_GE(ratio[0], 1.0 - a.position(t0).norm() / 1e2) << name;
        EXPECT_NEAR(ratio[1] / ratio[0], 1.0, 0.1) << name;
    }
}
