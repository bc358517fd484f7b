#include <gtest/gtest.h>

#include <numbers>

#include "lne/geometry.hpp"
#include "support.hpp"

using namespace lne;

namespace {

void expect_point(const Point& got, const Point& want, double tol) {
    ASSERT_EQ(got.dim(), want.dim());
    for (std::size_t k = 0; k < got.dim(); ++k) EXPECT_NEAR(got[k], want[k], tol) << "coordinate " << k;
}

}  // namespace

TEST(Invert, FixesTheUnitSphere) { expect_point(invert(Point{1, 0}), Point{1, 0}, 0.0); }

TEST(Invert, ReciprocalRadiusOnAxis) { expect_point(invert(Point{2, 0}), Point{0.5, 0}, 1e-15); }

TEST(Invert, IsAnInvolution) {
    const Point x{0.3, -1.7, 2.4};
    expect_point(invert(invert(x)), x, 1e-12);
}

TEST(Invert, RejectsTheOrigin) {
    EXPECT_THROW(invert(Point{0, 0}), DomainError);
    EXPECT_THROW(invert(Point{1e-10, 0}), DomainError);
}

TEST(Stereo, OriginGoesToTheSouthPole) { expect_point(stereo_to_sphere(Point{0, 0}), Point{0, 0, -1}, 0.0); }

TEST(Stereo, UnitCircleGoesToTheEquator) { expect_point(stereo_to_sphere(Point{1, 0}), Point{1, 0, 0}, 1e-15); }

TEST(Stereo, FormulaAtRadiusFive) {
    const Point y = stereo_to_sphere(Point{3, 4});
    expect_point(y, Point{6.0 / 26.0, 8.0 / 26.0, 24.0 / 26.0}, 1e-15);
    EXPECT_NEAR(y.norm(), 1.0, 1e-15);
}

TEST(Stereo, InverseOnExamples) {
    expect_point(stereo_from_sphere(Point{0, 0, -1}), Point{0, 0}, 0.0);
    expect_point(stereo_from_sphere(Point{1, 0, 0}), Point{1, 0}, 1e-15);
    EXPECT_THROW(stereo_from_sphere(Point{0, 0, 1}), DomainError);
}

TEST(Stereo, RoundTripUpToAMillion) {
    std::mt19937_64 rng(7);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const Point x = test::random_point(rng, 2, -3.0, 6.0);
        worst = std::max(worst, distance(stereo_from_sphere(stereo_to_sphere(x)), x) / std::max(1.0, x.norm()));
    }
    EXPECT_LT(worst, 1e-8);
}

TEST(PhiChart, Examples) {
    expect_point(phi_chart(Point{0, 0}), Point{0, 0, 1}, 0.0);
    expect_point(phi_chart(Point{0.5, 0}), Point{0.8, 0, 0.6}, 1e-15);
    expect_point(phi_chart(invert(Point{4, 0})), Point{8.0 / 17.0, 0, 15.0 / 17.0}, 1e-12);
    expect_point(stereo_to_sphere(Point{4, 0}), Point{8.0 / 17.0, 0, 15.0 / 17.0}, 1e-12);
    EXPECT_THROW(phi_chart(Point{0.6, 0}), DomainError);
}

TEST(AmbientDistance, Examples) {
    EXPECT_DOUBLE_EQ(ambient_distance(AmbientMetric::euclidean(2), Point{0, 0}, Point{3, 4}), 5.0);
    EXPECT_DOUBLE_EQ(ambient_distance(AmbientMetric::sphere(2), north_pole(2), south_pole(2)), 2.0);
    EXPECT_NEAR(ambient_distance(AmbientMetric::projective(2), Point{1, 0, 0}, Point{-1, 0, 0}), 0.0, 1e-15);
    EXPECT_THROW(ambient_distance(AmbientMetric::euclidean(2), Point{0, 0}, Point{0, 0, 0}), DimensionMismatch);
}

TEST(AmbientDistance, ProjectiveIgnoresSigns) {
    std::mt19937_64 rng(11);
    const auto m = AmbientMetric::projective(2);
    for (int i = 0; i < 10000; ++i) {
        const Point u = UnitDirection(test::random_point(rng, 3, 0, 0)).point();
        const Point v = UnitDirection(test::random_point(rng, 3, 0, 0)).point();
        const double d = ambient_distance(m, u, v);
        ASSERT_NEAR(ambient_distance(m, u * -1.0, v), d, 1e-12);
        ASSERT_NEAR(ambient_distance(m, u, v * -1.0), d, 1e-12);
        ASSERT_LE(d, std::numbers::pi / 2 + 1e-12);
    }
}

TEST(CosineGap, Examples) {
    EXPECT_NEAR(cosine_gap(1, 1, std::numbers::pi / 2), 2.0, 1e-15);
    EXPECT_NEAR(cosine_gap(1, 3, 0), 2.0, 1e-15);
    EXPECT_NEAR(cosine_gap(2, 3, std::numbers::pi / 6), std::sqrt(7.0), 1e-12);
    // the same pair written out as planar vectors at angle pi/3
    const Point a{2, 0}, b{3 * std::cos(std::numbers::pi / 3), 3 * std::sin(std::numbers::pi / 3)};
    EXPECT_NEAR(distance(a, b), std::sqrt(7.0), 1e-12);
}

TEST(CosineGap, MatchesPlanarDistance) {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> r(0.0, 100.0), th(0.0, std::numbers::pi / 2), phase(-4.0, 4.0);
    for (int i = 0; i < 10000; ++i) {
        const double y = r(rng), t = r(rng), theta = th(rng), a = phase(rng);
        const Point u1{std::cos(a), std::sin(a)}, u2{std::cos(a + 2 * theta), std::sin(a + 2 * theta)};
        ASSERT_NEAR(cosine_gap(y, t, theta), distance(u1 * y, u2 * t), 1e-9 * (1 + y + t));
    }
}

// Transform identities over 10^4 random points in dimensions 1 to 4.
class TransformIdentities : public ::testing::TestWithParam<std::size_t> {};

TEST_P(TransformIdentities, InversionIsAnInvolution) {
    std::mt19937_64 rng(100 + GetParam());
    double worst = 0.0;
    for (int i = 0; i < 10000; ++i) {
        const Point x = test::random_point(rng, GetParam(), -6.0, 6.0);
        worst = std::max(worst, distance(invert(invert(x)), x) / x.norm());
    }
    EXPECT_LT(worst, 1e-10);
}

TEST_P(TransformIdentities, StereoLandsOnTheSphere) {
    std::mt19937_64 rng(200 + GetParam());
    double worst = 0.0;
    for (int i = 0; i < 10000; ++i) {
        const Point y = stereo_to_sphere(test::random_point(rng, GetParam(), -6.0, 6.0));
        worst = std::max(worst, std::abs(y.norm() - 1.0));
        ASSERT_LT(y[GetParam()], 1.0);
    }
    EXPECT_LT(worst, 1e-12);
}

TEST_P(TransformIdentities, PhiAfterInversionIsStereo) {
    std::mt19937_64 rng(300 + GetParam());
    double worst = 0.0;
    for (int i = 0; i < 10000; ++i) {
        // |x| >= 2 is where the chart is defined on iota(x)
        const Point x = test::random_point(rng, GetParam(), std::log10(2.0), 6.0);
        worst = std::max(worst, distance(phi_chart(invert(x)), stereo_to_sphere(x)));
    }
    EXPECT_LT(worst, 1e-10);
}

TEST_P(TransformIdentities, StereoRoundTrip) {
    std::mt19937_64 rng(400 + GetParam());
    double worst = 0.0;
    for (int i = 0; i < 10000; ++i) {
        const Point x = test::random_point(rng, GetParam(), -6.0, 4.0);
        worst = std::max(worst, distance(stereo_from_sphere(stereo_to_sphere(x)), x) / std::max(1.0, x.norm()));
    }
    EXPECT_LT(worst, 1e-8);
}

INSTANTIATE_TEST_SUITE_P(Dimensions, TransformIdentities, ::testing::Values(1, 2, 3, 4));

TEST(Point, RejectsNonFiniteCoordinates) {
    EXPECT_THROW(Point({1.0, std::nan("")}), Error);
    EXPECT_THROW(Point(std::vector<double>{INFINITY}), Error);
}

TEST(UnitDirection, IsNormalized) {
    const UnitDirection u(Point{3, 4});
    EXPECT_NEAR(u.point().norm(), 1.0, 1e-12);
    EXPECT_NEAR(angle_between(u, UnitDirection(Point{-3, -4})), std::numbers::pi, 1e-12);
}
