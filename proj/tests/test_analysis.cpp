#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "lne/analysis.hpp"
#include "support.hpp"

using namespace lne;

namespace {

constexpr double kPi = std::numbers::pi;
const double kSpiralBound = 1.05 * std::sqrt(1 + 4 * kPi * kPi);

SetDescriptor inline_descriptor(const std::string& text) {
    std::istringstream in(text);
    return parse_descriptor(in, "inline");
}

AnalysisConfig small(std::size_t budget = 3000) {
    AnalysisConfig cfg;
    cfg.budget = budget;
    return cfg;
}

std::vector<std::size_t> indices(std::size_t n) {
    std::vector<std::size_t> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = i;
    return v;
}

}  // namespace

TEST(Ladder, StableTailMeansLne) {
    const auto d = decide_ladder({1.0, 1.5, 1.56, 1.57, 1.571}, false, AnalysisConfig{});
    EXPECT_EQ(d.verdict, Verdict::Lne);
}

TEST(Ladder, ThreeGrowingStepsMeanNotLne) {
    EXPECT_EQ(decide_ladder({1.0, 1.3, 1.7, 2.2, 2.9}, false, AnalysisConfig{}).verdict, Verdict::NotLne);
    // two growing steps are not enough
    EXPECT_EQ(decide_ladder({1.0, 1.0, 1.0, 1.3, 1.7}, false, AnalysisConfig{}).verdict, Verdict::Inconclusive);
}

TEST(Ladder, InfinitePairMeansNotLne) {
    EXPECT_EQ(decide_ladder({1.0, 1.0, 1.0, 1.0}, true, AnalysisConfig{}).verdict, Verdict::NotLne);
}

TEST(Ladder, OscillationIsInconclusive) {
    EXPECT_EQ(decide_ladder({1.0, 2.0, 1.0, 2.0, 1.0}, false, AnalysisConfig{}).verdict, Verdict::Inconclusive);
}

TEST(Ladder, RadiiDouble) {
    EXPECT_EQ(ladder_radii(10.0, 4), (std::vector<double>{10, 20, 40, 80, 160}));
    EXPECT_THROW(ladder_radii(10.0, 2), Error);
    EXPECT_THROW(ladder_radii(0.0, 4), Error);
}

TEST(Global, SegmentIsFlat) {
    const LneReport r = glue_certify(test::descriptor("segment"), small(1000));
    EXPECT_EQ(r.verdict, Verdict::Lne);
    EXPECT_NEAR(r.constant, 1.0, 1e-6);
}

TEST(Global, CircleConstantIsHalfPi) {
    const LneReport r = glue_certify(test::descriptor("circle"), small(1000));
    EXPECT_EQ(r.verdict, Verdict::Lne);
    EXPECT_NEAR(r.constant, kPi / 2, 0.02 * kPi / 2);
}

TEST(Global, SpiralIsLneBelowItsBound) {
    const LneReport r = glue_certify(test::descriptor("spiral"), small(5000));
    EXPECT_EQ(r.verdict, Verdict::Lne) << r.reason;
    EXPECT_GE(r.constant, 1.0);
    EXPECT_LE(r.constant, kSpiralBound);
}

TEST(Global, ParabolaIsNotLne) {
    EXPECT_EQ(glue_certify(test::descriptor("parabola"), small()).verdict, Verdict::NotLne);
}

TEST(Global, GammaPlusIsLne) {
    const LneReport r = glue_certify(test::descriptor("gamma_plus"), small());
    EXPECT_EQ(r.verdict, Verdict::Lne) << r.reason;
    EXPECT_TRUE(std::isfinite(r.constant));
}

TEST(AtInfinity, Parabola) {
    const LneReport r = lne_at_infinity(test::descriptor("parabola"), small());
    EXPECT_EQ(r.verdict, Verdict::NotLne);
    ASSERT_GE(r.ladder.size(), 4u);
    for (std::size_t k = 1; k < r.ladder.size(); ++k) EXPECT_GT(r.ladder[k].K, r.ladder[k - 1].K);
}

TEST(AtInfinity, DampedOscillationIsLne) {
    EXPECT_EQ(lne_at_infinity(test::descriptor("sin_e_m0p5"), small()).verdict, Verdict::Lne);
}

TEST(AtInfinity, GrowingOscillationIsNotLne) {
    EXPECT_EQ(lne_at_infinity(test::descriptor("sin_e_0p5"), small()).verdict, Verdict::NotLne);
}

TEST(AtInfinity, LadderScalesIncrease) {
    const LneReport r = lne_at_infinity(test::descriptor("line"), small(1000));
    EXPECT_EQ(r.verdict, Verdict::Lne);
    for (std::size_t k = 1; k < r.ladder.size(); ++k) EXPECT_GT(r.ladder[k].scale, r.ladder[k - 1].scale);
}

TEST(AtPoint, CircleIsLne) {
    const LneReport r = lne_at_point(test::descriptor("circle"), Point{1, 0}, small(2000));
    EXPECT_EQ(r.verdict, Verdict::Lne) << r.reason;
    EXPECT_LT(r.constant, 1.1);
}

TEST(AtPoint, CuspIsNotLne) {
    EXPECT_EQ(lne_at_point(test::descriptor("cusp"), Point{0, 0}, small()).verdict, Verdict::NotLne);
}

TEST(AtPoint, SingleBranchOfASemicubicalCurveIsLne) {
    const auto d = inline_descriptor("name = branch\nkind = arcs\ndim = 2\n[arc b]\ncoords = t, t^1.5\nrange = 0, 1\n");
    EXPECT_EQ(lne_at_point(d, Point{0, 0}, small()).verdict, Verdict::Lne);
}

TEST(AtPoint, PointOffTheSetIsRejected) {
    EXPECT_THROW(lne_at_point(test::descriptor("segment"), Point{0.5, 1.0}, small()), Error);
}

TEST(Obstruction, SharedDirection) {
    for (const char* name : {"parabola", "gamma_zero"}) {
        const auto d = test::descriptor(name);
        const Sample s = sample_descriptor(d, 4000, 0.0, 1e5);
        const Obstruction o = shared_direction_obstruction(split_network_at_radius(d.network(), s, 10.0));
        EXPECT_TRUE(o.obstructed) << name;
        ASSERT_TRUE(o.direction) << name;
        EXPECT_LT(angle_between(*o.direction, UnitDirection(Point{0, 1})), 0.05) << name;
    }
}

TEST(Obstruction, OppositeEndsOfALine) {
    const auto d = test::descriptor("line");
    const Sample s = sample_descriptor(d, 2000, 0.0, 1e5);
    const Obstruction o = shared_direction_obstruction(split_network_at_radius(d.network(), s, 10.0));
    EXPECT_FALSE(o.obstructed);
    EXPECT_NEAR(o.gap, kPi, 1e-3);
}

TEST(Cone, Constants) {
    EXPECT_NEAR(cone_constant(test::descriptor("ray"), small(1000)), 1.0, 1e-9);
    SetDescriptor two{"two rays", ray_network(Point{0, 0}, {UnitDirection(Point{1, 0}), UnitDirection(Point{0, 1})})};
    EXPECT_NEAR(cone_constant(two, small(1000)), 1.0, 1e-9);
    const double cusp = cone_constant(test::descriptor("cusp"), small(2000));
    EXPECT_GE(cusp, 1.0);
    EXPECT_LE(cusp, 1.2);
}

TEST(ArcPairs, ParabolaBranchesDrift) {
    const auto d = test::descriptor("parabola");
    const ParamArc right = ParamArc::from_expressions("r", {"t", "t^2"}, 0, INFINITY);
    const ParamArc left = ParamArc::from_expressions("l", {"-t", "t^2"}, 0, INFINITY);
    const std::vector<double> ts{10, 20, 40, 80};
    const auto ratio = arc_pair_ratio(right, left, d, ts);
    ASSERT_EQ(ratio.size(), ts.size());
    for (std::size_t k = 0; k < ts.size(); ++k) {
        // both points at height t^2, joined through the vertex
        const double u = ts[k];
        const double length = u * std::sqrt(1 + 4 * u * u) + 0.5 * std::asinh(2 * u);
        EXPECT_NEAR(ratio[k], length / (2 * u), 1e-6 * ratio[k]);
    }
}

TEST(Properties, ScaleEquivariance) {
    const Sample s = sample_descriptor(test::descriptor("half_circle"), 1500, 0.0, INFINITY);
    for (double lambda : {1e-3, 7.0, 1e4}) {
        const Sample t = s.scaled(lambda);
        const auto a = ratio_sup(s, *make_graph_metric(s), indices(s.size()));
        const auto b = ratio_sup(t, *make_graph_metric(t), indices(t.size()));
        ASSERT_TRUE(std::isfinite(a.K));
        EXPECT_NEAR(a.K, b.K, 1e-9 * a.K) << lambda;
    }
}

TEST(Properties, ThreadCountDoesNotChangeTheResult) {
    const auto d = test::descriptor("spiral");
    const Sample s = sample_descriptor(d, 2500, 0.0, 1e3);
    const NetworkMetric m(d.network(), s);
    const auto one = ratio_sup(s, m, indices(s.size()), {}, 1e8, 1);
    for (unsigned threads : {2u, 3u, 8u}) {
        const auto many = ratio_sup(s, m, indices(s.size()), {}, 1e8, threads);
        EXPECT_EQ(one.K, many.K);
        ASSERT_TRUE(one.witness && many.witness);
        EXPECT_EQ(one.witness->i, many.witness->i);
        EXPECT_EQ(one.witness->j, many.witness->j);
    }
    // the sampled branch of ratio_sup as well
    const auto a = ratio_sup(s, m, indices(s.size()), {}, 1e5, 1);
    const auto b = ratio_sup(s, m, indices(s.size()), {}, 1e5, 4);
    EXPECT_EQ(a.K, b.K);
}

TEST(Properties, VerdictStableUnderSamplingChanges) {
    for (const char* name : {"spiral", "parabola"}) {
        const auto d = test::descriptor(name);
        const LneReport a = glue_certify(d, small(3000));
        const LneReport b = glue_certify(d, small(6000));
        EXPECT_EQ(a.verdict, b.verdict) << name;
        if (a.verdict == Verdict::Lne) EXPECT_NEAR(a.constant, b.constant, 0.05 * a.constant) << name;
    }
}

TEST(Projective, ParabolaClosureIsLne) {
    EXPECT_EQ(lne_projective(test::descriptor("parabola"), small()).verdict, Verdict::Lne);
}

TEST(Projective, SpiralClosureIsNotLne) {
    EXPECT_EQ(lne_projective(test::descriptor("spiral"), small()).verdict, Verdict::NotLne);
}

TEST(Strings, RoundTrip) {
    for (Verdict v : {Verdict::Lne, Verdict::NotLne, Verdict::Inconclusive}) EXPECT_EQ(verdict_from_string(to_string(v)), v);
    for (Locus l : {Locus::Global, Locus::AtPoint, Locus::AtInfinity, Locus::Projective}) {
        EXPECT_EQ(locus_from_string(to_string(l)), l);
    }
    EXPECT_THROW(verdict_from_string("MAYBE"), Error);
}
