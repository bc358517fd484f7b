#include <gtest/gtest.h>

#include <algorithm>

#include "lne/verify.hpp"
#include "support.hpp"

using namespace lne;

namespace {

AnalysisConfig small(std::size_t budget = 3000) {
    AnalysisConfig cfg;
    cfg.budget = budget;
    return cfg;
}

}  // namespace

TEST(Compare, DefinedOnlyWithoutInconclusiveSides) {
    LneReport a, b;
    a.verdict = Verdict::Lne;
    b.verdict = Verdict::Lne;
    EXPECT_TRUE(compare(a, b).defined);
    EXPECT_TRUE(compare(a, b).agree);
    b.verdict = Verdict::NotLne;
    EXPECT_TRUE(compare(a, b).defined);
    EXPECT_FALSE(compare(a, b).agree);
    b.verdict = Verdict::Inconclusive;
    EXPECT_FALSE(compare(a, b).defined);
}

class Compactification : public ::testing::TestWithParam<const char*> {};

TEST_P(Compactification, VerdictsAgree) {
    const EquivalenceReport e = verify_compactification(test::descriptor(GetParam()), small());
    EXPECT_TRUE(e.defined) << e.left.reason << " / " << e.right.reason;
    EXPECT_TRUE(e.agree) << to_string(e.left.verdict) << " vs " << to_string(e.right.verdict);
}

INSTANTIATE_TEST_SUITE_P(Sets, Compactification, ::testing::Values("spiral", "parabola", "circle", "gamma_plus"),
                         [](const auto& info) { return std::string(info.param); });

TEST(Compactification, SphereSideIsLneForTheSpiral) {
    EXPECT_EQ(sphere_analysis(test::descriptor("spiral"), small()).verdict, Verdict::Lne);
}

class Inversion : public ::testing::TestWithParam<std::pair<const char*, Verdict>> {};

TEST_P(Inversion, VerdictsAgree) {
    const auto [name, expected] = GetParam();
    const EquivalenceReport e = verify_inversion(test::descriptor(name), small());
    EXPECT_TRUE(e.defined) << e.left.reason << " / " << e.right.reason;
    EXPECT_TRUE(e.agree);
    EXPECT_EQ(e.left.verdict, expected);
}

INSTANTIATE_TEST_SUITE_P(Sets, Inversion,
                         ::testing::Values(std::pair{"cusp", Verdict::NotLne}, std::pair{"ray", Verdict::Lne},
                                           std::pair{"half_circle", Verdict::Lne}),
                         [](const auto& info) { return std::string(info.param.first); });

TEST(Inversion, NeedsTheOriginOnTheSet) {
    EXPECT_THROW(verify_inversion(test::descriptor("circle"), small()), Error);
}

TEST(Links, SpiralLinksStayBounded) {
    const LinkReport l = verify_link_criterion(test::descriptor("spiral"), small(), 0.1);
    ASSERT_FALSE(l.rungs.empty());
    EXPECT_EQ(l.links.verdict, Verdict::Lne);
    EXPECT_TRUE(l.consistent) << l.note;
}

TEST(Links, ParabolaLinksAreTwoPieces) {
    const LinkReport l = verify_link_criterion(test::descriptor("parabola"), small(), 0.1);
    for (const auto& r : l.rungs) EXPECT_EQ(r.components, 2u);
    EXPECT_EQ(l.at_infinity.verdict, Verdict::NotLne);
    EXPECT_TRUE(l.consistent) << l.note;
}

TEST(Links, GrowingOscillationMakesLinksDiverge) {
    const auto d = test::descriptor("sin_e_1");
    const LinkReport l = verify_link_criterion(d, small(6000), 0.1);
    ASSERT_GE(l.rungs.size(), 4u);
    EXPECT_GT(l.rungs.back().K, 2.0 * l.rungs.front().K);
    EXPECT_EQ(l.at_infinity.verdict, Verdict::NotLne);
}

TEST(Corpus, EmptyListGivesNoResults) { EXPECT_TRUE(run_corpus({}, small()).empty()); }

TEST(Corpus, EveryCaseMatches) {
    const auto cases = load_corpus(test::data_path("corpus.txt"));
    ASSERT_EQ(cases.size(), 10u);
    for (const auto& r : run_corpus(cases, AnalysisConfig{})) {
        EXPECT_TRUE(r.pass) << r.name << ": " << to_string(r.got) << " K = " << r.constant << " (" << r.report.reason << ")";
    }
}

TEST(Corpus, DoublingTheBudgetKeepsTheVerdicts) {
    const auto cases = load_corpus(test::data_path("corpus.txt"));
    AnalysisConfig big;
    big.budget = 2 * AnalysisConfig{}.budget;
    const auto a = run_corpus(cases, AnalysisConfig{});
    const auto b = run_corpus(cases, big);
    for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i].got, b[i].got) << a[i].name;
}

TEST(Corpus, FailuresAreRecorded) {
    CorpusCase c;
    c.name = "off the set";
    c.descriptor = test::descriptor("segment");
    c.locus = Locus::AtPoint;
    c.point = Point{5, 5};
    const auto r = run_corpus({c}, small(500));
    ASSERT_EQ(r.size(), 1u);
    EXPECT_FALSE(r[0].pass);
    EXPECT_EQ(r[0].got, Verdict::Inconclusive);
}
