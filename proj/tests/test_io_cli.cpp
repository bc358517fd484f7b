#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "lne/cli.hpp"
#include "lne/report.hpp"
#include "support.hpp"

using namespace lne;

namespace {

SetDescriptor parse(const std::string& text) {
    std::istringstream in(text);
    return parse_descriptor(in, "input.desc");
}

std::string error_of(const std::string& text) {
    try {
        parse(text);
    } catch (const InputError& e) {
        return e.what();
    }
    return "";
}

struct CliRun {
    int code;
    std::string out, err;
};

CliRun run(std::vector<std::string> args) {
    args.insert(args.begin(), "lnetool");
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::filesystem::path temp_dir() {
    auto p = std::filesystem::temp_directory_path() /
             ("lne_tests_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    std::filesystem::create_directories(p);
    return p;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream f(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(f), {}};
}

}  // namespace

TEST(Descriptor, ParsesArcs) {
    const auto d = parse("name = s\nkind = arcs\n[arc a]\ncoords = t, t^2\nrange = -inf, inf\n");
    ASSERT_TRUE(d.is_network());
    EXPECT_EQ(d.name, "s");
    EXPECT_TRUE(d.unbounded());
    EXPECT_NEAR(d.network().arcs[0].position(3.0)[1], 9.0, 1e-15);
}

TEST(Descriptor, ErrorsNameTheLine) {
    EXPECT_EQ(error_of("name = s\nkind = arcs\n[arc a]\ncoords = t, (t\nrange = 0, 1\n").rfind("input.desc:4:", 0), 0u);
    EXPECT_EQ(error_of("name = s\nkind = blob\n").rfind("input.desc:2:", 0), 0u);
    EXPECT_EQ(error_of("name = s\nkind = arcs\n[arc a]\ncoords = t, t\nrange = 0, 1\nfoo = 3\n").rfind("input.desc:6:", 0), 0u);
    EXPECT_EQ(error_of("name = s\nkind = arcs\nthis line has no equals sign\n").rfind("input.desc:3:", 0), 0u);
}

TEST(Descriptor, StructuralProblemsAreRejected) {
    // a junction that is not an arc end
    EXPECT_THROW(parse("name = s\nkind = arcs\n[arc a]\ncoords = t, 0\nrange = 0, 1\n[junction]\nat = 0.5, 0\n"), Error);
    // no arcs at all
    EXPECT_THROW(parse("name = s\nkind = arcs\n"), Error);
}

TEST(Descriptor, ImplicitWithPolynomialOrEquation) {
    const auto a = parse("name = c\nkind = implicit\nbox = 2\npolynomial = 1 2 0; 1 0 2; -1 0 0\n");
    const auto b = parse("name = c\nkind = implicit\nbox = 2\nequation = x^2 + y^2 - 1\n");
    const auto& fa = std::get<ImplicitSet>(a.body);
    const auto& fb = std::get<ImplicitSet>(b.body);
    for (const Point& p : {Point{0.3, 0.2}, Point{1, 0}, Point{-1.5, 0.7}}) EXPECT_NEAR(fa.values(p)[0], fb.values(p)[0], 1e-14);
}

TEST(Descriptor, EveryShippedFileLoads) {
    std::size_t n = 0;
    for (const auto& e : std::filesystem::directory_iterator(test::data_path("descriptors"))) {
        EXPECT_NO_THROW(load_descriptor(e.path())) << e.path();
        ++n;
    }
    EXPECT_GE(n, 10u);
}

TEST(PointsCsv, RoundTripIsExact) {
    const Sample s = sample_descriptor(test::descriptor("spiral"), 200, 0.01, 100.0);
    std::stringstream io;
    write_points_csv(s, io);
    const PointCloud c = read_points_csv(io, "mem.csv");
    ASSERT_EQ(c.points.size(), s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        for (std::size_t k = 0; k < 2; ++k) EXPECT_EQ(c.points[i][k], s.points[i][k]);
    }
}

TEST(PointsCsv, BadRowsNameTheLine) {
    std::istringstream in("# dim=2 metric=euclidean\n1, 2\n3, x\n");
    try {
        read_points_csv(in, "p.csv");
        FAIL() << "accepted a bad row";
    } catch (const InputError& e) {
        EXPECT_EQ(std::string(e.what()).rfind("p.csv:3:", 0), 0u) << e.what();
    }
    std::istringstream ragged("1, 2\n3, 4, 5\n");
    EXPECT_THROW(read_points_csv(ragged, "p.csv"), InputError);
}

TEST(Config, KeysAndValidation) {
    std::istringstream in("# comment\nbudget = 1234\nR0 = 5\nr0 = 0.25\ndelta_bin = 1\neps = auto\nthreads = 2\n");
    const AnalysisConfig c = parse_config(in, "c.cfg");
    EXPECT_EQ(c.budget, 1234u);
    EXPECT_EQ(c.R0, 5.0);
    EXPECT_EQ(c.r0, 0.25);
    EXPECT_NEAR(c.delta_bin, std::numbers::pi / 180.0, 1e-15);
    EXPECT_EQ(c.eps, 0.0);
    EXPECT_EQ(c.threads, 2u);

    AnalysisConfig d;
    EXPECT_THROW(apply_config_entry(d, "rungs", "2"), Error);
    EXPECT_THROW(apply_config_entry(d, "budget", "-3"), Error);
    EXPECT_THROW(apply_config_entry(d, "divergence_ratio", "1"), Error);
    EXPECT_THROW(apply_config_entry(d, "colour", "red"), Error);
}

TEST(Corpus, ShippedFileParses) {
    const auto cases = load_corpus(test::data_path("corpus.txt"));
    ASSERT_EQ(cases.size(), 10u);
    EXPECT_EQ(cases[0].name, "parabola_at_infinity");
    EXPECT_EQ(cases[0].locus, Locus::AtInfinity);
    EXPECT_EQ(cases[0].expected, Verdict::NotLne);
    const auto spiral = std::find_if(cases.begin(), cases.end(), [](const auto& c) { return c.name == "spiral"; });
    ASSERT_NE(spiral, cases.end());
    ASSERT_TRUE(spiral->bound);
    EXPECT_NEAR(*spiral->bound, 1.05 * std::sqrt(1 + 4 * std::numbers::pi * std::numbers::pi), 1e-12);
    for (const auto& c : cases) EXPECT_FALSE(c.note.empty()) << c.name;
}

TEST(Numbers, ConstantExpressions) {
    EXPECT_NEAR(parse_number("1.05*sqrt(1 + 4*pi^2)"), 1.05 * std::sqrt(1 + 4 * std::numbers::pi * std::numbers::pi), 1e-14);
    EXPECT_TRUE(std::isinf(parse_number("inf")));
    EXPECT_LT(parse_number("-inf"), 0.0);
    EXPECT_THROW(parse_number("2 +"), Error);
    EXPECT_EQ(parse_point("1, -2.5").dim(), 2u);
}

TEST(Json, NonFiniteNumbersAreStrings) {
    EXPECT_EQ(number_json(INFINITY), "inf");
    EXPECT_EQ(number_json(-INFINITY), "-inf");
    EXPECT_EQ(number_json(std::nan("")), "nan");
    EXPECT_EQ(number_json(2.5), 2.5);
}

TEST(Json, ReportIsDeterministic) {
    AnalysisConfig cfg;
    cfg.budget = 1500;
    const auto d = test::descriptor("spiral");
    const std::string a = document("estimate", cfg, to_json(glue_certify(d, cfg))).dump(2);
    cfg.threads = 1;
    const std::string b = document("estimate", AnalysisConfig{cfg}, to_json(glue_certify(d, cfg))).dump(2);
    // the echoed thread count differs, everything else must match
    EXPECT_EQ(Json::parse(a)["result"], Json::parse(b)["result"]);
}

TEST(Cli, VersionAndUsage) {
    const CliRun v = run({"--version"});
    EXPECT_EQ(v.code, kExitOk);
    EXPECT_NE(v.out.find(kVersion), std::string::npos);
    EXPECT_EQ(run({}).code, kExitUsage);
    EXPECT_EQ(run({"estimate"}).code, kExitUsage);
    EXPECT_EQ(run({"frobnicate"}).code, kExitUsage);
}

TEST(Cli, BadFlagValuesAreUsageErrors) {
    const std::string spiral = test::data_path("descriptors/spiral.desc").string();
    EXPECT_EQ(run({"estimate", spiral, "--budget", "-3"}).code, kExitUsage);
    EXPECT_EQ(run({"estimate", spiral, "--rungs", "2"}).code, kExitUsage);
    EXPECT_EQ(run({"estimate", spiral, "--global", "--at-infinity"}).code, kExitUsage);
}

TEST(Cli, InputErrors) {
    const auto dir = temp_dir();
    std::ofstream(dir / "bad.desc") << "name = b\nkind = arcs\n[arc a]\ncoords = t, (t\nrange = 0, 1\n";
    const CliRun bad = run({"estimate", (dir / "bad.desc").string()});
    EXPECT_EQ(bad.code, kExitInput);
    EXPECT_NE(bad.err.find("bad.desc:4:"), std::string::npos) << bad.err;
    EXPECT_EQ(run({"estimate", (dir / "missing.desc").string()}).code, kExitInput);
    std::ofstream(dir / "c.cfg") << "budget = 100\nnonsense = 1\n";
    const CliRun cfg = run({"estimate", test::data_path("descriptors/segment.desc").string(), "--config", (dir / "c.cfg").string()});
    EXPECT_EQ(cfg.code, kExitInput);
    EXPECT_NE(cfg.err.find("c.cfg:2:"), std::string::npos) << cfg.err;
}

TEST(Cli, SampleWritesTheBudget) {
    const CliRun r = run({"sample", test::data_path("descriptors/segment.desc").string(), "--budget", "5"});
    EXPECT_EQ(r.code, kExitOk);
    std::istringstream in(r.out);
    EXPECT_EQ(read_points_csv(in, "out").points.size(), 5u);
}

TEST(Cli, EstimateWritesEveryOutput) {
    const auto dir = temp_dir();
    const CliRun r = run({"estimate", test::data_path("descriptors/spiral.desc").string(), "--budget", "1500", "--json",
                       (dir / "r.json").string(), "--csv", (dir / "r.csv").string(), "--svg", (dir / "r.svg").string()});
    EXPECT_EQ(r.code, kExitOk) << r.err;
    const Json j = Json::parse(slurp(dir / "r.json"));
    EXPECT_EQ(j["tool"], "lnetool");
    EXPECT_EQ(j["command"], "estimate");
    EXPECT_EQ(j["config"]["budget"], 1500);
    EXPECT_EQ(j["result"]["verdict"], "LNE");
    EXPECT_EQ(slurp(dir / "r.csv").rfind("label,scale,K,points,pairs\n", 0), 0u);
    EXPECT_EQ(slurp(dir / "r.svg").rfind("<svg", 0), 0u);
}

TEST(Cli, EstimateAtAPointAndAtInfinity) {
    EXPECT_EQ(run({"estimate", test::data_path("descriptors/cusp.desc").string(), "--at-point", "0, 0"}).code, kExitOk);
    const CliRun r = run({"estimate", test::data_path("descriptors/parabola.desc").string(), "--at-infinity"});
    EXPECT_EQ(r.code, kExitOk);
    EXPECT_NE(r.out.find("NOT_LNE"), std::string::npos);
}

TEST(Cli, PointCloudInput) {
    const auto dir = temp_dir();
    const CliRun s = run({"sample", test::data_path("descriptors/half_circle.desc").string(), "--budget", "400", "-o",
                       (dir / "h.csv").string()});
    ASSERT_EQ(s.code, kExitOk) << s.err;
    const CliRun r = run({"estimate", (dir / "h.csv").string()});
    EXPECT_EQ(r.code, kExitOk) << r.err;
    EXPECT_NE(r.out.find("LNE"), std::string::npos);
}

TEST(Cli, CompactifyInvertAndLinks) {
    const auto dir = temp_dir();
    const std::string spiral = test::data_path("descriptors/spiral.desc").string();
    const CliRun c = run({"compactify", spiral, "--budget", "1500", "--svg-plane", (dir / "p.svg").string(), "--svg-sphere",
                       (dir / "s.svg").string(), "--json", (dir / "c.json").string()});
    EXPECT_EQ(c.code, kExitOk) << c.err;
    EXPECT_EQ(Json::parse(slurp(dir / "c.json"))["result"]["agree"], true);
    EXPECT_NE(slurp(dir / "s.svg").find(">N<"), std::string::npos);
    EXPECT_EQ(run({"invert", test::data_path("descriptors/ray.desc").string(), "--budget", "1500"}).code, kExitOk);
    const CliRun l = run({"links", spiral, "--budget", "1500", "--csv", (dir / "l.csv").string()});
    EXPECT_EQ(l.code, kExitOk) << l.err;
    EXPECT_EQ(slurp(dir / "l.csv").rfind("radius,K,components,points\n", 0), 0u);
}

TEST(Cli, CorpusMismatchExitCode) {
    const auto dir = temp_dir();
    std::ofstream(dir / "c.txt") << "[case wrong]\ndescriptor = " << test::data_path("descriptors/parabola.desc").string()
                                 << "\nlocus = AT_INFINITY\nexpected = LNE\nnote = deliberately wrong expectation\n";
    const CliRun r = run({"corpus", (dir / "c.txt").string(), "--budget", "1500"});
    EXPECT_EQ(r.code, kExitCorpusMismatch);
    EXPECT_NE(r.out.find("0/1 cases pass"), std::string::npos) << r.out;
}
