#include "lne/report.hpp"

#include <cmath>
#include <fmt/format.h>
#include <numbers>

namespace lne {

namespace {

std::string source_name(Provenance::Source s) {
    switch (s) {
        case Provenance::Source::Arc: return "arc";
        case Provenance::Source::Node: return "node";
        case Provenance::Source::Implicit: return "implicit";
        case Provenance::Source::Cloud: return "cloud";
    }
    return "cloud";
}

Json point_json(const Point& p) {
    Json a = Json::array();
    for (std::size_t k = 0; k < p.dim(); ++k) a.push_back(number_json(p[k]));
    return a;
}

std::string fmt_number(double x) { return std::isfinite(x) ? fmt::format("{:.6g}", x) : std::string(std::isnan(x) ? "nan" : "inf"); }

}  // namespace

Json number_json(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    return x;
}

Json to_json(const AnalysisConfig& c) {
    Json j;
    j["budget"] = c.budget;
    j["eps"] = c.eps > 0.0 ? number_json(c.eps) : Json("auto");
    j["R0"] = number_json(c.R0);
    j["rungs"] = c.rungs;
    j["r0"] = number_json(c.r0);
    j["delta_bin"] = number_json(c.delta_bin * 180.0 / std::numbers::pi);
    j["pair_budget"] = number_json(c.pair_budget);
    j["tol"] = number_json(c.tol);
    j["threads"] = c.threads;
    j["seed"] = c.seed;
    j["divergence_ratio"] = number_json(c.divergence_ratio);
    j["divergence_run"] = c.divergence_run;
    j["stability"] = number_json(c.stability);
    j["glue_radius"] = number_json(c.glue_radius);
    j["r_min"] = number_json(c.r_min);
    j["r_max"] = number_json(c.r_max);
    return j;
}

Json to_json(const Provenance& p) {
    Json j;
    j["source"] = source_name(p.source);
    if (p.arc >= 0) j["arc"] = p.arc;
    if (!std::isnan(p.param)) j["param"] = number_json(p.param);
    if (p.node >= 0) j["node"] = p.node;
    if (!std::isnan(p.chart_radius)) j["chart_radius"] = number_json(p.chart_radius);
    return j;
}

Json to_json(const WitnessPair& w) {
    Json j;
    j["points"] = Json::array({point_json(w.a), point_json(w.b)});
    j["provenance"] = Json::array({to_json(w.pa), to_json(w.pb)});
    j["outer"] = number_json(w.outer);
    j["inner"] = number_json(w.inner);
    j["ratio"] = number_json(w.ratio);
    return j;
}

Json to_json(const LneReport& r) {
    Json j;
    j["label"] = r.label;
    j["verdict"] = to_string(r.verdict);
    j["constant"] = number_json(r.constant);
    j["reason"] = r.reason;
    j["locus"] = to_string(r.locus);
    if (r.point) j["point"] = point_json(*r.point);
    Json ladder = Json::array();
    for (const auto& g : r.ladder) ladder.push_back(Json::array({number_json(g.scale), number_json(g.K)}));
    j["ladder"] = std::move(ladder);
    j["witness"] = r.witness ? to_json(*r.witness) : Json(nullptr);
    if (!r.stages.empty()) {
        Json st = Json::array();
        for (const auto& s : r.stages) st.push_back(to_json(s));
        j["stages"] = std::move(st);
    }
    return j;
}

Json to_json(const EquivalenceReport& e) {
    Json j;
    j["left"] = to_json(e.left);
    j["right"] = to_json(e.right);
    j["defined"] = e.defined;
    j["agree"] = e.defined ? Json(e.agree) : Json(nullptr);
    return j;
}

Json to_json(const LinkReport& l) {
    Json j;
    j["band"] = number_json(l.band);
    Json rungs = Json::array();
    for (const auto& r : l.rungs) {
        rungs.push_back({{"radius", number_json(r.radius)},
                         {"K", number_json(r.K)},
                         {"components", r.components},
                         {"points", r.points}});
    }
    j["rungs"] = std::move(rungs);
    j["links"] = to_json(l.links);
    j["at_infinity"] = to_json(l.at_infinity);
    j["consistent"] = l.consistent;
    j["note"] = l.note;
    return j;
}

Json to_json(const std::vector<CorpusResult>& results) {
    Json cases = Json::array();
    std::size_t passed = 0;
    for (const auto& c : results) {
        Json j;
        j["name"] = c.name;
        j["locus"] = to_string(c.locus);
        j["expected"] = to_string(c.expected);
        j["got"] = to_string(c.got);
        j["constant"] = number_json(c.constant);
        j["bound"] = c.bound ? number_json(*c.bound) : Json(nullptr);
        j["pass"] = c.pass;
        j["note"] = c.note;
        j["report"] = to_json(c.report);
        cases.push_back(std::move(j));
        passed += c.pass ? 1 : 0;
    }
    Json j;
    j["cases"] = std::move(cases);
    j["passed"] = passed;
    j["total"] = results.size();
    return j;
}

Json document(const std::string& command, const AnalysisConfig& cfg, Json result) {
    Json j;
    j["tool"] = "lnetool";
    j["version"] = kVersion;
    j["command"] = command;
    j["config"] = to_json(cfg);
    j["result"] = std::move(result);
    return j;
}

namespace {

void ladder_rows(const LneReport& r, std::string& out) {
    for (const auto& g : r.ladder) {
        out += fmt::format("\"{}\",{:.17g},{:.17g},{},{}\n", r.label, g.scale, g.K, g.points, g.pairs);
    }
    for (const auto& s : r.stages) ladder_rows(s, out);
}

}  // namespace

std::string ladder_csv(const LneReport& r) {
    std::string out = "label,scale,K,points,pairs\n";
    ladder_rows(r, out);
    return out;
}

std::string links_csv(const LinkReport& l) {
    std::string out = "radius,K,components,points\n";
    for (const auto& r : l.rungs) out += fmt::format("{:.17g},{:.17g},{},{}\n", r.radius, r.K, r.components, r.points);
    return out;
}

std::string corpus_table(const std::vector<CorpusResult>& results) {
    std::string out = fmt::format("{:<28} {:<12} {:<13} {:<13} {:>10} {:>10}  {}\n", "case", "locus", "expected", "got",
                                  "K", "bound", "result");
    std::size_t passed = 0;
    for (const auto& c : results) {
        out += fmt::format("{:<28} {:<12} {:<13} {:<13} {:>10} {:>10}  {}\n", c.name, to_string(c.locus),
                           to_string(c.expected), to_string(c.got), fmt_number(c.constant),
                           c.bound ? fmt_number(*c.bound) : std::string("-"), c.pass ? "PASS" : "FAIL");
        if (!c.pass) out += fmt::format("    {}\n", c.report.reason);
        passed += c.pass ? 1 : 0;
    }
    out += fmt::format("{}/{} cases pass\n", passed, results.size());
    return out;
}

std::string summary(const LneReport& r, int indent) {
    const std::string pad(static_cast<std::size_t>(indent), ' ');
    std::string out = fmt::format("{}{}: {} (K = {}) {}\n", pad, r.label, to_string(r.verdict), fmt_number(r.constant),
                                  r.reason);
    for (const auto& g : r.ladder) out += fmt::format("{}  scale {:<10} K {}\n", pad, fmt_number(g.scale), fmt_number(g.K));
    for (const auto& s : r.stages) out += summary(s, indent + 2);
    return out;
}

}  // namespace lne
