#include "lne/verify.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <limits>
#include <numeric>

namespace lne {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<std::size_t> all_indices(std::size_t n) {
    std::vector<std::size_t> v(n);
    std::iota(v.begin(), v.end(), 0);
    return v;
}

std::vector<double> halvings(double r0, int rungs) {
    std::vector<double> radii;
    for (int k = 0; k <= rungs; ++k) radii.push_back(std::ldexp(r0, -k));
    return radii;
}

LneReport failed(std::string label, Locus locus, const AnalysisConfig& cfg, const std::string& why) {
    LneReport r;
    r.label = std::move(label);
    r.locus = locus;
    r.config = cfg;
    r.verdict = Verdict::Inconclusive;
    r.reason = why;
    return r;
}

LneReport global_stage(const Sample& s, const InnerMetric& m, const AnalysisConfig& cfg) {
    const RatioResult g = ratio_sup(s, m, all_indices(s.size()), {}, cfg.pair_budget, cfg.threads);
    LneReport st;
    st.label = "sample";
    st.locus = Locus::Global;
    st.config = cfg;
    st.constant = g.K;
    st.witness = g.witness;
    if (g.witness && g.witness->infinite()) {
        st.verdict = Verdict::NotLne;
        st.reason = "the set is disconnected";
    } else {
        st.verdict = Verdict::Lne;
        st.reason = fmt::format("sup over {} pairs", g.pairs);
    }
    return st;
}

// Push a euclidean sample onto the sphere.
Sample to_sphere(const Sample& s) {
    Sample out;
    out.metric = AmbientMetric::sphere(s.metric.dim);
    for (std::size_t i = 0; i < s.size(); ++i) {
        Provenance p = s.provenance[i];
        p.chart_radius = s.radial[i];
        out.add(stereo_to_sphere(s.points[i]), p);
    }
    return out;
}

}  // namespace

EquivalenceReport compare(LneReport left, LneReport right) {
    EquivalenceReport e;
    e.defined = left.verdict != Verdict::Inconclusive && right.verdict != Verdict::Inconclusive;
    e.agree = e.defined && left.verdict == right.verdict;
    e.left = std::move(left);
    e.right = std::move(right);
    return e;
}

LneReport sphere_analysis(const SetDescriptor& d, const AnalysisConfig& cfg) {
    validate(d);
    if (d.metric().kind != AmbientMetric::Kind::Euclidean) throw Error("compactification takes a euclidean set");
    if (cfg.rungs < 3) throw Error("a ladder needs at least 3 halvings");
    const std::size_t q = d.metric().dim;
    LneReport rep;
    rep.label = "sphere";
    rep.locus = Locus::Global;
    rep.config = cfg;

    if (!d.is_network()) {
        const Sample s = to_sphere(sample_descriptor(d, cfg.budget, 0.0, kInf));
        const auto m = make_graph_metric(s, cfg.eps);
        rep.stages.push_back(global_stage(s, *m, cfg));
        combine_stages(rep);
        return rep;
    }

    const ArcNetwork& net = d.network();
    const ArcNetwork sn = transform_network(net, NetworkTransform::Stereographic);
    const NetworkTopology topo = topology(sn);
    const bool unbounded = net.unbounded();
    const Point N = north_pole(q);
    const int pole = unbounded ? topo.find(N, AmbientMetric::Kind::Sphere) : -1;

    auto node_r0 = [&](std::size_t n) {
        double nearest = kInf;
        for (std::size_t k = 0; k < topo.nodes.size(); ++k) {
            if (k != n) nearest = std::min(nearest, ambient_distance(sn.metric, topo.nodes[n], topo.nodes[k]));
        }
        return std::min(cfg.r0, 0.5 * nearest);
    };

    // Near N the chordal distance is about 2/|x|, so the affine sample must
    // reach 8/r_last to fill the smallest shell around the pole.
    const double pole_r0 = pole >= 0 ? node_r0(static_cast<std::size_t>(pole)) : cfg.r0;
    const double r_max = !unbounded ? kInf : (cfg.r_max > 0.0 ? cfg.r_max : 8.0 / std::ldexp(pole_r0, -cfg.rungs) * 1.01);
    SamplingPlan plan = relative_plan(cfg.budget, 0.0, r_max);
    Sample s = to_sphere(sample_network(net, plan));
    if (pole >= 0) {
        Provenance p;
        p.source = Provenance::Source::Node;
        p.node = pole;
        p.chart_radius = kInf;
        s.add(N, p);
    }
    const NetworkMetric m(sn, s, cfg.tol);
    rep.stages.push_back(global_stage(s, m, cfg));

    for (std::size_t n = 0; n < topo.nodes.size(); ++n) {
        if (topo.degree[n] < 2 && !topo.limit_node[n] && static_cast<int>(n) != pole) continue;
        const Point& y = topo.nodes[n];
        const double r0 = node_r0(n);
        const auto radii = halvings(r0, cfg.rungs);
        AnalysisConfig sub = cfg;
        sub.r0 = r0;
        const std::string label = static_cast<int>(n) == pole ? std::string("north pole")
                                                              : fmt::format("point {}", to_string(y));
        try {
            LneReport st;
            if (static_cast<int>(n) == pole) {
                st = ladder_at_point(s, m, y, radii, sub);
            } else {
                // chordal distance near sigma(x) is about 2 |dx| / (1 + |x|^2)
                const Point x = stereo_from_sphere(y);
                const double scale = 0.5 * (1.0 + x.norm() * x.norm());
                const double lo = 0.25 * radii.back() * scale * 0.25;
                const Sample local = to_sphere(sample_network(net, relative_plan(cfg.budget, lo, r0 * scale * 4.0, x)));
                const NetworkMetric lm(sn, local, cfg.tol);
                st = ladder_at_point(local, lm, y, radii, sub);
            }
            st.label = label;
            rep.stages.push_back(std::move(st));
        } catch (const Error& e) {
            rep.stages.push_back(failed(label, Locus::AtPoint, sub, e.what()));
        }
    }
    combine_stages(rep);
    return rep;
}

EquivalenceReport verify_compactification(const SetDescriptor& d, const AnalysisConfig& cfg) {
    LneReport left = glue_certify(d, cfg);
    LneReport right = sphere_analysis(d, cfg);
    return compare(std::move(left), std::move(right));
}

EquivalenceReport verify_inversion(const SetDescriptor& d, const AnalysisConfig& cfg) {
    validate(d);
    if (d.metric().kind != AmbientMetric::Kind::Euclidean) throw Error("inversion takes a euclidean set");
    const std::size_t q = d.metric().dim;
    const Point origin(q);
    if (!(cfg.r0 > 0.0)) throw Error("point ladder radius must be positive");

    LneReport left = lne_at_point(d, origin, cfg);
    left.label = "at the origin";
    AnalysisConfig sub = cfg;
    sub.R0 = 1.0 / cfg.r0;
    LneReport right;
    if (d.is_network()) {
        const NetworkTopology topo = topology(d.network());
        if (topo.find(origin, AmbientMetric::Kind::Euclidean) < 0) {
            throw Error("the origin must be an arc end or a limit point of the network");
        }
        SetDescriptor inv;
        inv.name = d.name + " inverted";
        inv.body = transform_network(d.network(), NetworkTransform::Inversion);
        right = lne_at_infinity(inv, sub);
    } else {
        const Sample s = sample_descriptor(d, cfg.budget, 0.0, kInf);
        Sample t;
        t.metric = s.metric;
        for (std::size_t i = 0; i < s.size(); ++i) {
            if (s.radial[i] > kSingularRadius) t.add(invert(s.points[i]), s.provenance[i]);
        }
        const auto m = make_graph_metric(t, cfg.eps);
        right = ladder_at_infinity(t, *m, all_indices(t.size()), ladder_radii(sub.R0, sub.rungs), sub);
    }
    right.label = "inverted set at infinity";
    return compare(std::move(left), std::move(right));
}

LinkReport verify_link_criterion(const SetDescriptor& d, const AnalysisConfig& cfg, double band) {
    validate(d);
    if (!(band > 0.0 && band < 1.0)) throw Error("band must lie in (0, 1)");
    LinkReport rep;
    rep.band = band;
    rep.at_infinity = lne_at_infinity(d, cfg);
    const auto radii = ladder_radii(cfg.R0, cfg.rungs);

    Sample s;
    std::unique_ptr<InnerMetric> m;
    if (d.is_network()) {
        s = sample_network(d.network(),
                           relative_plan(cfg.budget, cfg.R0 * (1.0 - band) * 0.999, radii.back() * (1.0 + band) * 1.001));
        m = std::make_unique<NetworkMetric>(d.network(), s, cfg.tol);
    } else {
        s = sample_descriptor(d, cfg.budget, 0.0, kInf);
        m = make_graph_metric(s, cfg.eps);
    }

    rep.links.label = "links";
    rep.links.locus = Locus::AtInfinity;
    rep.links.config = cfg;
    std::vector<double> Ks;
    std::size_t most_parts = 0;
    for (double R : radii) {
        const auto in_band = [R, band](double r) { return std::abs(r - R) <= band * R; };
        std::vector<std::vector<std::size_t>> parts;
        if (d.is_network()) {
            parts = split_network_where(d.network(), s, in_band, R).indices;
        } else {
            const auto members = slice_indices(s, SliceMode::eq(R, band * R));
            if (members.empty()) throw EmptySample(fmt::format("empty band at R = {}", R));
            const auto& g = dynamic_cast<const GraphMetric&>(*m).graph();
            int count = 0;
            const auto label = restricted_components(g, members, &count);
            parts.assign(static_cast<std::size_t>(count), {});
            for (std::size_t k = 0; k < members.size(); ++k) parts[static_cast<std::size_t>(label[k])].push_back(members[k]);
        }
        LinkRung rung;
        rung.radius = R;
        rung.components = parts.size();
        rung.K = 1.0;
        std::optional<WitnessPair> witness;
        std::size_t pairs = 0;
        for (const auto& p : parts) {
            rung.points += p.size();
            if (p.size() < 2) continue;
            const RatioResult rr = ratio_sup(s, *m, p, {}, cfg.pair_budget, cfg.threads);
            pairs += rr.pairs;
            if (rr.K > rung.K || !witness) {
                rung.K = std::max(rung.K, rr.K);
                if (rr.witness) witness = rr.witness;
            }
        }
        most_parts = std::max(most_parts, parts.size());
        Ks.push_back(rung.K);
        rep.links.ladder.push_back({R, rung.K, rung.points, pairs, witness});
        rep.rungs.push_back(rung);
    }
    const LadderDecision dec = decide_ladder(Ks, false, cfg);
    rep.links.verdict = dec.verdict;
    rep.links.reason = dec.reason;
    rep.links.constant = *std::max_element(Ks.begin(), Ks.end());

    const Verdict a = rep.links.verdict, b = rep.at_infinity.verdict;
    if (a == b) {
        rep.consistent = true;
        rep.note = "link constants and the ladder at infinity agree";
    } else if (a == Verdict::Lne && b == Verdict::NotLne && most_parts >= 2) {
        rep.consistent = true;
        rep.note = "links are bounded but the set splits into several branches that come close at infinity";
    } else {
        rep.consistent = false;
        rep.note = fmt::format("links are {} but the set is {} at infinity", to_string(a), to_string(b));
    }
    return rep;
}

LneReport analyse_case(const CorpusCase& c, const AnalysisConfig& cfg) {
    LneReport r;
    switch (c.locus) {
        case Locus::Global: r = glue_certify(c.descriptor, cfg); break;
        case Locus::AtPoint: r = lne_at_point(c.descriptor, c.point.value_or(Point(c.descriptor.metric().coord_dim())), cfg); break;
        case Locus::AtInfinity: r = lne_at_infinity(c.descriptor, cfg); break;
        case Locus::Projective: r = lne_projective(c.descriptor, cfg); break;
    }
    r.label = c.name;
    return r;
}

std::vector<CorpusResult> run_corpus(const std::vector<CorpusCase>& cases, const AnalysisConfig& cfg) {
    std::vector<CorpusResult> out;
    for (const auto& c : cases) {
        CorpusResult res;
        res.name = c.name;
        res.locus = c.locus;
        res.expected = c.expected;
        res.bound = c.bound;
        res.note = c.note;
        try {
            res.report = analyse_case(c, cfg);
            res.got = res.report.verdict;
            res.constant = res.report.constant;
        } catch (const Error& e) {
            res.got = Verdict::Inconclusive;
            res.report = failed(c.name, c.locus, cfg, e.what());
        }
        res.pass = res.got == res.expected && (!res.bound || res.constant <= *res.bound);
        out.push_back(std::move(res));
    }
    return out;
}

}  // namespace lne
