#include "lne/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <limits>
#include <numbers>
#include <numeric>
#include <thread>

#include "lne/implicit_sampling.hpp"

namespace lne {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Best {
    bool set = false;
    double ratio = 0.0;
    std::size_t i = 0, j = 0;
    double inner = 0.0, outer = 0.0;
    std::size_t pairs = 0;

    void offer(double r, std::size_t a, std::size_t b, double in, double out) {
        const std::size_t lo = std::min(a, b), hi = std::max(a, b);
        if (!set || r > ratio || (r == ratio && std::pair(lo, hi) < std::pair(i, j))) {
            set = true;
            ratio = r;
            i = lo;
            j = hi;
            inner = in;
            outer = out;
        }
    }
    void merge(const Best& o) {
        pairs += o.pairs;
        if (o.set) offer(o.ratio, o.i, o.j, o.inner, o.outer);
    }
};

WitnessPair make_witness(const Sample& s, const Best& b) {
    WitnessPair w;
    w.i = b.i;
    w.j = b.j;
    w.a = s.points[b.i];
    w.b = s.points[b.j];
    w.pa = s.provenance[b.i];
    w.pb = s.provenance[b.j];
    w.inner = b.inner;
    w.outer = b.outer;
    w.ratio = b.ratio;
    return w;
}

LneReport failed_stage(std::string label, Locus locus, const AnalysisConfig& cfg, const std::string& why) {
    LneReport r;
    r.label = std::move(label);
    r.locus = locus;
    r.config = cfg;
    r.verdict = Verdict::Inconclusive;
    r.reason = why;
    return r;
}

// Fill verdict, constant and witness of a ladder report from its rungs
// (given in order of approach).
void conclude(LneReport& rep, const std::vector<LadderRung>& approach, const AnalysisConfig& cfg) {
    std::vector<double> K;
    bool infinite = false;
    const LadderRung* worst = nullptr;
    for (const auto& r : approach) {
        K.push_back(r.K);
        if (r.witness && r.witness->infinite()) infinite = true;
        if (!worst || r.K > worst->K) worst = &r;
    }
    const LadderDecision dec = decide_ladder(K, infinite, cfg);
    rep.verdict = dec.verdict;
    rep.reason = dec.reason;
    rep.constant = worst ? worst->K : 0.0;
    if (worst) rep.witness = worst->witness;
}

}  // namespace

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::Lne: return "LNE";
        case Verdict::NotLne: return "NOT_LNE";
        case Verdict::Inconclusive: return "INCONCLUSIVE";
    }
    return "INCONCLUSIVE";
}

std::string to_string(Locus l) {
    switch (l) {
        case Locus::Global: return "GLOBAL";
        case Locus::AtPoint: return "AT_POINT";
        case Locus::AtInfinity: return "AT_INFINITY";
        case Locus::Projective: return "PROJECTIVE";
    }
    return "GLOBAL";
}

Verdict verdict_from_string(const std::string& s) {
    if (s == "LNE") return Verdict::Lne;
    if (s == "NOT_LNE") return Verdict::NotLne;
    if (s == "INCONCLUSIVE") return Verdict::Inconclusive;
    throw Error("unknown verdict '" + s + "'");
}

Locus locus_from_string(const std::string& s) {
    if (s == "GLOBAL") return Locus::Global;
    if (s == "AT_POINT") return Locus::AtPoint;
    if (s == "AT_INFINITY") return Locus::AtInfinity;
    if (s == "PROJECTIVE") return Locus::Projective;
    throw Error("unknown locus '" + s + "'");
}

SamplingPlan relative_plan(std::size_t budget, double r_min, double r_max, std::optional<Point> anchor) {
    SamplingPlan plan;
    plan.budget = budget;
    plan.r_min = r_min;
    plan.r_max = r_max;
    plan.floor = r_min > 0.0 ? r_min : 1.0;
    plan.anchor = std::move(anchor);
    return plan;
}

unsigned worker_count(unsigned requested) {
    if (requested > 0) return requested;
    return std::max(1u, std::thread::hardware_concurrency());
}

RatioResult ratio_sup(const Sample& s, const InnerMetric& m, const std::vector<std::size_t>& members,
                      const PairFilter& accept, double pair_budget, unsigned threads) {
    RatioResult res;
    const std::size_t n = members.size();
    if (n < 2) return res;
    const bool all = static_cast<double>(n) * static_cast<double>(n) <= pair_budget;
    std::vector<std::size_t> sources;
    if (all) {
        sources.resize(n);
        std::iota(sources.begin(), sources.end(), 0);
    } else {
        const auto count = static_cast<std::size_t>(std::max(1.0, std::floor(pair_budget / static_cast<double>(n))));
        sources = farthest_point_order(s.subset(members), count);
    }
    const unsigned w = static_cast<unsigned>(std::min<std::size_t>(worker_count(threads), sources.size()));
    std::vector<Best> best(w);
    auto work = [&](unsigned id) {
        Best& b = best[id];
        std::vector<double> row;
        for (std::size_t k = id; k < sources.size(); k += w) {
            const std::size_t a = sources[k];
            const std::size_t i = members[a];
            if (!m.random_access()) row = m.distances_from(i);
            for (std::size_t c = all ? a + 1 : 0; c < n; ++c) {
                const std::size_t j = members[c];
                if (j == i) continue;
                if (accept && !accept(i, j)) continue;
                const double outer = ambient_distance(s.metric, s.points[i], s.points[j]);
                if (!(outer > 0.0)) continue;
                const double inner = m.random_access() ? m.distance(i, j) : row[j];
                ++b.pairs;
                b.offer(inner / outer, i, j, inner, outer);
            }
        }
    };
    if (w <= 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned id = 0; id < w; ++id) pool.emplace_back(work, id);
        for (auto& t : pool) t.join();
    }
    Best total;
    for (const auto& b : best) total.merge(b);
    res.pairs = total.pairs;
    if (total.set) {
        res.K = total.ratio;
        res.witness = make_witness(s, total);
    }
    return res;
}

RatioResult ratio_sup(const Sample& s, const ProximityGraph& g, double pair_budget, unsigned threads) {
    if (g.size() != s.size()) throw Error("graph and sample differ in size");
    GraphMetric m(g);
    std::vector<std::size_t> all(s.size());
    std::iota(all.begin(), all.end(), 0);
    return ratio_sup(s, m, all, {}, pair_budget, threads);
}

LadderDecision decide_ladder(const std::vector<double>& K, bool infinite_pair, const AnalysisConfig& cfg) {
    if (infinite_pair) return {Verdict::NotLne, "a pair of points has infinite inner distance"};
    int run = 0, longest = 0;
    for (std::size_t k = 0; k + 1 < K.size(); ++k) {
        run = K[k + 1] >= cfg.divergence_ratio * K[k] ? run + 1 : 0;
        longest = std::max(longest, run);
    }
    if (longest >= cfg.divergence_run) {
        return {Verdict::NotLne, fmt::format("K grows by a factor >= {} on {} consecutive rungs", cfg.divergence_ratio,
                                             longest)};
    }
    if (K.size() >= 3) {
        const auto [lo, hi] = std::minmax({K[K.size() - 3], K[K.size() - 2], K[K.size() - 1]});
        if (lo > 0.0 && (hi - lo) / lo < cfg.stability) {
            return {Verdict::Lne, fmt::format("last three rungs agree within {}%", 100.0 * cfg.stability)};
        }
    }
    return {Verdict::Inconclusive, "ladder is neither stable nor diverging"};
}

std::vector<double> ladder_radii(double R0, int rungs) {
    if (!(R0 > 0.0)) throw Error("ladder base radius must be positive");
    if (rungs < 3) throw Error("a ladder needs at least 3 doublings");
    std::vector<double> r;
    for (int k = 0; k <= rungs; ++k) r.push_back(std::ldexp(R0, k));
    return r;
}

LneReport ladder_at_infinity(const Sample& s, const InnerMetric& m, const std::vector<std::size_t>& members,
                             const std::vector<double>& radii, const AnalysisConfig& cfg,
                             const std::vector<double>* radius) {
    LneReport rep;
    rep.label = "at infinity";
    rep.locus = Locus::AtInfinity;
    rep.config = cfg;
    const std::vector<double>& rad = radius ? *radius : s.radial;
    for (double R : radii) {
        std::vector<std::size_t> shell;
        bool inner_band = false;
        for (std::size_t i : members) {
            if (rad[i] >= R && rad[i] < 4.0 * R) {
                shell.push_back(i);
                inner_band = inner_band || rad[i] < 2.0 * R;
            }
        }
        if (shell.size() < 2 || !inner_band) {
            throw InsufficientTail(fmt::format("too few sample points in the shell at R = {}", R));
        }
        const auto accept = [&rad, R](std::size_t i, std::size_t j) { return std::min(rad[i], rad[j]) < 2.0 * R; };
        const RatioResult rr = ratio_sup(s, m, shell, accept, cfg.pair_budget, cfg.threads);
        if (rr.pairs == 0) throw InsufficientTail(fmt::format("no pairs in the shell at R = {}", R));
        rep.ladder.push_back({R, rr.K, shell.size(), rr.pairs, rr.witness});
    }
    conclude(rep, rep.ladder, cfg);
    return rep;
}

LneReport ladder_at_point(const Sample& s, const InnerMetric& m, const Point& x0, const std::vector<double>& radii,
                          const AnalysisConfig& cfg) {
    LneReport rep;
    rep.label = "at point";
    rep.locus = Locus::AtPoint;
    rep.point = x0;
    rep.config = cfg;
    std::vector<double> dist(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) dist[i] = ambient_distance(s.metric, s.points[i], x0);
    std::vector<LadderRung> approach;
    for (double r : radii) {
        std::vector<std::size_t> shell;
        bool outer_band = false;
        for (std::size_t i = 0; i < s.size(); ++i) {
            if (dist[i] > 0.25 * r && dist[i] <= r) {
                shell.push_back(i);
                outer_band = outer_band || dist[i] > 0.5 * r;
            }
        }
        if (shell.size() < 2 || !outer_band) {
            throw InsufficientTail(fmt::format("too few sample points in the ball shell at r = {}", r));
        }
        const auto accept = [&dist, r](std::size_t i, std::size_t j) { return std::max(dist[i], dist[j]) > 0.5 * r; };
        const RatioResult rr = ratio_sup(s, m, shell, accept, cfg.pair_budget, cfg.threads);
        if (rr.pairs == 0) throw InsufficientTail(fmt::format("no pairs in the ball shell at r = {}", r));
        approach.push_back({r, rr.K, shell.size(), rr.pairs, rr.witness});
    }
    conclude(rep, approach, cfg);
    rep.ladder.assign(approach.rbegin(), approach.rend());
    return rep;
}

LneReport lne_at_infinity(const SetDescriptor& d, const AnalysisConfig& cfg) {
    validate(d);
    if (d.is_network() && !d.unbounded()) throw Error("the set is bounded; there is nothing to analyse at infinity");
    const auto radii = ladder_radii(cfg.R0, cfg.rungs);
    const double top = 4.0 * radii.back();
    Sample s;
    std::unique_ptr<InnerMetric> m;
    if (d.is_network()) {
        s = sample_network(d.network(), relative_plan(cfg.budget, 0.5 * cfg.R0, top * 1.0001));
        m = std::make_unique<NetworkMetric>(d.network(), s, cfg.tol);
    } else {
        s = sample_descriptor(d, cfg.budget, 0.0, kInf);
        m = make_graph_metric(s, cfg.eps);
    }
    std::vector<std::size_t> all(s.size());
    std::iota(all.begin(), all.end(), 0);
    return ladder_at_infinity(s, *m, all, radii, cfg);
}

LneReport lne_at_point(const SetDescriptor& d, const Point& x0, const AnalysisConfig& cfg) {
    validate(d);
    if (!(cfg.r0 > 0.0)) throw Error("point ladder radius must be positive");
    if (cfg.rungs < 3) throw Error("a ladder needs at least 3 halvings");
    std::vector<double> radii;
    for (int k = 0; k <= cfg.rungs; ++k) radii.push_back(std::ldexp(cfg.r0, -k));
    Sample s;
    std::unique_ptr<InnerMetric> m;
    if (d.is_network()) {
        if (x0.dim() != d.network().coord_dim()) throw DimensionMismatch("base point has the wrong dimension");
        s = sample_network(d.network(), relative_plan(cfg.budget, 0.25 * radii.back() * 0.999, cfg.r0 * 1.0001, x0));
        m = std::make_unique<NetworkMetric>(d.network(), s, cfg.tol);
    } else {
        s = sample_descriptor(d, cfg.budget, 0.0, kInf);
        m = make_graph_metric(s, cfg.eps);
    }
    return ladder_at_point(s, *m, x0, radii, cfg);
}

Obstruction shared_direction_obstruction(const ComponentSplit& cs, double delta_bin) {
    Obstruction ob;
    ob.gap = kInf;
    if (cs.parts.size() < 2) return ob;
    std::vector<AsymptoticSet> ext, raw;
    for (const auto& p : cs.parts) {
        ext.push_back(asymptotic_set(p, std::nullopt, delta_bin, true));
        raw.push_back(asymptotic_set(p, std::nullopt, delta_bin, false));
    }
    for (const auto* sets : {&ext, &raw}) {
        for (std::size_t i = 0; i < sets->size(); ++i) {
            for (std::size_t j = i + 1; j < sets->size(); ++j) {
                for (const auto& u : (*sets)[i].directions) {
                    for (const auto& v : (*sets)[j].directions) {
                        const double g = angle_between(u, v);
                        if (g < ob.gap) {
                            ob.gap = g;
                            ob.part_i = i;
                            ob.part_j = j;
                            // the bisector; opposite directions have none
                            const Point mid = u.point() + v.point();
                            ob.direction = mid.norm() > 1e-12 ? std::optional(UnitDirection(mid)) : std::nullopt;
                        }
                    }
                }
            }
        }
    }
    ob.obstructed = ob.gap < delta_bin;
    return ob;
}

void combine_stages(LneReport& rep) {
    const LneReport* failing = nullptr;
    const LneReport* unsure = nullptr;
    double K = 0.0;
    for (const auto& st : rep.stages) {
        if (st.verdict == Verdict::NotLne && !failing) failing = &st;
        if (st.verdict == Verdict::Inconclusive && !unsure) unsure = &st;
        K = std::max(K, st.constant);
    }
    rep.constant = K;
    if (failing) {
        rep.verdict = Verdict::NotLne;
        rep.reason = failing->label + ": " + failing->reason;
        rep.witness = failing->witness;
    } else if (unsure) {
        rep.verdict = Verdict::Inconclusive;
        rep.reason = unsure->label + ": " + unsure->reason;
    } else {
        rep.verdict = Verdict::Lne;
        rep.reason = "all stages passed";
        for (const auto& st : rep.stages) {
            if (st.constant == K) {
                rep.witness = st.witness;
                break;
            }
        }
    }
}

LneReport glue_certify(const SetDescriptor& d, const AnalysisConfig& cfg) {
    validate(d);
    LneReport rep;
    rep.label = "glue";
    rep.locus = Locus::Global;
    rep.config = cfg;
    const double R = cfg.glue_radius;
    if (!(R > 0.0)) throw Error("glue radius must be positive");
    const bool unbounded = d.unbounded();
    const double r_max = cfg.r_max > 0.0 ? cfg.r_max : (unbounded ? 4.0 * std::ldexp(R, cfg.rungs) * 1.0001 : kInf);
    const Sample s = sample_descriptor(d, cfg.budget, cfg.r_min, r_max);
    const auto m = make_inner_metric(d, s, cfg.eps);
    std::vector<std::size_t> all(s.size());
    std::iota(all.begin(), all.end(), 0);

    // stage 1: the sample as a whole and the singular points
    {
        const RatioResult g = ratio_sup(s, *m, all, {}, cfg.pair_budget, cfg.threads);
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
        rep.stages.push_back(std::move(st));
    }
    if (d.is_network()) {
        const NetworkTopology topo = topology(d.network());
        for (std::size_t n = 0; n < topo.nodes.size(); ++n) {
            if (topo.degree[n] < 2 && !topo.limit_node[n]) continue;
            double nearest = kInf;
            for (std::size_t k = 0; k < topo.nodes.size(); ++k) {
                if (k != n) nearest = std::min(nearest, ambient_distance(d.metric(), topo.nodes[n], topo.nodes[k]));
            }
            AnalysisConfig sub = cfg;
            sub.r0 = std::min(cfg.r0, 0.5 * nearest);
            const std::string label = fmt::format("point {}", to_string(topo.nodes[n]));
            try {
                LneReport st = lne_at_point(d, topo.nodes[n], sub);
                st.label = label;
                rep.stages.push_back(std::move(st));
            } catch (const Error& e) {
                rep.stages.push_back(failed_stage(label, Locus::AtPoint, sub, e.what()));
            }
        }
    }

    // stages 2 and 3: the unbounded components past R
    if (unbounded) {
        std::vector<double> radii;
        for (double r = R; 4.0 * r <= r_max; r *= 2.0) radii.push_back(r);
        try {
            if (radii.size() < 4) throw InsufficientTail("sampling range too short for a ladder past the glue radius");
            const ComponentSplit split =
                d.is_network() ? split_network_at_radius(d.network(), s, R) : split_components_at_radius(s, R, cfg.eps);
            ComponentSplit ends;
            ends.radius = split.radius;
            ends.eps = split.eps;
            const double reach = 0.5 * radii.back() * 4.0;
            for (std::size_t p = 0; p < split.parts.size(); ++p) {
                const auto& idx = split.indices[p];
                const double top = *std::max_element(split.parts[p].radial.begin(), split.parts[p].radial.end());
                if (top < reach) continue;
                ends.parts.push_back(split.parts[p]);
                ends.indices.push_back(idx);
            }
            for (std::size_t p = 0; p < ends.parts.size(); ++p) {
                const std::string label = fmt::format("component {} at infinity", p);
                try {
                    LneReport st = ladder_at_infinity(s, *m, ends.indices[p], radii, cfg);
                    st.label = label;
                    rep.stages.push_back(std::move(st));
                } catch (const Error& e) {
                    rep.stages.push_back(failed_stage(label, Locus::AtInfinity, cfg, e.what()));
                }
            }
            if (ends.parts.size() >= 2) {
                LneReport st;
                st.label = "asymptotic directions";
                st.locus = Locus::AtInfinity;
                st.config = cfg;
                const Obstruction ob = shared_direction_obstruction(ends, cfg.delta_bin);
                if (ob.obstructed) {
                    st.verdict = Verdict::NotLne;
                    st.reason = fmt::format("components {} and {} share the direction {}", ob.part_i, ob.part_j,
                                            to_string(ob.direction->point()));
                } else {
                    st.verdict = Verdict::Lne;
                    st.reason = fmt::format("directions of different components are {:.3g} degrees apart",
                                            ob.gap * 180.0 / std::numbers::pi);
                }
                rep.stages.push_back(std::move(st));
            }
        } catch (const Error& e) {
            rep.stages.push_back(failed_stage("at infinity", Locus::AtInfinity, cfg, e.what()));
        }
    }

    combine_stages(rep);
    return rep;
}

double cone_constant(const SetDescriptor& d, const AnalysisConfig& cfg) {
    validate(d);
    const double r_max = cfg.r_max > 0.0 ? cfg.r_max : (d.unbounded() ? 4.0 * std::ldexp(cfg.R0, cfg.rungs) : kInf);
    const Sample s = sample_descriptor(d, cfg.budget, 0.0, r_max);
    const auto m = make_inner_metric(d, s, cfg.eps);
    std::size_t origin = 0;
    for (std::size_t i = 1; i < s.size(); ++i) {
        if (s.radial[i] < s.radial[origin]) origin = i;
    }
    const std::vector<double> dist = m->distances_from(origin);
    double C = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (i == origin || !(s.radial[i] > 0.0)) continue;
        const double r = (dist[i] + s.radial[origin]) / s.radial[i];
        if (!std::isfinite(r)) throw Unreachable("part of the sample is disconnected from the origin");
        C = std::max(C, r);
    }
    return C;
}

namespace {

// (arc index, parameter) of the point of the network closest to p.
std::pair<std::size_t, double> locate(const ArcNetwork& net, const Sample& s, const Point& p) {
    std::size_t best = s.size();
    double bd = kInf;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s.provenance[i].source != Provenance::Source::Arc) continue;
        const double dd = distance(s.points[i], p);
        if (dd < bd) {
            bd = dd;
            best = i;
        }
    }
    if (best == s.size()) throw Error("network sample has no arc points");
    const std::size_t a = static_cast<std::size_t>(s.provenance[best].arc);
    const double t = s.provenance[best].param;
    double lo = t, hi = t;
    for (std::size_t i = 0; i < s.size(); ++i) {
        const auto& pv = s.provenance[i];
        if (pv.source != Provenance::Source::Arc || static_cast<std::size_t>(pv.arc) != a) continue;
        if (pv.param < t && (lo == t || pv.param > lo)) lo = pv.param;
        if (pv.param > t && (hi == t || pv.param < hi)) hi = pv.param;
    }
    const ParamArc& arc = net.arcs[a];
    if (lo == t) lo = std::isfinite(arc.lo) ? arc.lo : t;
    if (hi == t) hi = std::isfinite(arc.hi) ? arc.hi : t;
    // golden-section search for the nearest parameter
    const double g = 0.5 * (std::sqrt(5.0) - 1.0);
    auto f = [&](double u) { return distance(arc.position(u), p); };
    double x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
    double f1 = f(x1), f2 = f(x2);
    for (int it = 0; it < 200 && hi - lo > 1e-15 * (1.0 + std::abs(lo)); ++it) {
        if (f1 < f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - g * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + g * (hi - lo);
            f2 = f(x2);
        }
    }
    const double u = 0.5 * (lo + hi);
    if (f(u) > 1e-7 * (1.0 + p.norm())) {
        throw Error(fmt::format("point {} does not lie on the set", to_string(p)));
    }
    return {a, u};
}

}  // namespace

std::vector<double> arc_pair_ratio(const ParamArc& y1, const ParamArc& y2, const SetDescriptor& d,
                                   const std::vector<double>& t_ladder, double tol) {
    validate(d);
    if (!d.is_network()) throw Error("arc pair ratios need an arc network");
    const ArcNetwork& net = d.network();
    double reach = 0.0;
    for (double t : t_ladder) reach = std::max({reach, y1.position(t).norm(), y2.position(t).norm()});
    const Sample s = sample_network(net, relative_plan(20000, 0.0, 2.0 * reach + 1.0));
    std::vector<double> out;
    for (double t : t_ladder) {
        const Point p = y1.position(t), q = y2.position(t);
        const auto [ap, tp] = locate(net, s, p);
        const auto [aq, tq] = locate(net, s, q);
        const double inner = network_inner_distance(net, {net.arcs[ap].label, tp}, {net.arcs[aq].label, tq}, tol);
        const double outer = ambient_distance(net.metric, p, q);
        out.push_back(outer > 0.0 ? inner / outer : std::numeric_limits<double>::quiet_NaN());
    }
    return out;
}

Sample projective_sample(const ArcNetwork& affine, const ArcNetwork& lifted, const SamplingPlan& plan) {
    const Sample base = sample_network(affine, plan);
    Sample s;
    s.metric = lifted.metric;
    for (std::size_t i = 0; i < base.size(); ++i) {
        Provenance prov = base.provenance[i];
        prov.chart_radius = base.radial[i];
        s.add(projective_lift(base.points[i]), prov);
    }
    // points at infinity reached by unbounded ends
    const NetworkTopology topo = topology(lifted);
    std::vector<bool> added(topo.nodes.size(), false);
    for (std::size_t a = 0; a < affine.arcs.size(); ++a) {
        for (bool high : {false, true}) {
            if (affine.arcs[a].end(high).kind != ArcEnd::Kind::Unbounded) continue;
            const int id = high ? topo.end_node[a].second : topo.end_node[a].first;
            if (id < 0 || added[static_cast<std::size_t>(id)]) continue;
            added[static_cast<std::size_t>(id)] = true;
            Provenance prov;
            prov.source = Provenance::Source::Node;
            prov.node = id;
            prov.chart_radius = kInf;
            s.add(topo.nodes[static_cast<std::size_t>(id)], prov);
        }
    }
    return s;
}

LneReport lne_projective(const SetDescriptor& d, const AnalysisConfig& cfg) {
    validate(d);
    if (!d.is_network() || d.metric().kind != AmbientMetric::Kind::Euclidean || d.metric().dim != 2) {
        throw Error("projective analysis takes an affine plane arc network");
    }
    const ArcNetwork lifted = transform_network(d.network(), NetworkTransform::ProjectiveLift);
    const auto radii = ladder_radii(cfg.R0, cfg.rungs);
    const Sample s = projective_sample(d.network(), lifted, relative_plan(cfg.budget, 0.0, 4.0 * radii.back() * 1.0001));
    const NetworkMetric m(lifted, s, cfg.tol);
    std::vector<std::size_t> all(s.size());
    std::iota(all.begin(), all.end(), 0);
    std::vector<double> chart(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) chart[i] = s.provenance[i].chart_radius;

    LneReport rep = ladder_at_infinity(s, m, all, radii, cfg, &chart);
    rep.label = "projective closure";
    rep.locus = Locus::Projective;
    const RatioResult g = ratio_sup(s, m, all, {}, cfg.pair_budget, cfg.threads);
    LneReport st;
    st.label = "sample";
    st.locus = Locus::Projective;
    st.config = cfg;
    st.constant = g.K;
    st.witness = g.witness;
    st.verdict = g.witness && g.witness->infinite() ? Verdict::NotLne : Verdict::Lne;
    st.reason = fmt::format("sup over {} pairs", g.pairs);
    if (st.verdict == Verdict::NotLne) {
        rep.verdict = Verdict::NotLne;
        rep.reason = "the closure is disconnected";
        rep.witness = g.witness;
    }
    if (rep.verdict == Verdict::Lne) rep.constant = std::max(rep.constant, g.K);
    rep.stages.push_back(std::move(st));
    return rep;
}

}  // namespace lne
