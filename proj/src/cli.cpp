#include "lne/cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <fmt/format.h>
#include <fstream>
#include <map>
#include <memory>
#include <ostream>

#include "lne/io.hpp"
#include "lne/report.hpp"
#include "lne/svg.hpp"

namespace lne {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Configuration flags of one subcommand; values are applied on top
// of the --config file in the order of the table.
struct ConfigFlags {
    std::string file;
    std::map<std::string, std::string> values;
    std::map<std::string, CLI::Option*> options;

    void attach(CLI::App* app) {
        app->add_option("--config", file, "key = value configuration file (flags override it)");
        static const std::pair<const char*, const char*> table[] = {
            {"budget", "number of sample points"},
            {"eps", "proximity graph scale, or auto"},
            {"R0", "first rung of the ladder at infinity"},
            {"rungs", "number of ladder doublings (at least 3)"},
            {"r0", "first rung of the ladder at a point"},
            {"delta_bin", "angular resolution in degrees"},
            {"pair_budget", "largest number of pairs visited exhaustively"},
            {"tol", "quadrature tolerance"},
            {"threads", "worker threads (0 = all cores)"},
            {"seed", "seed recorded with the output"},
            {"divergence_ratio", "K growth factor counted as divergence"},
            {"divergence_run", "consecutive growing rungs meaning divergence"},
            {"stability", "relative spread of the last three rungs meaning stability"},
            {"glue_radius", "split radius of the global analysis"},
            {"r_min", "smallest sampled radius"},
            {"r_max", "largest sampled radius (0 = automatic)"},
        };
        for (const auto& [key, help] : table) {
            std::string flag = std::string("--") + key;
            std::replace(flag.begin() + 2, flag.end(), '_', '-');
            options[key] = app->add_option(flag, values[key], help);
        }
    }

    AnalysisConfig resolve() const {
        AnalysisConfig cfg = file.empty() ? AnalysisConfig{} : load_config(file);
        for (const auto& [key, opt] : options) {
            if (opt->count() == 0) continue;
            try {
                apply_config_entry(cfg, key, values.at(key));
            } catch (const Error& e) {
                throw CLI::ValidationError(opt->get_name(), e.what());
            }
        }
        return cfg;
    }
};

void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw InputError(fmt::format("{}: cannot write file", path));
    f << content;
    if (!f) throw InputError(fmt::format("{}: write failed", path));
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

SetDescriptor load_input(const std::string& path) {
    const std::filesystem::path p(path);
    if (p.extension() == ".csv") {
        SetDescriptor d;
        d.name = p.stem().string();
        d.body = load_points_csv(p);
        try {
            validate(d);
        } catch (const Error& e) {
            throw InputError(fmt::format("{}: {}", path, e.what()));
        }
        return d;
    }
    return load_descriptor(p);
}

double sample_top(const SetDescriptor& d, const AnalysisConfig& cfg) {
    if (cfg.r_max > 0.0) return cfg.r_max;
    return d.unbounded() ? 4.0 * std::ldexp(cfg.R0, cfg.rungs) : kInf;
}

Sample sphere_view(const SetDescriptor& d, const AnalysisConfig& cfg) {
    const Sample s = sample_descriptor(d, cfg.budget, 0.0, d.unbounded() ? 1e4 : kInf);
    Sample out;
    out.metric = AmbientMetric::sphere(s.metric.dim);
    for (std::size_t i = 0; i < s.size(); ++i) out.add(stereo_to_sphere(s.points[i]), s.provenance[i]);
    if (d.unbounded()) {
        Provenance p;
        p.source = Provenance::Source::Node;
        out.add(north_pole(s.metric.dim), p);
    }
    return out;
}

struct Outputs {
    std::string json, csv, svg, svg_plane, svg_sphere;
};

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Estimate inner/outer distance distortion of curves and point sets, and decide whether they are "
                 "Lipschitz normally embedded.",
                 "lnetool"};
    app.set_version_flag("--version", std::string(kVersion));
    app.require_subcommand(1);

    std::string input;
    Outputs o;

    auto* sample = app.add_subcommand("sample", "Sample a descriptor and write a point CSV");
    sample->add_option("descriptor", input, "descriptor file")->required();
    sample->add_option("-o,--output", o.csv, "CSV output (stdout when omitted)");

    auto* estimate = app.add_subcommand("estimate", "Estimate the LNE constant and decide the verdict");
    estimate->add_option("input", input, "descriptor file or point CSV")->required();
    bool global = false, at_inf = false, projective = false;
    std::string at_point;
    auto* g_flag = estimate->add_flag("--global", global, "whole set (default)");
    auto* p_flag = estimate->add_option("--at-point", at_point, "base point, as \"x, y\"");
    auto* i_flag = estimate->add_flag("--at-infinity", at_inf, "germ at infinity");
    auto* j_flag = estimate->add_flag("--projective", projective, "closure in the projective plane");
    g_flag->excludes(p_flag)->excludes(i_flag)->excludes(j_flag);
    p_flag->excludes(i_flag)->excludes(j_flag);
    i_flag->excludes(j_flag);
    estimate->add_option("--json", o.json, "report JSON");
    estimate->add_option("--csv", o.csv, "ladder CSV");
    estimate->add_option("--svg", o.svg, "ladder plot");

    auto* compactify = app.add_subcommand("compactify", "Compare the set with its image on the sphere");
    compactify->add_option("descriptor", input, "descriptor file")->required();
    compactify->add_option("--json", o.json, "report JSON");
    compactify->add_option("--svg-plane", o.svg_plane, "plane view");
    compactify->add_option("--svg-sphere", o.svg_sphere, "azimuthal view around the north pole");

    auto* invert = app.add_subcommand("invert", "Compare the set at the origin with its inversion at infinity");
    invert->add_option("descriptor", input, "descriptor file")->required();
    invert->add_option("--json", o.json, "report JSON");

    auto* links = app.add_subcommand("links", "Link constants along the ladder at infinity");
    double band = 0.1;
    links->add_option("descriptor", input, "descriptor file")->required();
    links->add_option("--band", band, "relative half-width of each band")->check(CLI::Range(1e-6, 0.999));
    links->add_option("--csv", o.csv, "link table CSV");
    links->add_option("--json", o.json, "report JSON");

    auto* corpus = app.add_subcommand("corpus", "Run a corpus file and compare with the expected verdicts");
    corpus->add_option("corpus", input, "corpus file")->required();
    corpus->add_option("--json", o.json, "results JSON");

    std::vector<std::pair<CLI::App*, std::unique_ptr<ConfigFlags>>> flags;
    for (auto* sub : {sample, estimate, compactify, invert, links, corpus}) {
        flags.emplace_back(sub, std::make_unique<ConfigFlags>());
        flags.back().second->attach(sub);
    }

    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    AnalysisConfig cfg;
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
        for (const auto& [sub, f] : flags) {
            if (sub->parsed()) cfg = f->resolve();
        }
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    } catch (const InputError& e) {
        err << "error: " << e.what() << '\n';
        return kExitInput;
    }

    try {
        if (*sample) {
            const SetDescriptor d = load_input(input);
            const Sample s = sample_descriptor(d, cfg.budget, cfg.r_min, sample_top(d, cfg));
            std::ostringstream csv;
            write_points_csv(s, csv);
            if (o.csv.empty()) {
                out << csv.str();
            } else {
                write_file(o.csv, csv.str());
                out << fmt::format("{}: {} points written to {}\n", d.name, s.size(), o.csv);
            }
            return kExitOk;
        }
        if (*estimate) {
            const SetDescriptor d = load_input(input);
            LneReport r;
            if (!at_point.empty()) {
                Point x0;
                try {
                    x0 = parse_point(at_point);
                } catch (const Error& e) {
                    throw InputError(fmt::format("--at-point: {}", e.what()));
                }
                r = lne_at_point(d, x0, cfg);
            } else if (at_inf) {
                r = lne_at_infinity(d, cfg);
            } else if (projective) {
                r = lne_projective(d, cfg);
            } else {
                r = glue_certify(d, cfg);
            }
            r.label = d.name + " " + r.label;
            out << summary(r);
            if (!o.json.empty()) write_file(o.json, dump(document("estimate", cfg, to_json(r))));
            if (!o.csv.empty()) write_file(o.csv, ladder_csv(r));
            if (!o.svg.empty()) write_file(o.svg, ladder_svg(r));
            return r.verdict == Verdict::Inconclusive ? kExitInconclusive : kExitOk;
        }
        if (*compactify) {
            const SetDescriptor d = load_input(input);
            const EquivalenceReport e = verify_compactification(d, cfg);
            out << summary(e.left) << summary(e.right);
            out << fmt::format("{}: {}\n", d.name,
                               !e.defined ? "undefined (inconclusive side)" : e.agree ? "verdicts agree" : "verdicts DISAGREE");
            if (!o.json.empty()) write_file(o.json, dump(document("compactify", cfg, to_json(e))));
            if (!o.svg_plane.empty()) {
                write_file(o.svg_plane,
                           plane_svg(sample_descriptor(d, cfg.budget, 0.0, sample_top(d, cfg)), d.name + " in the plane"));
            }
            if (!o.svg_sphere.empty()) write_file(o.svg_sphere, sphere_svg(sphere_view(d, cfg), d.name + " on the sphere"));
            return e.defined ? kExitOk : kExitInconclusive;
        }
        if (*invert) {
            const SetDescriptor d = load_input(input);
            const EquivalenceReport e = verify_inversion(d, cfg);
            out << summary(e.left) << summary(e.right);
            out << fmt::format("{}: {}\n", d.name,
                               !e.defined ? "undefined (inconclusive side)" : e.agree ? "verdicts agree" : "verdicts DISAGREE");
            if (!o.json.empty()) write_file(o.json, dump(document("invert", cfg, to_json(e))));
            return e.defined ? kExitOk : kExitInconclusive;
        }
        if (*links) {
            const SetDescriptor d = load_input(input);
            const LinkReport l = verify_link_criterion(d, cfg, band);
            out << links_csv(l) << summary(l.links) << summary(l.at_infinity) << l.note << '\n';
            if (!o.csv.empty()) write_file(o.csv, links_csv(l));
            if (!o.json.empty()) write_file(o.json, dump(document("links", cfg, to_json(l))));
            return l.links.verdict == Verdict::Inconclusive ? kExitInconclusive : kExitOk;
        }
        if (*corpus) {
            const auto cases = load_corpus(input);
            const auto results = run_corpus(cases, cfg);
            out << corpus_table(results);
            if (!o.json.empty()) write_file(o.json, dump(document("corpus", cfg, to_json(results))));
            const bool all = std::all_of(results.begin(), results.end(), [](const auto& r) { return r.pass; });
            return all ? kExitOk : kExitCorpusMismatch;
        }
    } catch (const InputError& e) {
        err << "error: " << e.what() << '\n';
        return kExitInput;
    } catch (const InvalidDescriptor& e) {
        err << "error: " << e.what() << '\n';
        return kExitInput;
    } catch (const DimensionMismatch& e) {
        err << "error: " << e.what() << '\n';
        return kExitInput;
    } catch (const Error& e) {
        err << "analysis failed: " << e.what() << '\n';
        return kExitInconclusive;
    }
    return kExitUsage;
}

}  // namespace lne
