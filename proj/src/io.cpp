#include "lne/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fmt/format.h>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

namespace lne {

namespace {

std::string trim(std::string_view s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return std::string(s.substr(a, b - a));
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    return s;
}

// Split at separators outside parentheses.
std::vector<std::string> split_top(const std::string& s, char sep) {
    std::vector<std::string> out;
    int depth = 0;
    std::string cur;
    for (char c : s) {
        if (c == '(') ++depth;
        if (c == ')') --depth;
        if (c == sep && depth == 0) {
            out.push_back(trim(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(trim(cur));
    return out;
}

struct Entry {
    std::size_t line = 0;
    std::string key, value;
};

struct Section {
    std::string kind, label;
    std::size_t line = 0;
    std::vector<Entry> entries;
};

struct Document {
    std::string source;
    std::vector<Entry> header;
    std::vector<Section> sections;

    [[noreturn]] void fail(std::size_t line, const std::string& msg) const {
        throw InputError(fmt::format("{}:{}: {}", source, line, msg));
    }
};

Document read_document(std::istream& in, const std::string& source) {
    Document doc;
    doc.source = source;
    std::string raw;
    std::size_t no = 0;
    while (std::getline(in, raw)) {
        ++no;
        const auto hash = raw.find('#');
        const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') doc.fail(no, "unterminated section header");
            const std::string inner = trim(line.substr(1, line.size() - 2));
            const auto sp = inner.find_first_of(" \t");
            Section sec;
            sec.line = no;
            sec.kind = lower(inner.substr(0, sp));
            sec.label = sp == std::string::npos ? std::string() : trim(inner.substr(sp));
            if (sec.kind.empty()) doc.fail(no, "empty section header");
            doc.sections.push_back(std::move(sec));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) doc.fail(no, fmt::format("expected 'key = value', got '{}'", line));
        Entry e{no, trim(line.substr(0, eq)), trim(line.substr(eq + 1))};
        if (e.key.empty()) doc.fail(no, "missing key before '='");
        if (doc.sections.empty()) doc.header.push_back(std::move(e));
        else doc.sections.back().entries.push_back(std::move(e));
    }
    if (in.bad()) throw InputError(fmt::format("{}: read error", source));
    return doc;
}

std::ifstream open(const std::filesystem::path& path) {
    std::ifstream f(path);
    if (!f) throw InputError(fmt::format("{}: cannot open file", path.string()));
    return f;
}

// Run `f`, turning library errors into errors that name the line.
template <class F>
auto at_line(const Document& doc, std::size_t line, F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const InputError&) {
        throw;
    } catch (const Error& e) {
        doc.fail(line, e.what());
    }
}

std::size_t parse_count(const std::string& text) {
    std::size_t v = 0;
    const auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || p != text.data() + text.size()) throw Error(fmt::format("'{}' is not a count", text));
    return v;
}

ArcEnd parse_end(const std::string& text) {
    const std::string t = trim(text);
    const auto sp = t.find_first_of(" \t");
    const std::string word = lower(t.substr(0, sp));
    const std::string rest = sp == std::string::npos ? std::string() : trim(t.substr(sp));
    if (word == "limit") {
        if (rest.empty()) throw Error("limit end needs a point");
        return ArcEnd::converging_to(parse_point(rest));
    }
    if (!rest.empty()) throw Error(fmt::format("unexpected text after '{}'", word));
    if (word == "closed") return ArcEnd::closed();
    if (word == "open") return ArcEnd::open();
    if (word == "unbounded") return ArcEnd::unbounded();
    throw Error(fmt::format("unknown arc end '{}' (closed, open, unbounded, limit <point>)", word));
}

// "c e1 e2 ...; ..." to an expression string.
std::string polynomial_text(const std::string& text, const std::vector<std::string>& vars) {
    std::string out;
    for (const auto& term : split_top(text, ';')) {
        std::istringstream ts(term);
        std::vector<std::string> tok;
        for (std::string w; ts >> w;) tok.push_back(w);
        if (tok.size() != vars.size() + 1) {
            throw Error(fmt::format("polynomial term '{}' needs a coefficient and {} exponents", term, vars.size()));
        }
        std::string t = fmt::format("({})", tok[0]);
        for (std::size_t k = 0; k < vars.size(); ++k) {
            const std::size_t e = parse_count(tok[k + 1]);
            if (e > 0) t += fmt::format("*{}^{}", vars[k], e);
        }
        out += (out.empty() ? "" : " + ") + t;
    }
    return out;
}

ParamArc parse_arc(const Document& doc, const Section& sec) {
    if (sec.label.empty()) doc.fail(sec.line, "arc section needs a label, as in [arc a]");
    std::vector<std::string> coords;
    double lo = 0.0, hi = 1.0;
    bool have_coords = false, have_range = false;
    std::size_t coords_line = sec.line;
    std::optional<std::pair<std::size_t, std::string>> lo_end, hi_end;
    double mono = std::numeric_limits<double>::quiet_NaN();
    for (const auto& e : sec.entries) {
        if (e.key == "coords") {
            coords = split_top(e.value, ',');
            if (std::any_of(coords.begin(), coords.end(), [](auto& c) { return c.empty(); })) {
                doc.fail(e.line, "empty coordinate expression");
            }
            have_coords = true;
            coords_line = e.line;
        } else if (e.key == "range") {
            const auto parts = split_top(e.value, ',');
            if (parts.size() != 2) doc.fail(e.line, "range needs two values: lo, hi");
            at_line(doc, e.line, [&] {
                lo = parse_number(parts[0]);
                hi = parse_number(parts[1]);
                return 0;
            });
            if (!(lo < hi)) doc.fail(e.line, "range must satisfy lo < hi");
            have_range = true;
        } else if (e.key == "lo") {
            lo_end = std::pair{e.line, e.value};
        } else if (e.key == "hi") {
            hi_end = std::pair{e.line, e.value};
        } else if (e.key == "mono") {
            mono = at_line(doc, e.line, [&] { return parse_number(e.value); });
        } else {
            doc.fail(e.line, fmt::format("unknown arc key '{}'", e.key));
        }
    }
    if (!have_coords) doc.fail(sec.line, fmt::format("arc '{}' has no coords", sec.label));
    if (!have_range) doc.fail(sec.line, fmt::format("arc '{}' has no range", sec.label));
    ParamArc a = at_line(doc, coords_line, [&] { return ParamArc::from_expressions(sec.label, coords, lo, hi); });
    if (lo_end) a.lo_end = at_line(doc, lo_end->first, [&] { return parse_end(lo_end->second); });
    if (hi_end) a.hi_end = at_line(doc, hi_end->first, [&] { return parse_end(hi_end->second); });
    a.t_mono = mono;
    return a;
}

AmbientMetric parse_metric(const std::string& name, std::size_t dim) {
    return {metric_kind_from_string(lower(name)), dim};
}

}  // namespace

double parse_number(const std::string& text) {
    const std::string t = lower(trim(text));
    if (t == "inf" || t == "+inf" || t == "infinity") return std::numeric_limits<double>::infinity();
    if (t == "-inf" || t == "-infinity") return -std::numeric_limits<double>::infinity();
    if (t.empty()) throw Error("empty number");
    const Expression ex = Expression::parse(t, {});
    const double v = ex.eval(std::span<const double>());
    if (!std::isfinite(v)) throw Error(fmt::format("'{}' is not a finite number", text));
    return v;
}

Point parse_point(const std::string& text) {
    std::vector<double> c;
    for (const auto& part : split_top(text, ',')) c.push_back(parse_number(part));
    return Point(std::move(c));
}

SetDescriptor parse_descriptor(std::istream& in, const std::string& source, const std::filesystem::path& base_dir) {
    const Document doc = read_document(in, source);
    SetDescriptor d;
    std::string kind = "arcs", metric = "euclidean";
    std::size_t dim = 2, kind_line = 0, metric_line = 0;
    ImplicitSet imp;
    PointCloud cloud;
    std::vector<std::pair<std::size_t, std::string>> equations;
    bool have_box = false;
    for (const auto& e : doc.header) {
        if (e.key == "name") d.name = e.value;
        else if (e.key == "kind") {
            kind = lower(e.value);
            kind_line = e.line;
        } else if (e.key == "metric") {
            metric = e.value;
            metric_line = e.line;
        }
        else if (e.key == "dim") dim = at_line(doc, e.line, [&] { return parse_count(e.value); });
        else if (e.key == "box") {
            imp.box = at_line(doc, e.line, [&] { return parse_number(e.value); });
            if (!(imp.box > 0.0)) doc.fail(e.line, "box must be positive");
            have_box = true;
        } else if (e.key == "equation" || e.key == "polynomial") {
            equations.push_back({e.line, e.key == "polynomial" ? "#" + e.value : e.value});
        } else if (e.key == "point") {
            cloud.points.push_back(at_line(doc, e.line, [&] { return parse_point(e.value); }));
        } else if (e.key == "points") {
            const std::filesystem::path p = base_dir / e.value;
            const PointCloud c = at_line(doc, e.line, [&] { return load_points_csv(p); });
            cloud.points.insert(cloud.points.end(), c.points.begin(), c.points.end());
        } else {
            doc.fail(e.line, fmt::format("unknown key '{}'", e.key));
        }
    }
    if (dim == 0) throw InputError(fmt::format("{}: dim must be positive", source));
    const AmbientMetric am = [&] {
        try {
            return parse_metric(metric, dim);
        } catch (const Error& e) {
            if (metric_line > 0) doc.fail(metric_line, e.what());
            throw InputError(fmt::format("{}: {}", source, e.what()));
        }
    }();
    if (d.name.empty()) d.name = std::filesystem::path(source).stem().string();

    if (kind == "arcs") {
        ArcNetwork net;
        net.metric = am;
        for (const auto& sec : doc.sections) {
            if (sec.kind == "arc") {
                net.arcs.push_back(parse_arc(doc, sec));
            } else if (sec.kind == "junction") {
                bool have = false;
                for (const auto& e : sec.entries) {
                    if (e.key != "at") doc.fail(e.line, fmt::format("unknown junction key '{}'", e.key));
                    net.junctions.push_back(at_line(doc, e.line, [&] { return parse_point(e.value); }));
                    have = true;
                }
                if (!have) doc.fail(sec.line, "junction needs 'at = <point>'");
            } else {
                doc.fail(sec.line, fmt::format("unknown section '{}'", sec.kind));
            }
        }
        if (net.arcs.empty()) throw InputError(fmt::format("{}: no arcs declared", source));
        d.body = std::move(net);
    } else if (kind == "implicit") {
        if (!doc.sections.empty()) doc.fail(doc.sections.front().line, "implicit sets take no sections");
        if (am.kind != AmbientMetric::Kind::Euclidean) throw InputError(fmt::format("{}: implicit sets are euclidean", source));
        if (!have_box) throw InputError(fmt::format("{}: implicit set needs 'box'", source));
        if (equations.empty()) throw InputError(fmt::format("{}: implicit set needs an equation", source));
        imp.dim = dim;
        const auto vars = ImplicitSet::variable_names(dim);
        for (const auto& [line, text] : equations) {
            imp.equations.push_back(at_line(doc, line, [&] {
                const std::string src = text.starts_with('#') ? polynomial_text(text.substr(1), vars) : text;
                return Expression::parse(src, vars);
            }));
        }
        d.body = std::move(imp);
    } else if (kind == "cloud") {
        if (!doc.sections.empty()) doc.fail(doc.sections.front().line, "point clouds take no sections");
        cloud.metric = am;
        d.body = std::move(cloud);
    } else {
        const std::string msg = fmt::format("unknown kind '{}' (arcs, implicit, cloud)", kind);
        if (kind_line > 0) doc.fail(kind_line, msg);
        throw InputError(fmt::format("{}: {}", source, msg));
    }
    try {
        validate(d);
    } catch (const Error& e) {
        throw InputError(fmt::format("{}: {}", source, e.what()));
    }
    return d;
}

SetDescriptor load_descriptor(const std::filesystem::path& path) {
    auto f = open(path);
    return parse_descriptor(f, path.string(), path.parent_path());
}

PointCloud read_points_csv(std::istream& in, const std::string& source) {
    PointCloud c;
    std::size_t dim = 0;
    std::string raw;
    std::size_t no = 0;
    while (std::getline(in, raw)) {
        ++no;
        const std::string line = trim(raw);
        if (line.empty()) continue;
        if (line.front() == '#') {
            std::istringstream hs(line.substr(1));
            for (std::string w; hs >> w;) {
                const auto eq = w.find('=');
                if (eq == std::string::npos) continue;
                const std::string k = lower(w.substr(0, eq)), v = w.substr(eq + 1);
                try {
                    if (k == "dim") dim = parse_count(v);
                    else if (k == "metric") c.metric.kind = metric_kind_from_string(lower(v));
                } catch (const Error& e) {
                    throw InputError(fmt::format("{}:{}: {}", source, no, e.what()));
                }
            }
            continue;
        }
        std::vector<double> v;
        for (const auto& cell : split_top(line, ',')) {
            double x = 0.0;
            const auto [p, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), x);
            if (ec != std::errc() || p != cell.data() + cell.size() || !std::isfinite(x)) {
                throw InputError(fmt::format("{}:{}: '{}' is not a finite number", source, no, cell));
            }
            v.push_back(x);
        }
        if (!c.points.empty() && v.size() != c.points.front().dim()) {
            throw InputError(fmt::format("{}:{}: expected {} columns, got {}", source, no, c.points.front().dim(), v.size()));
        }
        c.points.emplace_back(std::move(v));
    }
    if (c.points.empty()) throw InputError(fmt::format("{}: no points", source));
    const std::size_t cols = c.points.front().dim();
    c.metric.dim = c.metric.kind == AmbientMetric::Kind::Euclidean ? cols : cols - 1;
    if (dim != 0 && dim != c.metric.dim) {
        throw InputError(fmt::format("{}: header says dim={} but rows have {} columns", source, dim, cols));
    }
    return c;
}

PointCloud load_points_csv(const std::filesystem::path& path) {
    auto f = open(path);
    return read_points_csv(f, path.string());
}

void write_points_csv(const Sample& s, std::ostream& out) {
    out << fmt::format("# dim={} metric={}\n", s.metric.dim, lower(to_string(s.metric.kind)));
    for (const auto& p : s.points) {
        for (std::size_t k = 0; k < p.dim(); ++k) out << (k ? "," : "") << fmt::format("{:.17g}", p[k]);
        out << '\n';
    }
}

std::vector<CorpusCase> parse_corpus(std::istream& in, const std::string& source, const std::filesystem::path& base_dir) {
    const Document doc = read_document(in, source);
    if (!doc.header.empty()) doc.fail(doc.header.front().line, "entries must belong to a [case name] section");
    std::vector<CorpusCase> out;
    for (const auto& sec : doc.sections) {
        if (sec.kind != "case") doc.fail(sec.line, fmt::format("unknown section '{}'", sec.kind));
        if (sec.label.empty()) doc.fail(sec.line, "case needs a name, as in [case parabola]");
        CorpusCase c;
        c.name = sec.label;
        bool have_desc = false, have_locus = false, have_expected = false;
        for (const auto& e : sec.entries) {
            if (e.key == "descriptor") {
                const std::filesystem::path p = base_dir / e.value;
                c.descriptor = at_line(doc, e.line, [&] { return load_descriptor(p); });
                have_desc = true;
            } else if (e.key == "locus") {
                c.locus = at_line(doc, e.line, [&] { return locus_from_string(e.value); });
                have_locus = true;
            } else if (e.key == "point") {
                c.point = at_line(doc, e.line, [&] { return parse_point(e.value); });
            } else if (e.key == "expected") {
                c.expected = at_line(doc, e.line, [&] { return verdict_from_string(e.value); });
                if (c.expected == Verdict::Inconclusive) doc.fail(e.line, "expected verdict must be LNE or NOT_LNE");
                have_expected = true;
            } else if (e.key == "bound") {
                c.bound = at_line(doc, e.line, [&] { return parse_number(e.value); });
            } else if (e.key == "note") {
                c.note = e.value;
            } else {
                doc.fail(e.line, fmt::format("unknown case key '{}'", e.key));
            }
        }
        if (!have_desc || !have_locus || !have_expected) {
            doc.fail(sec.line, fmt::format("case '{}' needs descriptor, locus and expected", c.name));
        }
        out.push_back(std::move(c));
    }
    return out;
}

std::vector<CorpusCase> load_corpus(const std::filesystem::path& path) {
    auto f = open(path);
    return parse_corpus(f, path.string(), path.parent_path());
}

void apply_config_entry(AnalysisConfig& cfg, const std::string& key, const std::string& value) {
    const std::string k = trim(key);
    const std::string v = trim(value);
    auto positive = [&] {
        const double x = parse_number(v);
        if (!(x > 0.0) || std::isinf(x)) throw Error(fmt::format("{} must be a positive number", k));
        return x;
    };
    auto nonnegative = [&] {
        const double x = parse_number(v);
        if (!(x >= 0.0) || std::isinf(x)) throw Error(fmt::format("{} must be a nonnegative number", k));
        return x;
    };
    auto count = [&](std::size_t min) {
        const std::size_t n = parse_count(v);
        if (n < min) throw Error(fmt::format("{} must be at least {}", k, min));
        return n;
    };
    if (k == "budget") cfg.budget = count(2);
    else if (k == "eps") cfg.eps = lower(v) == "auto" ? 0.0 : positive();
    else if (k == "R0") cfg.R0 = positive();
    else if (k == "rungs") cfg.rungs = static_cast<int>(count(3));
    else if (k == "r0") cfg.r0 = positive();
    else if (k == "delta_bin") cfg.delta_bin = positive() * std::numbers::pi / 180.0;
    else if (k == "pair_budget") cfg.pair_budget = positive();
    else if (k == "tol") cfg.tol = positive();
    else if (k == "threads") cfg.threads = static_cast<unsigned>(count(0));
    else if (k == "seed") cfg.seed = parse_count(v);
    else if (k == "divergence_ratio") {
        cfg.divergence_ratio = positive();
        if (!(cfg.divergence_ratio > 1.0)) throw Error("divergence_ratio must exceed 1");
    } else if (k == "divergence_run") cfg.divergence_run = static_cast<int>(count(1));
    else if (k == "stability") cfg.stability = positive();
    else if (k == "glue_radius") cfg.glue_radius = positive();
    else if (k == "r_min") cfg.r_min = nonnegative();
    else if (k == "r_max") cfg.r_max = nonnegative();
    else throw Error(fmt::format("unknown configuration key '{}'", k));
}

AnalysisConfig parse_config(std::istream& in, const std::string& source, AnalysisConfig base) {
    const Document doc = read_document(in, source);
    if (!doc.sections.empty()) doc.fail(doc.sections.front().line, "configuration files take no sections");
    for (const auto& e : doc.header) at_line(doc, e.line, [&] {
        apply_config_entry(base, e.key, e.value);
        return 0;
    });
    return base;
}

AnalysisConfig load_config(const std::filesystem::path& path, AnalysisConfig base) {
    auto f = open(path);
    return parse_config(f, path.string(), base);
}

}  // namespace lne
