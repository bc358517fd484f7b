#include "lne/svg.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <numbers>
#include <vector>

namespace lne {

namespace {

constexpr double kW = 640.0, kH = 480.0, kMargin = 60.0;
const char* const kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2"};

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '&': out += "&amp;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

std::string header(const std::string& title) {
    return fmt::format(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0}\" height=\"{1}\" viewBox=\"0 0 {0} {1}\" "
        "font-family=\"sans-serif\" font-size=\"12\">\n"
        "<rect width=\"{0}\" height=\"{1}\" fill=\"white\"/>\n"
        "<text x=\"{2}\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">{3}</text>\n",
        kW, kH, kW / 2, escape(title));
}

struct Frame {
    double x0, x1, y0, y1;
    double px(double x) const { return kMargin + (x - x0) / (x1 - x0) * (kW - 2 * kMargin); }
    double py(double y) const { return kH - kMargin - (y - y0) / (y1 - y0) * (kH - 2 * kMargin); }
};

void widen(double& lo, double& hi) {
    if (!(hi > lo)) {
        const double c = std::isfinite(lo) ? lo : 0.0;
        lo = c - 1.0;
        hi = c + 1.0;
    }
    const double pad = 0.05 * (hi - lo);
    lo -= pad;
    hi += pad;
}

std::string axes(const Frame& f, const std::string& xlabel, const std::string& ylabel) {
    std::string out = fmt::format(
        "<rect x=\"{:.2f}\" y=\"{:.2f}\" width=\"{:.2f}\" height=\"{:.2f}\" fill=\"none\" stroke=\"black\"/>\n", kMargin,
        kMargin, kW - 2 * kMargin, kH - 2 * kMargin);
    for (int i = 0; i <= 4; ++i) {
        const double x = f.x0 + (f.x1 - f.x0) * i / 4.0, y = f.y0 + (f.y1 - f.y0) * i / 4.0;
        out += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"middle\">{:.3g}</text>\n", f.px(x),
                           kH - kMargin + 16, x);
        out += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"end\">{:.3g}</text>\n", kMargin - 6, f.py(y) + 4,
                           y);
    }
    out += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"middle\">{}</text>\n", kW / 2, kH - 18,
                       escape(xlabel));
    out += fmt::format(
        "<text x=\"18\" y=\"{:.2f}\" text-anchor=\"middle\" transform=\"rotate(-90 18 {:.2f})\">{}</text>\n", kH / 2,
        kH / 2, escape(ylabel));
    return out;
}

}  // namespace

std::string ladder_svg(const LneReport& r) {
    std::vector<const LneReport*> series;
    if (!r.ladder.empty()) series.push_back(&r);
    for (const auto& st : r.stages) {
        if (!st.ladder.empty()) series.push_back(&st);
    }
    std::string out = header(fmt::format("{}: {} (K = {:.4g})", r.label, to_string(r.verdict), r.constant));
    double x0 = INFINITY, x1 = -INFINITY, y0 = INFINITY, y1 = -INFINITY;
    for (const auto* s : series) {
        for (const auto& g : s->ladder) {
            if (!std::isfinite(g.K)) continue;
            x0 = std::min(x0, std::log2(g.scale));
            x1 = std::max(x1, std::log2(g.scale));
            y0 = std::min(y0, g.K);
            y1 = std::max(y1, g.K);
        }
    }
    if (!std::isfinite(x0)) {
        out += fmt::format("<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">no finite ladder values</text>\n", kW / 2, kH / 2);
        return out + "</svg>\n";
    }
    y0 = std::min(y0, 1.0);
    widen(x0, x1);
    widen(y0, y1);
    const Frame f{x0, x1, y0, y1};
    out += axes(f, "log2(scale)", "K");
    for (std::size_t k = 0; k < series.size(); ++k) {
        const char* color = kColors[k % std::size(kColors)];
        std::string pts;
        for (const auto& g : series[k]->ladder) {
            if (!std::isfinite(g.K)) continue;
            const double px = f.px(std::log2(g.scale)), py = f.py(g.K);
            pts += fmt::format("{:.2f},{:.2f} ", px, py);
            out += fmt::format("<circle cx=\"{:.2f}\" cy=\"{:.2f}\" r=\"3\" fill=\"{}\"/>\n", px, py, color);
        }
        out += fmt::format("<polyline points=\"{}\" fill=\"none\" stroke=\"{}\" stroke-width=\"1.5\"/>\n", pts, color);
        out += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" fill=\"{}\">{}</text>\n", kMargin + 8,
                           kMargin + 16 + 14.0 * static_cast<double>(k), color, escape(series[k]->label));
    }
    return out + "</svg>\n";
}

std::string plane_svg(const Sample& s, const std::string& title) {
    std::string out = header(title);
    double x0 = INFINITY, x1 = -INFINITY, y0 = INFINITY, y1 = -INFINITY;
    for (const auto& p : s.points) {
        if (p.dim() < 2) continue;
        x0 = std::min(x0, p[0]);
        x1 = std::max(x1, p[0]);
        y0 = std::min(y0, p[1]);
        y1 = std::max(y1, p[1]);
    }
    if (!std::isfinite(x0)) return out + "</svg>\n";
    // equal scales on both axes
    const double span = std::max(x1 - x0, y1 - y0);
    const double cx = 0.5 * (x0 + x1), cy = 0.5 * (y0 + y1);
    const double aspect = (kW - 2 * kMargin) / (kH - 2 * kMargin);
    double hx = 0.5 * span * std::max(1.0, aspect), hy = 0.5 * span * std::max(1.0, 1.0 / aspect);
    double fx0 = cx - hx, fx1 = cx + hx, fy0 = cy - hy, fy1 = cy + hy;
    widen(fx0, fx1);
    widen(fy0, fy1);
    const Frame f{fx0, fx1, fy0, fy1};
    out += axes(f, "x", "y");
    for (const auto& p : s.points) {
        if (p.dim() < 2) continue;
        out += fmt::format("<circle cx=\"{:.2f}\" cy=\"{:.2f}\" r=\"1.2\" fill=\"#1f77b4\"/>\n", f.px(p[0]), f.py(p[1]));
    }
    return out + "</svg>\n";
}

std::string sphere_svg(const Sample& s, const std::string& title) {
    std::string out = header(title);
    const double cx = kW / 2, cy = kH / 2 + 10, rad = 0.5 * kH - kMargin;
    out += fmt::format("<circle cx=\"{:.2f}\" cy=\"{:.2f}\" r=\"{:.2f}\" fill=\"none\" stroke=\"black\"/>\n", cx, cy, rad);
    out += fmt::format("<circle cx=\"{:.2f}\" cy=\"{:.2f}\" r=\"{:.2f}\" fill=\"none\" stroke=\"#999\" "
                       "stroke-dasharray=\"4 4\"/>\n",
                       cx, cy, 0.5 * rad);
    for (const auto& p : s.points) {
        if (p.dim() != 3) continue;
        const double polar = std::acos(std::clamp(p[2], -1.0, 1.0));
        const double az = std::atan2(p[1], p[0]);
        const double r = polar / std::numbers::pi * rad;
        out += fmt::format("<circle cx=\"{:.2f}\" cy=\"{:.2f}\" r=\"1.2\" fill=\"#1f77b4\"/>\n", cx + r * std::cos(az),
                           cy - r * std::sin(az));
    }
    out += fmt::format("<circle cx=\"{:.2f}\" cy=\"{:.2f}\" r=\"4\" fill=\"#d62728\"/>\n", cx, cy);
    out += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" fill=\"#d62728\">N</text>\n", cx + 6, cy - 6);
    out += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" fill=\"#999\">equator</text>\n", cx + 0.5 * rad * 0.72,
                       cy - 0.5 * rad * 0.72);
    return out + "</svg>\n";
}

}  // namespace lne
