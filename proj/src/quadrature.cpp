#include "lne/quadrature.hpp"

#include <cmath>
#include <fmt/format.h>
#include <limits>

#include "lne/arc_params.hpp"

namespace lne {

namespace {

struct Simpson {
    const std::function<double(double)>& f;

    double rec(double a, double fa, double m, double fm, double b, double fb, double whole, double tol, int depth) {
        const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
        const double flm = f(lm), frm = f(rm);
        const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        const double sum = left + right;
        const double err = sum - whole;
        const double floor = 64.0 * std::numeric_limits<double>::epsilon() * std::abs(sum);
        if (std::abs(err) <= 15.0 * std::max(tol, floor)) return sum + err / 15.0;
        if (depth >= kQuadratureDepthCap) {
            throw QuadratureFailure(fmt::format("adaptive Simpson exceeded depth {} on [{}, {}]", kQuadratureDepthCap, a, b));
        }
        return rec(a, fa, lm, flm, m, fm, left, 0.5 * tol, depth + 1) +
               rec(m, fm, rm, frm, b, fb, right, 0.5 * tol, depth + 1);
    }
};

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b, double tol) {
    if (a == b) return 0.0;
    if (a > b) return -integrate(f, b, a, tol);
    // a coarse first split keeps narrow features from hiding between nodes
    constexpr int kPanels = 8;
    double total = 0.0;
    Simpson s{f};
    double x0 = a, f0 = f(a);
    for (int i = 1; i <= kPanels; ++i) {
        const double x1 = (i == kPanels) ? b : a + (b - a) * i / kPanels;
        const double m = 0.5 * (x0 + x1);
        const double fm = f(m), f1 = f(x1);
        const double whole = (x1 - x0) / 6.0 * (f0 + 4.0 * fm + f1);
        total += s.rec(x0, f0, m, fm, x1, f1, whole, tol / kPanels, 0);
        x0 = x1;
        f0 = f1;
    }
    return total;
}

double arc_length(const ParamArc& arc, double a, double b, double tol) {
    if (!(tol > 0.0)) throw Error("quadrature tolerance must be positive");
    if (!std::isfinite(a) || !std::isfinite(b)) throw Error("arc_length needs a finite interval; use length_to_end");
    return std::abs(integrate([&](double t) { return arc.speed(t); }, std::min(a, b), std::max(a, b), tol));
}

double length_to_end(const ParamArc& arc, double t, bool high, double tol) {
    const ArcEnd& e = arc.end(high);
    const double p = arc.end_param(high);
    if (e.kind == ArcEnd::Kind::Unbounded || e.kind == ArcEnd::Kind::Open) {
        return std::numeric_limits<double>::infinity();
    }
    if (e.kind == ArcEnd::Kind::Closed) return arc_length(arc, t, p, tol);

    // limit end: chunks of doubling width (infinite parameter) or halving
    // distance (finite parameter), stopped once the chord to the limit is tiny
    const Point& limit = *e.limit;
    const double sign = high ? 1.0 : -1.0;
    const double scale = 1.0 + limit.norm();
    double total = 0.0;
    double cur = t;
    double width = 1.0;
    double prev_chord = std::numeric_limits<double>::quiet_NaN();
    for (int i = 0; i < 400; ++i) {
        double next;
        if (std::isinf(p)) {
            next = cur + sign * width;
            width *= 2.0;
        } else {
            next = cur + 0.5 * (p - cur);
            if (next == cur) break;
        }
        double piece;
        try {
            piece = arc_length(arc, cur, next, tol / 64.0);
        } catch (const EvalError&) {
            break;
        }
        total += piece;
        cur = next;
        double chord;
        try {
            chord = distance(arc.position(cur), limit);
        } catch (const EvalError&) {
            break;
        }
        if (chord <= std::max(0.01 * tol, 1e-15 * scale)) return total + chord;
        // Towards an infinite parameter the remaining length can need
        // arbitrarily many oscillations; past a small chord, extend the last
        // chunk's ratio of length to chord decrease.
        if (std::isinf(p) && chord <= kTailChord * scale && prev_chord > chord) {
            return total + chord * std::max(1.0, piece / (prev_chord - chord));
        }
        prev_chord = chord;
    }
    try {
        return total + distance(arc.position(cur), limit);
    } catch (const EvalError&) {
        return total;
    }
}

double total_length(const ParamArc& arc, double tol) {
    const double ref = reference_param(arc);
    return length_to_end(arc, ref, false, tol) + length_to_end(arc, ref, true, tol);
}

}  // namespace lne
