#include "lne/geometry.hpp"

#include <algorithm>
#include <fmt/format.h>
#include <numbers>

namespace lne {

namespace {

void check_finite(const std::vector<double>& c) {
    for (double v : c) {
        if (!std::isfinite(v)) throw DomainError("point has a non-finite coordinate");
    }
}

void check_same_dim(std::size_t a, std::size_t b) {
    if (a != b) throw DimensionMismatch(fmt::format("dimension mismatch: {} vs {}", a, b));
}

}  // namespace

Point::Point(std::initializer_list<double> coords) : c_(coords) { check_finite(c_); }

Point::Point(std::vector<double> coords) : c_(std::move(coords)) { check_finite(c_); }

double Point::norm2() const {
    double s = 0.0;
    for (double v : c_) s += v * v;
    return s;
}

double Point::norm() const {
    // hypot-style scaling keeps |x| ~ 1e200 representable
    double m = 0.0;
    for (double v : c_) m = std::max(m, std::abs(v));
    if (m == 0.0) return 0.0;
    double s = 0.0;
    for (double v : c_) s += (v / m) * (v / m);
    return m * std::sqrt(s);
}

bool Point::finite() const {
    return std::all_of(c_.begin(), c_.end(), [](double v) { return std::isfinite(v); });
}

Point& Point::operator+=(const Point& o) {
    check_same_dim(dim(), o.dim());
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
}

Point& Point::operator-=(const Point& o) {
    check_same_dim(dim(), o.dim());
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
}

Point& Point::operator*=(double s) {
    for (double& v : c_) v *= s;
    return *this;
}

double dot(const Point& a, const Point& b) {
    check_same_dim(a.dim(), b.dim());
    double s = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i) s += a[i] * b[i];
    return s;
}

double distance(const Point& a, const Point& b) { return (a - b).norm(); }

std::string to_string(const Point& p) {
    std::string s = "(";
    for (std::size_t i = 0; i < p.dim(); ++i) {
        if (i) s += ", ";
        s += fmt::format("{:.17g}", p[i]);
    }
    return s + ")";
}

UnitDirection::UnitDirection(const Point& v) : u_(v) {
    const double n = v.norm();
    if (!(n > 0.0)) throw DomainError("cannot normalize the zero vector");
    u_ *= 1.0 / n;
}

double angle_between(const UnitDirection& a, const UnitDirection& b) {
    // atan2 form is accurate for nearly parallel vectors
    const Point d = a.point() - b.point();
    const Point s = a.point() + b.point();
    return 2.0 * std::atan2(d.norm(), s.norm());
}

std::string to_string(AmbientMetric::Kind k) {
    switch (k) {
        case AmbientMetric::Kind::Euclidean: return "euclidean";
        case AmbientMetric::Kind::Sphere: return "sphere";
        case AmbientMetric::Kind::Projective: return "projective";
    }
    return "euclidean";
}

AmbientMetric::Kind metric_kind_from_string(const std::string& s) {
    if (s == "euclidean") return AmbientMetric::Kind::Euclidean;
    if (s == "sphere") return AmbientMetric::Kind::Sphere;
    if (s == "projective") return AmbientMetric::Kind::Projective;
    throw Error("unknown metric '" + s + "'");
}

double ambient_distance(AmbientMetric::Kind k, std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) check_same_dim(a.size(), b.size());
    if (k == AmbientMetric::Kind::Projective) {
        // angle between lines, computed from the shorter of |a-b|, |a+b|
        double dm = 0.0, dp = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i) {
            dm += (a[i] - b[i]) * (a[i] - b[i]);
            dp += (a[i] + b[i]) * (a[i] + b[i]);
        }
        return 2.0 * std::atan2(std::sqrt(std::min(dm, dp)), std::sqrt(std::max(dm, dp)));
    }
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
    return std::sqrt(s);
}

double ambient_distance(const AmbientMetric& m, const Point& a, const Point& b) {
    check_same_dim(a.dim(), b.dim());
    if (a.dim() != m.coord_dim()) check_same_dim(a.dim(), m.coord_dim());
    return ambient_distance(m.kind, a.coords(), b.coords());
}

Point invert(const Point& x) {
    const double r = x.norm();
    if (r <= kSingularRadius) throw DomainError("inversion is undefined near the origin");
    return x * (1.0 / (r * r));
}

Point stereo_to_sphere(const Point& x) {
    const double r2 = x.norm2();
    std::vector<double> y(x.dim() + 1);
    if (std::isinf(r2)) {
        // |x| beyond double range: the image is the north pole to working precision
        y.back() = 1.0;
        return Point(std::move(y));
    }
    const double den = 1.0 + r2;
    for (std::size_t i = 0; i < x.dim(); ++i) y[i] = 2.0 * x[i] / den;
    y.back() = (r2 - 1.0) / (r2 + 1.0);
    Point p(std::move(y));
    return p * (1.0 / p.norm());
}

Point stereo_from_sphere(const Point& y) {
    if (y.dim() < 2) throw DimensionMismatch("sphere point needs at least 2 coordinates");
    const double last = y[y.dim() - 1];
    std::vector<double> x(y.dim() - 1);
    // near the pole 1 - last cancels; |y'|^2 / (1 + last) keeps full precision
    double head = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) head += y[i] * y[i];
    const double gap = last > 0.0 ? head / (1.0 + last) : 1.0 - last;
    if (std::sqrt(head + gap * gap) < kPoleMargin) {
        throw DomainError("stereographic projection undefined at the north pole");
    }
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = y[i] / gap;
    return Point(std::move(x));
}

Point phi_chart(const Point& y) {
    const double r2 = y.norm2();
    if (r2 > 0.25 * (1.0 + 1e-12)) throw DomainError("phi chart is defined on |y| <= 1/2");
    std::vector<double> out(y.dim() + 1);
    const double den = 1.0 + r2;
    for (std::size_t i = 0; i < y.dim(); ++i) out[i] = 2.0 * y[i] / den;
    out.back() = (1.0 - r2) / den;
    return Point(std::move(out));
}

Point north_pole(std::size_t q) {
    Point p(q + 1);
    p[q] = 1.0;
    return p;
}

Point south_pole(std::size_t q) {
    Point p(q + 1);
    p[q] = -1.0;
    return p;
}

Point projective_lift(const Point& x) {
    std::vector<double> c(x.vec());
    c.push_back(1.0);
    Point p(std::move(c));
    return p * (1.0 / p.norm());
}

Point invert_jvp(const Point& x, const Point& v) {
    // d(x/|x|^2) = v/|x|^2 - 2 <x,v> x / |x|^4
    const double r2 = x.norm2();
    if (r2 <= kSingularRadius * kSingularRadius) throw DomainError("inversion is undefined near the origin");
    return v * (1.0 / r2) - x * (2.0 * dot(x, v) / (r2 * r2));
}

Point stereo_to_sphere_jvp(const Point& x, const Point& v) {
    const double r2 = x.norm2();
    const double den = 1.0 + r2;
    const double xv = dot(x, v);
    std::vector<double> out(x.dim() + 1);
    for (std::size_t i = 0; i < x.dim(); ++i) {
        out[i] = 2.0 * v[i] / den - 4.0 * x[i] * xv / (den * den);
    }
    out.back() = 4.0 * xv / (den * den);
    Point p(out.size());
    for (std::size_t i = 0; i < out.size(); ++i) p[i] = std::isfinite(out[i]) ? out[i] : 0.0;
    return p;
}

Point projective_lift_jvp(const Point& x, const Point& v) {
    // w = (x,1), d(w/|w|) = dw/|w| - w <w,dw>/|w|^3
    std::vector<double> w(x.vec());
    w.push_back(1.0);
    std::vector<double> dw(v.vec());
    dw.push_back(0.0);
    Point W(std::move(w)), dW(std::move(dw));
    const double n = W.norm();
    return dW * (1.0 / n) - W * (dot(W, dW) / (n * n * n));
}

double cosine_gap(double y, double t, double theta) {
    const double s = std::sin(theta), c = std::cos(theta);
    return std::sqrt((y + t) * (y + t) * s * s + (y - t) * (y - t) * c * c);
}

double great_circle_distance(const Point& a, const Point& b) {
    return angle_between(UnitDirection(a), UnitDirection(b));
}

}  // namespace lne
