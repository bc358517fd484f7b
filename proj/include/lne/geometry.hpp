#pragma once

#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace lne {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Input outside the domain of a transform (too close to a singular point).
class DomainError : public Error {
public:
    using Error::Error;
};

class DimensionMismatch : public Error {
public:
    using Error::Error;
};

/// A point of R^q. Coordinates are always finite.
class Point {
public:
    Point() = default;
    explicit Point(std::size_t dim, double fill = 0.0) : c_(dim, fill) {}
    Point(std::initializer_list<double> coords);
    explicit Point(std::vector<double> coords);

    std::size_t dim() const { return c_.size(); }
    double operator[](std::size_t i) const { return c_[i]; }
    double& operator[](std::size_t i) { return c_[i]; }
    std::span<const double> coords() const { return c_; }
    const std::vector<double>& vec() const { return c_; }

    double norm() const;
    double norm2() const;
    bool finite() const;

    Point& operator+=(const Point& o);
    Point& operator-=(const Point& o);
    Point& operator*=(double s);

    friend Point operator+(Point a, const Point& b) { return a += b; }
    friend Point operator-(Point a, const Point& b) { return a -= b; }
    friend Point operator*(Point a, double s) { return a *= s; }
    friend Point operator*(double s, Point a) { return a *= s; }
    friend bool operator==(const Point&, const Point&) = default;

private:
    std::vector<double> c_;
};

double dot(const Point& a, const Point& b);
double distance(const Point& a, const Point& b);
std::string to_string(const Point& p);

/// A point of the unit sphere S^{q-1}; renormalized on construction.
class UnitDirection {
public:
    explicit UnitDirection(const Point& v);
    const Point& point() const { return u_; }
    std::size_t dim() const { return u_.dim(); }
    double operator[](std::size_t i) const { return u_[i]; }

private:
    Point u_;
};

/// Unoriented angle in [0, pi] between two directions.
double angle_between(const UnitDirection& a, const UnitDirection& b);

/// Ambient metric of the space a sample lives in.
struct AmbientMetric {
    enum class Kind { Euclidean, Sphere, Projective };
    Kind kind = Kind::Euclidean;
    /// Intrinsic dimension q. Sphere points live in R^{q+1}; projective
    /// points are unit representatives in R^{q+1}.
    std::size_t dim = 2;

    static AmbientMetric euclidean(std::size_t q) { return {Kind::Euclidean, q}; }
    static AmbientMetric sphere(std::size_t q) { return {Kind::Sphere, q}; }
    static AmbientMetric projective(std::size_t q = 2) { return {Kind::Projective, q}; }

    /// Length of the coordinate vectors of points under this metric.
    std::size_t coord_dim() const { return kind == Kind::Euclidean ? dim : dim + 1; }

    friend bool operator==(const AmbientMetric&, const AmbientMetric&) = default;
};

std::string to_string(AmbientMetric::Kind k);
AmbientMetric::Kind metric_kind_from_string(const std::string& s);

/// Outer distance: |a-b| (Euclidean and chordal sphere), arccos|<a,b>|
/// (projective).
double ambient_distance(const AmbientMetric& m, const Point& a, const Point& b);
double ambient_distance(AmbientMetric::Kind k, std::span<const double> a, std::span<const double> b);

inline constexpr double kSingularRadius = 1e-9;
/// Chordal distance to the north pole below which stereo_from_sphere refuses.
inline constexpr double kPoleMargin = 1e-9;

/// Euclidean inversion x / |x|^2.
Point invert(const Point& x);

/// Inverse stereographic projection R^q -> S^q \ N_q.
Point stereo_to_sphere(const Point& x);

/// Stereographic projection from the north pole, S^q \ N_q -> R^q.
Point stereo_from_sphere(const Point& y);

/// Chart of a neighbourhood of the north pole, defined on |y| <= 1/2.
/// Sends 0 to N_q and satisfies phi(invert(x)) == stereo_to_sphere(x).
Point phi_chart(const Point& y);

Point north_pole(std::size_t q);
Point south_pole(std::size_t q);

/// Lift of an affine point x to the unit representative of [x : 1].
Point projective_lift(const Point& x);

// Directional derivatives (Jacobian-vector products) of the transforms.
Point invert_jvp(const Point& x, const Point& v);
Point stereo_to_sphere_jvp(const Point& x, const Point& v);
Point projective_lift_jvp(const Point& x, const Point& v);

/// Chordal gap between points at radii y and t whose directions make the
/// angle 2*theta: e^2 = (y+t)^2 sin^2(theta) + (y-t)^2 cos^2(theta).
double cosine_gap(double y, double t, double theta);

/// Great-circle distance on the unit sphere.
double great_circle_distance(const Point& a, const Point& b);

}  // namespace lne
