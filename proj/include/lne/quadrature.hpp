#pragma once

#include <functional>

#include "lne/descriptor.hpp"

namespace lne {

class QuadratureFailure : public Error {
public:
    using Error::Error;
};

inline constexpr double kDefaultQuadratureTol = 1e-9;
inline constexpr int kQuadratureDepthCap = 40;
/// Relative chord to a limit point below which length_to_end extrapolates
/// the tail of an infinite parameter range.
inline constexpr double kTailChord = 1e-4;

/// Adaptive Simpson integral of f over [a, b]. The tolerance is absolute,
/// floored at a few ulps of the running estimate so long arcs still converge.
double integrate(const std::function<double(double)>& f, double a, double b, double tol = kDefaultQuadratureTol);

/// Length of the arc over the parameter interval [a, b] (a <= b, both finite).
double arc_length(const ParamArc& arc, double a, double b, double tol = kDefaultQuadratureTol);

/// Length from parameter t to the low (high = false) or high end of the arc.
/// Infinite for unbounded or open ends; improper integrals towards limit
/// ends are summed over geometrically growing chunks; at an infinite
/// parameter the tail past chord kTailChord is extrapolated.
double length_to_end(const ParamArc& arc, double t, bool high, double tol = kDefaultQuadratureTol);

/// Total length of the arc between its two ends.
double total_length(const ParamArc& arc, double tol = kDefaultQuadratureTol);

}  // namespace lne
