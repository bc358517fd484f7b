#pragma once

#include <cmath>

#include "lne/descriptor.hpp"

namespace lne {

/// An interior parameter used as the starting point for approaching ends.
inline double reference_param(const ParamArc& a) {
    const bool lo_fin = std::isfinite(a.lo), hi_fin = std::isfinite(a.hi);
    if (lo_fin && hi_fin) return 0.5 * (a.lo + a.hi);
    if (lo_fin) return a.lo + 1.0;
    if (hi_fin) return a.hi - 1.0;
    return 0.0;
}

/// k-th parameter of a sequence tending to the given end: geometric towards a
/// finite end, doubling towards an infinite one.
inline double approach_param(const ParamArc& a, bool high, int k) {
    const double p = a.end_param(high);
    const double ref = reference_param(a);
    if (std::isinf(p)) return ref + (high ? 1.0 : -1.0) * std::ldexp(1.0, k);
    return p + (ref - p) * std::ldexp(1.0, -k);
}

}  // namespace lne
