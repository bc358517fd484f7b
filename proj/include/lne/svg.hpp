#pragma once

#include <string>

#include "lne/analysis.hpp"

namespace lne {

/// K against log2(scale) for the report's ladder and for every stage that
/// has one. Empty ladders give an empty plot with a note.
std::string ladder_svg(const LneReport& r);

/// Scatter plot of the first two coordinates of a euclidean sample.
std::string plane_svg(const Sample& s, const std::string& title);

/// Azimuthal equidistant view of a sample on S^2 centred at the north pole
/// (marked N); the south pole lands on the outer circle.
std::string sphere_svg(const Sample& s, const std::string& title);

}  // namespace lne
