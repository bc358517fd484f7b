#pragma once

#include <cstddef>
#include <vector>

#include "lne/descriptor.hpp"
#include "lne/sample.hpp"

namespace lne {

inline constexpr double kMemberTol = 1e-7;

/// Grid rejection sampling of an implicit set followed by Newton projection
/// (minimal-norm Gauss-Newton steps) onto F = 0.
Sample sample_implicit(const ImplicitSet& set, std::size_t budget);

/// |F(x)| relative to the local gradient scale; membership means <= kMemberTol.
double implicit_residual(const ImplicitSet& set, const Point& x);

/// Greedy farthest-point order of `count` indices, starting from index 0.
std::vector<std::size_t> farthest_point_order(const Sample& s, std::size_t count);

}  // namespace lne
