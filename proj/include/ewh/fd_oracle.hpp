#pragma once

#include <array>
#include <functional>

#include "ewh/jets.hpp"

namespace ewh {

using ScalarFn3 = std::function<double(const Point&)>;

// Base step of the central-difference oracle. Higher total orders use a
// larger step (see fd_step) so that roundoff, which scales like
// eps / step^order, stays below the O(step^4) truncation error.
inline constexpr double kFdBaseStep = 1e-3;

double fd_step(int total_order);

// Central finite-difference estimate of d^|m| f / d(nu,r,x)^m at p, built as
// a tensor product of second-order central stencils with one Richardson
// level (steps h and h/2), so the error is O(h^4). Total order must be <= 4.
double fd_oracle(const ScalarFn3& f, const Point& p, const std::array<int, 3>& multi_index);

// One-variable convenience form.
double fd_oracle_1d(const std::function<double(double)>& f, double x, int order);

}  // namespace ewh
