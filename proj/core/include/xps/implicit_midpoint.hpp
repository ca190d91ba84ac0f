#pragma once

#include <functional>

#include "xps/types.hpp"

namespace xps {

using FieldFn = std::function<Vec(const Vec&, double)>;

/// One implicit midpoint step x' = x + h f((x + x')/2, t + h/2),
/// solved by fixed-point iteration from the explicit guess
/// x + h f(x, t + h/2). Stops when the relative update drops below tol;
/// throws after max_iter iterations (step size too large for the
/// iteration to contract).
Vec implicit_midpoint_step(const FieldFn& f, const Vec& x, double t, double h,
                           double tol = 1e-15, int max_iter = 100);

}  // namespace xps
