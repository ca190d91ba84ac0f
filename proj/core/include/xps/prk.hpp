#pragma once

#include <functional>
#include <vector>

#include "xps/types.hpp"

namespace xps {

using Mat = std::vector<Vec>;

/// Coefficients of a partitioned Runge-Kutta method for
///   x' = f(y),  y' = g(x):
///   k_i = f(y0 + h sum_j a2[i][j] l_j)
///   l_i = g(x0 + h sum_j a1[i][j] k_j)
///   x1  = x0 + h sum_i b1[i] k_i
///   y1  = y0 + h sum_i b2[i] l_i
struct PRKTableau {
    Mat a1;
    Vec b1;
    Mat a2;
    Vec b2;

    std::size_t stages() const { return b1.size(); }
    /// Shape and consistency (sum b = 1 to 1e-15) checks; throws on violation.
    void validate() const;
};

using PartFieldFn = std::function<Vec(const Vec&)>;

/// One PRK step. Stages are resolved in dependency order; a tableau
/// whose stages cannot be ordered explicitly is rejected.
std::pair<Vec, Vec> prk_step(const PRKTableau& tb, const PartFieldFn& f, const PartFieldFn& g,
                             const Vec& x0, const Vec& y0, double h);

/// Second-order leapfrog (kick-drift-kick) as a PRK pair.
PRKTableau leapfrog_tableau();

/// First step of the extended-phase-space leapfrog with shared-alpha
/// mixing (alpha1 = mid-step map weight, alpha2 = end-of-step map
/// weight) as a PRK pair on x = (q, p~), y = (q~, p). Valid from a
/// cloned state only.
PRKTableau extended_leapfrog_tableau(double alpha1, double alpha2);

}  // namespace xps
