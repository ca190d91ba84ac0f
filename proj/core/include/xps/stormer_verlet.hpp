#pragma once

#include <functional>

#include "xps/types.hpp"

namespace xps {

using GradFn = std::function<Vec(const Vec&)>;

/// Kick-drift-kick Stormer-Verlet step for a separable H = T(p) + V(q):
///   p_half = p - h/2 grad_V(q)
///   q_next = q + h   grad_T(p_half)
///   p_next = p_half - h/2 grad_V(q_next)
PhaseState stormer_verlet_step(const GradFn& grad_T, const GradFn& grad_V,
                               const PhaseState& s, double h);

}  // namespace xps
