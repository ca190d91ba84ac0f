#pragma once

#include <string_view>

#include "xps/types.hpp"

namespace xps {

enum class MapKind { Mixing, Projection };

/// Symmetric linear map on the extended phase space, described by the
/// weights of the primary coordinate and momentum copies. The
/// complementary weights are 1 - alpha_q and 1 - alpha_p by construction
/// and are never stored.
///
/// Mixing kind:      q' = a q + (1-a) q~,  q~' = (1-a) q + a q~   (same for p)
/// Projection kind:  q' = a q + (1-a) q~,  p' = b p + (1-b) p~
struct LinearPhaseMap {
    double alpha_q = 1.0;
    double alpha_p = 1.0;
    MapKind kind = MapKind::Mixing;

    bool is_identity() const { return kind == MapKind::Mixing && alpha_q == 1.0 && alpha_p == 1.0; }
};

/// alpha*a + (1-alpha)*b, computed as b + alpha*(a-b) so that blending
/// equal values is exactly the identity; alpha in {0,1} short-circuits
/// to an exact copy.
inline double blend(double alpha, double a, double b) {
    if (alpha == 1.0) return a;
    if (alpha == 0.0) return b;
    return b + alpha * (a - b);
}

ExtendedState apply_mixing(const LinearPhaseMap& m, const ExtendedState& s);
PhaseState apply_projection(const LinearPhaseMap& m, const ExtendedState& s);

/// Named map presets.
///   identity, swap_momenta, swap_coordinates, swap_both, average   (mixing)
///   p_one_third_two_thirds, proj_primary_q_aux_p (P1),
///   proj_aux_q_primary_p (P2), proj_average                        (projection)
LinearPhaseMap preset(std::string_view name);

}  // namespace xps
