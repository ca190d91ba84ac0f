#include "xps/maps.hpp"

#include <stdexcept>
#include <string>

namespace xps {

ExtendedState apply_mixing(const LinearPhaseMap& m, const ExtendedState& s) {
    if (m.kind != MapKind::Mixing)
        throw std::invalid_argument("apply_mixing: map is not of mixing kind");
    ExtendedState out = s;
    for (std::size_t i = 0; i < s.q.size(); ++i) {
        out.q[i] = blend(m.alpha_q, s.q[i], s.qt[i]);
        out.qt[i] = blend(m.alpha_q, s.qt[i], s.q[i]);
        out.p[i] = blend(m.alpha_p, s.p[i], s.pt[i]);
        out.pt[i] = blend(m.alpha_p, s.pt[i], s.p[i]);
    }
    return out;
}

PhaseState apply_projection(const LinearPhaseMap& m, const ExtendedState& s) {
    if (m.kind != MapKind::Projection)
        throw std::invalid_argument("apply_projection: map is not of projection kind");
    PhaseState out;
    out.q.resize(s.q.size());
    out.p.resize(s.p.size());
    for (std::size_t i = 0; i < s.q.size(); ++i) {
        out.q[i] = blend(m.alpha_q, s.q[i], s.qt[i]);
        out.p[i] = blend(m.alpha_p, s.p[i], s.pt[i]);
    }
    out.tau = s.tau;
    return out;
}

LinearPhaseMap preset(std::string_view name) {
    if (name == "identity") return {1.0, 1.0, MapKind::Mixing};
    if (name == "swap_momenta") return {1.0, 0.0, MapKind::Mixing};
    if (name == "swap_coordinates") return {0.0, 1.0, MapKind::Mixing};
    if (name == "swap_both") return {0.0, 0.0, MapKind::Mixing};
    if (name == "average") return {0.5, 0.5, MapKind::Mixing};
    if (name == "p_one_third_two_thirds") return {1.0 / 3.0, 2.0 / 3.0, MapKind::Projection};
    if (name == "proj_primary_q_aux_p") return {1.0, 0.0, MapKind::Projection};
    if (name == "proj_aux_q_primary_p") return {0.0, 1.0, MapKind::Projection};
    if (name == "proj_average") return {0.5, 0.5, MapKind::Projection};
    throw std::invalid_argument("unknown map preset: " + std::string(name));
}

}  // namespace xps
