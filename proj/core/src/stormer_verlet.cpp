#include "xps/stormer_verlet.hpp"

namespace xps {

PhaseState stormer_verlet_step(const GradFn& grad_T, const GradFn& grad_V,
                               const PhaseState& s, double h) {
    PhaseState out = s;
    axpy(out.p, -0.5 * h, grad_V(out.q));
    axpy(out.q, h, grad_T(out.p));
    axpy(out.p, -0.5 * h, grad_V(out.q));
    out.tau = s.tau + h;
    return out;
}

}  // namespace xps
