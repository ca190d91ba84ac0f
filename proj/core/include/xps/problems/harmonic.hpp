#pragma once

#include "xps/system.hpp"
#include "xps/types.hpp"

namespace xps::problems {

/// H = p^2/2 + omega^2 q^2 / 2, with the exact rotation available as a
/// reference and the separable T/V parts exposed for Stormer-Verlet and
/// PRK use.
class HarmonicOscillator final : public HamiltonianSystem {
public:
    explicit HarmonicOscillator(double omega = 1.0);

    int dim() const override { return 1; }
    double omega() const { return omega_; }

    PhaseState exact(const PhaseState& start, double dt) const;

    Vec grad_T(const Vec& p) const { return {p[0]}; }
    Vec grad_V(const Vec& q) const { return {omega_ * omega_ * q[0]}; }

protected:
    double do_value(const Vec& q, const Vec& p) const override;
    Vec do_grad_q(const Vec& q, const Vec& p) const override;
    Vec do_grad_p(const Vec& q, const Vec& p) const override;

private:
    double omega_;
};

}  // namespace xps::problems
