#pragma once

#include "xps/system.hpp"
#include "xps/types.hpp"

namespace xps::problems {

/// Equatorial Schwarzschild test orbit in geometric units (G = c = 1).
/// a and e are the semi-major axis and eccentricity of the classical
/// analogue orbit used to seed the initial conditions.
struct SchwarzschildParams {
    double M = 1.0;  // central mass
    double m = 1.0;  // test particle mass
    double a = 28.0;
    double e = 0.5;

    void validate() const;
    /// Classical orbital period 2*pi*sqrt(a^3/M), used as the time unit
    /// for step sizes and run lengths.
    double orbital_period() const;
};

/// Geodesic Hamiltonian H = (1/2) g^{ab} p_a p_b over q = (t, r, phi),
/// p = (p_t, p_r, p_phi):
///   H = 1/2 [ (1-2M/r)^{-1} p_t^2 - (1-2M/r) p_r^2 - p_phi^2 / r^2 ]
/// H is invariant under translations of t and phi, so those gradient
/// components are exactly zero.
class SchwarzschildSystem final : public HamiltonianSystem {
public:
    explicit SchwarzschildSystem(SchwarzschildParams params);

    int dim() const override { return 3; }
    const SchwarzschildParams& params() const { return params_; }

protected:
    double do_value(const Vec& q, const Vec& p) const override;
    Vec do_grad_q(const Vec& q, const Vec& p) const override;
    Vec do_grad_p(const Vec& q, const Vec& p) const override;

private:
    double metric_factor(double r) const;  // 1 - 2M/r, throws at/inside the horizon
    SchwarzschildParams params_;
};

/// Apocentre start: r0 = a(1+e), p_r = 0, p_phi = -r0^2 * v0/r0 with
/// v0 = sqrt((1-e)/r0), and p_t > 0 solved from H = m^2/2.
PhaseState schwarzschild_initial_conditions(const SchwarzschildParams& params);

/// First-order pericenter precession estimate 6 pi M / [(1-e^2) a].
double pericenter_precession_estimate(const SchwarzschildParams& params);

}  // namespace xps::problems
