#include <cmath>
#include <numbers>
#include <stdexcept>

#include "xps/problems/harmonic.hpp"
#include "xps/problems/schwarzschild.hpp"
#include "xps/problems/vdp.hpp"

namespace xps::problems {

void SchwarzschildParams::validate() const {
    if (M <= 0.0 || m <= 0.0) throw std::invalid_argument("schwarzschild: masses must be positive");
    if (e < 0.0 || e >= 1.0) throw std::invalid_argument("schwarzschild: need 0 <= e < 1");
    if (a * (1.0 - e) <= 2.0 * M)
        throw std::invalid_argument("schwarzschild: pericenter inside the horizon");
}

double SchwarzschildParams::orbital_period() const {
    return 2.0 * std::numbers::pi * std::sqrt(a * a * a / M);
}

SchwarzschildSystem::SchwarzschildSystem(SchwarzschildParams params) : params_(params) {
    params_.validate();
}

double SchwarzschildSystem::metric_factor(double r) const {
    const double f = 1.0 - 2.0 * params_.M / r;
    if (!(r > 0.0) || f <= 0.0)
        throw std::domain_error("schwarzschild: r at or inside the Schwarzschild radius");
    return f;
}

double SchwarzschildSystem::do_value(const Vec& q, const Vec& p) const {
    const double r = q[1];
    const double f = metric_factor(r);
    const double pt = p[0], pr = p[1], pphi = p[2];
    return 0.5 * (pt * pt / f - f * pr * pr - pphi * pphi / (r * r));
}

Vec SchwarzschildSystem::do_grad_q(const Vec& q, const Vec& p) const {
    const double r = q[1];
    const double f = metric_factor(r);
    const double pt = p[0], pr = p[1], pphi = p[2];
    const double M = params_.M;
    // dH/dt = dH/dphi = 0: H is invariant under t and phi translations.
    const double dHdr = -(M / (r * r)) * pt * pt / (f * f) - (M / (r * r)) * pr * pr +
                        pphi * pphi / (r * r * r);
    return {0.0, dHdr, 0.0};
}

Vec SchwarzschildSystem::do_grad_p(const Vec& q, const Vec& p) const {
    const double r = q[1];
    const double f = metric_factor(r);
    return {p[0] / f, -f * p[1], -p[2] / (r * r)};
}

PhaseState schwarzschild_initial_conditions(const SchwarzschildParams& params) {
    params.validate();
    const double r0 = params.a * (1.0 + params.e);
    const double v0 = std::sqrt((1.0 - params.e) / r0);
    const double phidot0 = v0 / r0;
    const double p_phi = -r0 * r0 * phidot0;
    const double f = 1.0 - 2.0 * params.M / r0;
    // p_t from H = m^2/2, positive root.
    const double pt_sq = f * (params.m * params.m + p_phi * p_phi / (r0 * r0));
    if (!(pt_sq > 0.0) || !std::isfinite(pt_sq))
        throw std::invalid_argument("schwarzschild: no real root for p_t");
    return PhaseState({0.0, r0, 0.0}, {std::sqrt(pt_sq), 0.0, p_phi}, 0.0);
}

double pericenter_precession_estimate(const SchwarzschildParams& params) {
    params.validate();
    return 6.0 * std::numbers::pi * params.M / ((1.0 - params.e * params.e) * params.a);
}

void VdpParams::validate() const {
    if (P_force <= 0.0) throw std::invalid_argument("vdp: forcing period must be positive");
}

VdpSystem::VdpSystem(VdpParams params) : params_(params) { params_.validate(); }

Vec VdpSystem::do_field(const Vec& x, double t) const {
    const double mu = params_.mu, A = params_.A, P = params_.P_force;
    const double forcing = A * std::cos(2.0 * std::numbers::pi * t / P);
    return {x[1], mu * (1.0 - x[0] * x[0]) * x[1] - x[0] + forcing};
}

HarmonicOscillator::HarmonicOscillator(double omega) : omega_(omega) {
    if (omega <= 0.0) throw std::invalid_argument("harmonic: omega must be positive");
}

double HarmonicOscillator::do_value(const Vec& q, const Vec& p) const {
    return 0.5 * p[0] * p[0] + 0.5 * omega_ * omega_ * q[0] * q[0];
}

Vec HarmonicOscillator::do_grad_q(const Vec& q, const Vec&) const {
    return {omega_ * omega_ * q[0]};
}

Vec HarmonicOscillator::do_grad_p(const Vec&, const Vec& p) const { return {p[0]}; }

PhaseState HarmonicOscillator::exact(const PhaseState& start, double dt) const {
    const double c = std::cos(omega_ * dt), s = std::sin(omega_ * dt);
    const double q = start.q[0] * c + start.p[0] / omega_ * s;
    const double p = start.p[0] * c - start.q[0] * omega_ * s;
    return PhaseState({q}, {p}, start.tau + dt);
}

}  // namespace xps::problems
