#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace xps {

using Vec = std::vector<double>;

inline bool all_finite(const Vec& v) {
    for (double x : v)
        if (!std::isfinite(x)) return false;
    return true;
}

/// y += a * x
inline void axpy(Vec& y, double a, const Vec& x) {
    for (std::size_t i = 0; i < y.size(); ++i) y[i] += a * x[i];
}

/// A point of the original phase space plus the value of the
/// integration parameter.
struct PhaseState {
    Vec q;
    Vec p;
    double tau = 0.0;

    PhaseState() = default;
    PhaseState(Vec q_in, Vec p_in, double tau_in = 0.0)
        : q(std::move(q_in)), p(std::move(p_in)), tau(tau_in) {
        if (q.empty() || q.size() != p.size())
            throw std::invalid_argument("PhaseState: q and p must have equal, nonzero length");
        if (!all_finite(q) || !all_finite(p) || !std::isfinite(tau))
            throw std::invalid_argument("PhaseState: non-finite component");
    }

    std::size_t dim() const { return q.size(); }
};

/// Doubled phase space point (q, q~, p, p~). The t/tt fields carry the
/// original and auxiliary time for non-autonomous use; autonomous
/// Hamiltonian flows never touch them.
struct ExtendedState {
    Vec q, qt, p, pt;
    double tau = 0.0;
    double t = 0.0, tt = 0.0;

    std::size_t dim() const { return q.size(); }
};

/// Magnitude beyond which an integration is declared divergent. Large
/// enough to pass legitimate large-scale problems, small enough to catch
/// the runaway separation of uncoupled phase-space copies.
inline constexpr double kDivergenceThreshold = 1e12;

inline bool component_diverged(double x) {
    return !std::isfinite(x) || std::abs(x) > kDivergenceThreshold;
}

inline bool any_diverged(const Vec& v) {
    for (double x : v)
        if (component_diverged(x)) return true;
    return false;
}

}  // namespace xps
