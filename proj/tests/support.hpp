#pragma once

// Shared helpers for the unit and acceptance suites: finite-difference
// Jacobians, symplectic-form residuals, slope fits, and small vector
// utilities. Test-only code; keeps its own oracles independent of the
// library paths it checks.

#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <vector>

#include "xps/types.hpp"

namespace xps::test {

inline double linfit_slope(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

inline double loglog_slope(const std::vector<double>& h, const std::vector<double>& err) {
    std::vector<double> lx, ly;
    for (std::size_t i = 0; i < h.size(); ++i) {
        lx.push_back(std::log(h[i]));
        ly.push_back(std::log(err[i]));
    }
    return linfit_slope(lx, ly);
}

inline double max_abs_diff(const Vec& a, const Vec& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

inline double l2_diff(const Vec& a, const Vec& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
    return std::sqrt(s);
}

inline double inf_norm(const Vec& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

/// Central-difference Jacobian of a map R^n -> R^n, with the difference
/// step scaled per coordinate.
inline std::vector<Vec> fd_jacobian(const std::function<Vec(const Vec&)>& map, const Vec& z0) {
    const std::size_t n = z0.size();
    const double cbrt_eps = std::cbrt(std::numeric_limits<double>::epsilon());
    std::vector<Vec> jac(n, Vec(n, 0.0));
    for (std::size_t j = 0; j < n; ++j) {
        const double delta = cbrt_eps * std::max(1.0, std::abs(z0[j]));
        Vec zp = z0, zm = z0;
        zp[j] += delta;
        zm[j] -= delta;
        const Vec fp = map(zp), fm = map(zm);
        for (std::size_t i = 0; i < n; ++i) jac[i][j] = (fp[i] - fm[i]) / (2.0 * delta);
    }
    return jac;
}

/// max |D^T J D - J| with J the canonical symplectic form
/// [[0, -I], [I, 0]] on pairs (first half, second half).
inline double symplectic_residual(const std::vector<Vec>& jac) {
    const std::size_t n2 = jac.size();
    const std::size_t n = n2 / 2;
    auto J = [n](std::size_t i, std::size_t j) -> double {
        if (i < n && j == i + n) return -1.0;
        if (i >= n && j == i - n) return 1.0;
        return 0.0;
    };
    // (D^T J D)_{ij} = sum_{k,l} D_{ki} J_{kl} D_{lj}
    double worst = 0.0;
    for (std::size_t i = 0; i < n2; ++i) {
        for (std::size_t j = 0; j < n2; ++j) {
            double acc = 0.0;
            for (std::size_t k = 0; k < n2; ++k) {
                // J has one nonzero per row.
                const std::size_t l = (k < n) ? k + n : k - n;
                acc += jac[k][i] * J(k, l) * jac[l][j];
            }
            worst = std::max(worst, std::abs(acc - J(i, j)));
        }
    }
    return worst;
}

inline Vec concat(const Vec& a, const Vec& b) {
    Vec out = a;
    out.insert(out.end(), b.begin(), b.end());
    return out;
}

}  // namespace xps::test
