#include "xps/system.hpp"

#include <cmath>
#include <limits>

namespace xps {

ExtendedState clone_up(const PhaseState& s) {
    if (!all_finite(s.q) || !all_finite(s.p) || !std::isfinite(s.tau))
        throw std::invalid_argument("clone_up: non-finite input state");
    ExtendedState e;
    e.q = s.q;
    e.qt = s.q;
    e.p = s.p;
    e.pt = s.p;
    e.tau = s.tau;
    e.t = s.tau;
    e.tt = s.tau;
    return e;
}

bool check_gradients(const HamiltonianSystem& sys, const PhaseState& sample, double rel_tol) {
    if (rel_tol <= 0.0) throw std::invalid_argument("check_gradients: rel_tol must be positive");

    const double cbrt_eps = std::cbrt(std::numeric_limits<double>::epsilon());
    const Vec aq = sys.grad_q(sample.q, sample.p);
    const Vec ap = sys.grad_p(sample.q, sample.p);

    auto mismatch = [&](double analytic, double fd) {
        const double scale = std::max({1.0, std::abs(analytic), std::abs(fd)});
        return std::abs(analytic - fd) > rel_tol * scale;
    };

    for (std::size_t i = 0; i < sample.q.size(); ++i) {
        const double delta = cbrt_eps * std::max(1.0, std::abs(sample.q[i]));
        Vec qp = sample.q, qm = sample.q;
        qp[i] += delta;
        qm[i] -= delta;
        const double fd = (sys.value(qp, sample.p) - sys.value(qm, sample.p)) / (2.0 * delta);
        if (mismatch(aq[i], fd)) return false;
    }
    for (std::size_t i = 0; i < sample.p.size(); ++i) {
        const double delta = cbrt_eps * std::max(1.0, std::abs(sample.p[i]));
        Vec pp = sample.p, pm = sample.p;
        pp[i] += delta;
        pm[i] -= delta;
        const double fd = (sys.value(sample.q, pp) - sys.value(sample.q, pm)) / (2.0 * delta);
        if (mismatch(ap[i], fd)) return false;
    }
    return true;
}

std::function<Vec(const Vec&, double)> hamiltonian_field(const HamiltonianSystem& sys) {
    const int n = sys.dim();
    return [&sys, n](const Vec& z, double) {
        Vec q(z.begin(), z.begin() + n);
        Vec p(z.begin() + n, z.end());
        Vec dq = sys.grad_p(q, p);
        Vec dp = sys.grad_q(q, p);
        Vec out(2 * static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) {
            out[static_cast<std::size_t>(i)] = dq[static_cast<std::size_t>(i)];
            out[static_cast<std::size_t>(n + i)] = -dp[static_cast<std::size_t>(i)];
        }
        return out;
    };
}

}  // namespace xps
