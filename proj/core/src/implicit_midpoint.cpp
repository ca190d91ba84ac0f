#include "xps/implicit_midpoint.hpp"

#include <cmath>
#include <stdexcept>

namespace xps {

namespace {

double inf_norm(const Vec& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

}  // namespace

Vec implicit_midpoint_step(const FieldFn& f, const Vec& x, double t, double h,
                           double tol, int max_iter) {
    if (tol <= 0.0) throw std::invalid_argument("implicit_midpoint_step: tol must be positive");
    const double tm = t + 0.5 * h;

    Vec x1 = x;
    axpy(x1, h, f(x, tm));  // explicit guess

    Vec mid(x.size());
    for (int it = 0; it < max_iter; ++it) {
        for (std::size_t i = 0; i < x.size(); ++i) mid[i] = 0.5 * (x[i] + x1[i]);
        Vec x1_next = x;
        axpy(x1_next, h, f(mid, tm));
        double delta = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) delta = std::max(delta, std::abs(x1_next[i] - x1[i]));
        const double scale = inf_norm(x1_next);
        x1 = std::move(x1_next);
        if (!std::isfinite(delta) || !std::isfinite(scale))
            throw std::runtime_error("implicit_midpoint_step: iteration produced non-finite values");
        if (delta <= tol * std::max(scale, 1e-300)) return x1;
    }
    throw std::runtime_error(
        "implicit_midpoint_step: fixed-point iteration did not converge; step size too large");
}

}  // namespace xps
