#include "xps/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace xps {

void OracleConfig::validate() const {
    const double eps = std::numeric_limits<double>::epsilon();
    if (rel_tol <= 0.0 || abs_tol <= 0.0)
        throw std::invalid_argument("oracle: tolerances must be positive");
    if (rel_tol < 10.0 * eps)
        throw std::invalid_argument("oracle: rel_tol below 10x machine epsilon");
    if (max_steps <= 0) throw std::invalid_argument("oracle: max_steps must be positive");
}

namespace {

// Dormand-Prince 5(4) coefficients.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
// 5th-minus-4th order weights for the embedded error estimate.
constexpr double e1 = b1 - 5179.0 / 57600, e3 = b3 - 7571.0 / 16695, e4 = b4 - 393.0 / 640,
                 e5 = b5 + 92097.0 / 339200, e6 = b6 - 187.0 / 2100, e7 = -1.0 / 40;

struct StepResult {
    Vec x5;
    Vec k7;
    double err = 0.0;
};

StepResult dopri5_step(const FieldFn& f, const Vec& x, double t, double h, const Vec& k1,
                       double atol, double rtol) {
    const std::size_t n = x.size();
    Vec w(n);

    auto stage = [&](std::initializer_list<std::pair<const Vec*, double>> terms, double c) {
        for (std::size_t i = 0; i < n; ++i) {
            double acc = x[i];
            for (const auto& [k, a] : terms) acc += h * a * (*k)[i];
            w[i] = acc;
        }
        return f(w, t + c * h);
    };

    const Vec k2 = stage({{&k1, a21}}, c2);
    const Vec k3 = stage({{&k1, a31}, {&k2, a32}}, c3);
    const Vec k4 = stage({{&k1, a41}, {&k2, a42}, {&k3, a43}}, c4);
    const Vec k5 = stage({{&k1, a51}, {&k2, a52}, {&k3, a53}, {&k4, a54}}, c5);
    const Vec k6 = stage({{&k1, a61}, {&k2, a62}, {&k3, a63}, {&k4, a64}, {&k5, a65}}, 1.0);

    StepResult out;
    out.x5.resize(n);
    for (std::size_t i = 0; i < n; ++i)
        out.x5[i] = x[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
    out.k7 = f(out.x5, t + h);  // FSAL stage

    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double ei = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] +
                               e7 * out.k7[i]);
        const double sc = atol + rtol * std::max(std::abs(x[i]), std::abs(out.x5[i]));
        sum += (ei / sc) * (ei / sc);
    }
    out.err = std::sqrt(sum / static_cast<double>(n));
    return out;
}

double initial_step(const FieldFn& f, const Vec& x0, double t0, const Vec& f0, double span,
                    double atol, double rtol) {
    const std::size_t n = x0.size();
    auto scaled_norm = [&](const Vec& v, const Vec& ref) {
        double sum = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double sc = atol + rtol * std::abs(ref[i]);
            sum += (v[i] / sc) * (v[i] / sc);
        }
        return std::sqrt(sum / static_cast<double>(n));
    };
    const double d0 = scaled_norm(x0, x0);
    const double d1 = scaled_norm(f0, x0);
    double h0 = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;
    h0 = std::min(h0, span);

    Vec x1 = x0;
    axpy(x1, h0, f0);
    const Vec f1 = f(x1, t0 + h0);
    Vec df(n);
    for (std::size_t i = 0; i < n; ++i) df[i] = f1[i] - f0[i];
    const double d2 = scaled_norm(df, x0) / h0;

    const double dm = std::max(d1, d2);
    double h1 = (dm <= 1e-15) ? std::max(1e-6, h0 * 1e-3) : std::pow(0.01 / dm, 0.2);
    return std::min({100.0 * h0, h1, span});
}

}  // namespace

Trajectory oracle_solve(const FieldFn& f, const Vec& x0, double t0, double t1,
                        const OracleConfig& cfg, const std::vector<double>& sample_times,
                        const std::function<double(const Vec&)>& invariant_fn,
                        const std::function<std::uint64_t()>& evals_fn) {
    cfg.validate();
    if (!(t1 > t0)) throw std::invalid_argument("oracle_solve: need t1 > t0");
    for (std::size_t i = 1; i < sample_times.size(); ++i)
        if (!(sample_times[i] > sample_times[i - 1]))
            throw std::invalid_argument("oracle_solve: sample times must be increasing");

    Trajectory traj;
    for (std::size_t i = 0; i < x0.size(); ++i)
        traj.state_labels.push_back("x" + std::to_string(i));

    Vec x = x0;
    double t = t0;
    long accepted = 0;
    const std::uint64_t evals0 = evals_fn ? evals_fn() : 0;
    std::size_t next_sample = 0;
    while (next_sample < sample_times.size() && sample_times[next_sample] <= t0) ++next_sample;

    auto record = [&](double at) {
        TrajectoryRow row;
        row.step = accepted;
        row.tau = at;
        row.t = at;
        row.state = x;
        row.invariant =
            invariant_fn ? invariant_fn(x) : std::numeric_limits<double>::quiet_NaN();
        row.evals = evals_fn ? evals_fn() - evals0 : 0;
        traj.rows.push_back(std::move(row));
    };

    record(t0);

    Vec k1 = f(x, t);
    double h = cfg.initial_step > 0.0
                   ? cfg.initial_step
                   : initial_step(f, x, t, k1, t1 - t0, cfg.abs_tol, cfg.rel_tol);
    double facold = 1e-4;

    const double tiny = std::numeric_limits<double>::epsilon() * 16.0;
    long n_steps = 0;
    while (t < t1) {
        if (++n_steps > cfg.max_steps)
            throw std::runtime_error("oracle_solve: max_steps exceeded");
        if (h < tiny * std::max(1.0, std::abs(t)))
            throw std::runtime_error("oracle_solve: step size underflow (tolerance too tight?)");

        // Land exactly on the next sample time / endpoint.
        double target = t1;
        bool hit_sample = false;
        if (next_sample < sample_times.size() && sample_times[next_sample] < t1) {
            target = sample_times[next_sample];
            hit_sample = true;
        }
        bool clamped = false;
        double h_used = h;
        if (t + h >= target) {
            h_used = target - t;
            clamped = true;
        }

        StepResult r = dopri5_step(f, x, t, h_used, k1, cfg.abs_tol, cfg.rel_tol);
        if (!std::isfinite(r.err)) {
            h = 0.25 * h_used;
            continue;
        }
        if (r.err <= 1.0) {
            t = clamped ? target : t + h_used;
            x = std::move(r.x5);
            k1 = std::move(r.k7);
            ++accepted;
            if (clamped) {
                if (hit_sample) {
                    record(target);
                    ++next_sample;
                } else {
                    record(t1);
                }
            }
            const double fac11 = std::pow(std::max(r.err, 1e-32), 0.17);
            double fac = fac11 / std::pow(facold, 0.04);
            fac = std::clamp(fac / 0.9, 0.2, 5.0);
            // A step shortened to hit an output point must not shrink
            // the controller's memory of the natural step size.
            h = std::max(h_used / fac, clamped ? h : 0.0);
            facold = std::max(r.err, 1e-4);
        } else {
            const double fac11 = std::pow(r.err, 0.17);
            h = h_used / std::min(std::clamp(fac11 / 0.9, 1.0, 10.0), 10.0);
        }
    }
    return traj;
}

Vec oracle_endpoint(const FieldFn& f, const Vec& x0, double t0, double t1,
                    const OracleConfig& cfg) {
    Trajectory traj = oracle_solve(f, x0, t0, t1, cfg);
    return traj.rows.back().state;
}

}  // namespace xps
