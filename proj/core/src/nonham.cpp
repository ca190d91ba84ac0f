#include "xps/nonham.hpp"

#include <stdexcept>
#include <string>

namespace xps {

namespace {

int partition_of(const FirstOrderSystem& sys) {
    return sys.partition().value_or(sys.dim());
}

// Point (a[0:k) || b[k:n)).
Vec splice(const Vec& a, const Vec& b, int k) {
    Vec z(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        z[i] = (static_cast<int>(i) < k) ? a[i] : b[i];
    return z;
}

void add_range(Vec& dst, double a, const Vec& src, int lo, int hi) {
    for (int i = lo; i < hi; ++i)
        dst[static_cast<std::size_t>(i)] += a * src[static_cast<std::size_t>(i)];
}

// Mixing/projection weight per component: alpha_q on the x-part,
// alpha_p on the y-part of a partitioned system.
double block_alpha(const LinearPhaseMap& m, int i, int k) {
    return i < k ? m.alpha_q : m.alpha_p;
}

void mix_ode(const LinearPhaseMap& m, ExtendedODEState& s, int k) {
    if (m.kind != MapKind::Mixing)
        throw std::invalid_argument("mix_ode: map is not of mixing kind");
    if (m.is_identity()) return;
    for (std::size_t i = 0; i < s.x.size(); ++i) {
        const double a = block_alpha(m, static_cast<int>(i), k);
        const double xi = s.x[i], xti = s.xt[i];
        s.x[i] = blend(a, xi, xti);
        s.xt[i] = blend(a, xti, xi);
    }
    // Times are never mixed; they are equal by construction.
}

bool ode_state_diverged(const ExtendedODEState& s) {
    return any_diverged(s.x) || any_diverged(s.xt) || component_diverged(s.t) ||
           component_diverged(s.tt);
}

}  // namespace

ExtendedODEState clone_up_ode(const Vec& x0, double t0) {
    if (!all_finite(x0) || !std::isfinite(t0))
        throw std::invalid_argument("clone_up_ode: non-finite input");
    ExtendedODEState s;
    s.x = x0;
    s.xt = x0;
    s.t = t0;
    s.tt = t0;
    return s;
}

OdeMethod ode_method_by_name(std::string_view name) {
    if (name == "method1") return OdeMethod::Method1;
    if (name == "method2") return OdeMethod::Method2;
    throw std::invalid_argument("unknown ODE method: " + std::string(name));
}

void method1_step(const FirstOrderSystem& sys, ExtendedODEState& s, double h) {
    const double t_in = s.t;
    axpy(s.x, 0.5 * h, sys.field(s.xt, s.tt));
    s.t = t_in + 0.5 * h;
    axpy(s.xt, h, sys.field(s.x, s.t));
    s.tt += h;
    axpy(s.x, 0.5 * h, sys.field(s.xt, s.tt));
    s.t = t_in + h;
}

void method2_step(const FirstOrderSystem& sys, ExtendedODEState& s, double h) {
    if (!sys.partition())
        throw std::invalid_argument("method2_step: system declares no partition");
    const int k = *sys.partition();
    const int n = sys.dim();
    const double t_in = s.t;

    // Half-step of (x, y~, t) from (x~, y, t~). The x- and y-part
    // updates are separate component-field applications.
    {
        const Vec z = splice(s.xt, s.x, k);
        if (k > 0) add_range(s.x, 0.5 * h, sys.field(z, s.tt), 0, k);
        if (k < n) add_range(s.xt, 0.5 * h, sys.field(z, s.tt), k, n);
        s.t = t_in + 0.5 * h;
    }
    // Full step of (x~, y, t~) from the midpoints.
    {
        const Vec z = splice(s.x, s.xt, k);
        if (k > 0) add_range(s.xt, h, sys.field(z, s.t), 0, k);
        if (k < n) add_range(s.x, h, sys.field(z, s.t), k, n);
        s.tt += h;
    }
    // Closing half-step.
    {
        const Vec z = splice(s.xt, s.x, k);
        if (k > 0) add_range(s.x, 0.5 * h, sys.field(z, s.tt), 0, k);
        if (k < n) add_range(s.xt, 0.5 * h, sys.field(z, s.tt), k, n);
        s.t = t_in + h;
    }
}

void mixed_ode_step(const FirstOrderSystem& sys, OdeMethod method, ExtendedODEState& s,
                    double h, const LinearPhaseMap& m1, const LinearPhaseMap& m2) {
    const int k = partition_of(sys);
    const int n = sys.dim();

    if (m1.is_identity()) {
        if (method == OdeMethod::Method1)
            method1_step(sys, s, h);
        else
            method2_step(sys, s, h);
    } else if (method == OdeMethod::Method1) {
        // Palindrome split around M1; the middle evaluations no longer
        // coincide once M1 moves x.
        const double t_in = s.t;
        axpy(s.x, 0.5 * h, sys.field(s.xt, s.tt));
        s.t = t_in + 0.5 * h;
        axpy(s.xt, 0.5 * h, sys.field(s.x, s.t));
        s.tt += 0.5 * h;
        mix_ode(m1, s, k);
        s.tt += 0.5 * h;
        axpy(s.xt, 0.5 * h, sys.field(s.x, s.t));
        s.t = t_in + h;
        axpy(s.x, 0.5 * h, sys.field(s.xt, s.tt));
    } else {
        if (!sys.partition())
            throw std::invalid_argument("method2_step: system declares no partition");
        const double t_in = s.t;
        {
            const Vec z = splice(s.xt, s.x, k);
            if (k > 0) add_range(s.x, 0.5 * h, sys.field(z, s.tt), 0, k);
            if (k < n) add_range(s.xt, 0.5 * h, sys.field(z, s.tt), k, n);
            s.t = t_in + 0.5 * h;
        }
        {
            const Vec z = splice(s.x, s.xt, k);
            if (k > 0) add_range(s.xt, 0.5 * h, sys.field(z, s.t), 0, k);
            if (k < n) add_range(s.x, 0.5 * h, sys.field(z, s.t), k, n);
            s.tt += 0.5 * h;
        }
        mix_ode(m1, s, k);
        {
            s.tt += 0.5 * h;
            const Vec z = splice(s.x, s.xt, k);
            if (k > 0) add_range(s.xt, 0.5 * h, sys.field(z, s.t), 0, k);
            if (k < n) add_range(s.x, 0.5 * h, sys.field(z, s.t), k, n);
        }
        {
            s.t = t_in + h;
            const Vec z = splice(s.xt, s.x, k);
            if (k > 0) add_range(s.x, 0.5 * h, sys.field(z, s.tt), 0, k);
            if (k < n) add_range(s.xt, 0.5 * h, sys.field(z, s.tt), k, n);
        }
    }
    if (!m2.is_identity()) mix_ode(m2, s, k);
}

Trajectory integrate_ode(const FirstOrderSystem& sys, OdeMethod method, const Vec& x0,
                         double t0, const OdeIntegrateOptions& opt) {
    if (opt.n_steps < 0) throw std::invalid_argument("integrate_ode: negative step count");
    if (!std::isfinite(opt.h)) throw std::invalid_argument("integrate_ode: non-finite step size");
    if (opt.projection.kind != MapKind::Projection)
        throw std::invalid_argument("integrate_ode: output map must be a projection");
    opt.composition.validate();

    const int k = partition_of(sys);
    const std::uint64_t evals0 = sys.counter().count();
    const long stride = opt.sample_every > 0 ? opt.sample_every : 1;

    Trajectory traj;
    for (int i = 0; i < sys.dim(); ++i) traj.state_labels.push_back("x" + std::to_string(i));

    ExtendedODEState es = clone_up_ode(x0, t0);

    auto project = [&](const ExtendedODEState& s) {
        Vec out(s.x.size());
        for (std::size_t i = 0; i < s.x.size(); ++i)
            out[i] = blend(block_alpha(opt.projection, static_cast<int>(i), k), s.x[i], s.xt[i]);
        return out;
    };

    auto record = [&](long step) {
        TrajectoryRow row;
        row.step = step;
        row.tau = es.t;
        row.t = es.t;
        row.state = project(es);
        row.invariant = std::numeric_limits<double>::quiet_NaN();
        row.evals = sys.counter().count() - evals0;
        traj.rows.push_back(std::move(row));
    };

    record(0);
    for (long i = 1; i <= opt.n_steps; ++i) {
        for (double g : opt.composition.gammas)
            mixed_ode_step(sys, method, es, g * opt.h, opt.mix1, opt.mix2);
        // Exact time bookkeeping at step boundaries.
        es.t = t0 + static_cast<double>(i) * opt.h;
        es.tt = es.t;
        if (ode_state_diverged(es)) {
            traj.diverged = true;
            traj.diagnostic = "state component exceeded " +
                              std::to_string(kDivergenceThreshold) + " at step " +
                              std::to_string(i) + " (t = " + std::to_string(es.t) + ")";
            break;
        }
        if (opt.mode == DriverMode::ProjectEachStep) {
            Vec projected = project(es);
            es.x = projected;
            es.xt = std::move(projected);
        }
        if (i % stride == 0 || i == opt.n_steps) record(i);
    }
    return traj;
}

}  // namespace xps
