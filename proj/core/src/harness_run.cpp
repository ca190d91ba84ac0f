#include "xps/harness/run.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "xps/implicit_midpoint.hpp"
#include "xps/system.hpp"

namespace xps::harness {

ExperimentConfig ExperimentConfig::geodesic_defaults() {
    ExperimentConfig cfg;
    cfg.problem = "schwarzschild";
    cfg.method = "extended";
    cfg.scheme = "qptqtp";
    cfg.mix1 = preset("swap_momenta");
    cfg.mix2 = preset("swap_momenta");
    cfg.proj = preset("proj_primary_q_aux_p");
    cfg.mode = DriverMode::ExtendedPersistent;
    cfg.h = 0.02;
    cfg.orbits = 10.0;
    return cfg;
}

ExperimentConfig ExperimentConfig::vdp_defaults() {
    ExperimentConfig cfg;
    cfg.problem = "vdp";
    cfg.method = "method1";
    cfg.composition = "kahan6";
    cfg.mix1 = preset("identity");
    cfg.mix2 = preset("swap_both");
    cfg.proj = preset("proj_average");
    cfg.mode = DriverMode::ProjectEachStep;
    cfg.h = 0.02;
    cfg.t_end = 500.0;
    return cfg;
}

namespace {

long step_count(double duration, double h) {
    if (h <= 0.0) throw std::invalid_argument("step size must be positive");
    if (duration < 0.0) throw std::invalid_argument("duration must be non-negative");
    return std::lround(duration / h);
}

std::vector<double> sampled_times(const Trajectory& traj) {
    std::vector<double> out;
    for (std::size_t i = 1; i < traj.rows.size(); ++i) out.push_back(traj.rows[i].tau);
    return out;
}

// Appends per-sample errors against a reference trajectory sampled at
// the same times, each coordinate scaled by its own unit, plus the
// running max of the combined error.
void append_reference_errors(Trajectory& traj, const Trajectory& ref,
                             const std::vector<std::string>& err_labels, const Vec& scales,
                             RunSummary& summary) {
    for (const auto& label : err_labels) traj.state_labels.push_back("err_" + label);
    traj.state_labels.push_back("max_err");

    double running = 0.0;
    for (std::size_t i = 0; i < traj.rows.size(); ++i) {
        auto& row = traj.rows[i];
        double combined = 0.0;
        for (std::size_t c = 0; c < err_labels.size(); ++c) {
            double err = 0.0;
            // Row 0 is the shared initial state with zero error.
            if (i > 0 && i < ref.rows.size())
                err = std::abs(row.state[c] - ref.rows[i].state[c]) / scales[c];
            row.state.push_back(err);
            combined = std::max(combined, err);
        }
        running = std::max(running, combined);
        row.state.push_back(running);
        summary.final_err = combined;
    }
    summary.max_abs_err = running;
}

}  // namespace

RunResult run_geodesic(const ExperimentConfig& cfg) {
    if (cfg.problem != "schwarzschild")
        throw std::invalid_argument("run_geodesic: config problem is not schwarzschild");
    cfg.geodesic.validate();

    const double P = cfg.geodesic.orbital_period();
    const double h = cfg.h * P;
    const long n_steps = step_count(cfg.orbits, cfg.h);
    const long stride = cfg.sample_every > 0 ? cfg.sample_every : 1;

    problems::SchwarzschildSystem sys(cfg.geodesic);
    const PhaseState start = schwarzschild_initial_conditions(cfg.geodesic);
    const double h_ref = 0.5 * cfg.geodesic.m * cfg.geodesic.m;

    RunResult result;
    RunSummary& summary = result.summary;
    summary.problem = cfg.problem;
    summary.method = cfg.method;
    summary.h = h;
    summary.n_steps = n_steps;
    summary.duration = static_cast<double>(n_steps) * h;

    if (cfg.method == "extended") {
        IntegrateOptions opt;
        opt.mix1 = cfg.mix1;
        opt.mix2 = cfg.mix2;
        opt.projection = cfg.proj;
        opt.mode = cfg.mode;
        opt.composition = composition_by_name(cfg.composition);
        opt.h = h;
        opt.n_steps = n_steps;
        opt.sample_every = stride;
        result.traj = integrate(sys, scheme_by_name(cfg.scheme), start, opt);
    } else if (cfg.method == "implicit-midpoint") {
        Trajectory traj;
        FieldFn field = hamiltonian_field(sys);
        Vec z = start.q;
        z.insert(z.end(), start.p.begin(), start.p.end());

        auto record = [&](long step, double tau) {
            TrajectoryRow row;
            row.step = step;
            row.tau = tau;
            row.t = tau;
            row.state = z;
            Vec q(z.begin(), z.begin() + 3), p(z.begin() + 3, z.end());
            row.invariant = sys.value(q, p);
            row.evals = sys.counter().count();
            traj.rows.push_back(std::move(row));
        };

        record(0, 0.0);
        for (long i = 1; i <= n_steps; ++i) {
            const double tau = static_cast<double>(i - 1) * h;
            z = implicit_midpoint_step(field, z, tau, h);
            if (any_diverged(z)) {
                traj.diverged = true;
                traj.diagnostic = "divergence at step " + std::to_string(i);
                break;
            }
            if (i % stride == 0 || i == n_steps) record(i, static_cast<double>(i) * h);
        }
        result.traj = std::move(traj);
    } else if (cfg.method == "oracle") {
        FieldFn field = hamiltonian_field(sys);
        Vec z = start.q;
        z.insert(z.end(), start.p.begin(), start.p.end());
        std::vector<double> samples;
        for (long i = stride; i <= n_steps; i += stride) samples.push_back(static_cast<double>(i) * h);
        if (n_steps > 0 && (samples.empty() || samples.back() != summary.duration))
            samples.push_back(summary.duration);
        if (n_steps == 0) {
            Trajectory traj;
            TrajectoryRow row;
            row.state = z;
            Vec q(z.begin(), z.begin() + 3), p(z.begin() + 3, z.end());
            row.invariant = sys.value(q, p);
            traj.rows.push_back(std::move(row));
            result.traj = std::move(traj);
        } else {
            result.traj = oracle_solve(
                field, z, 0.0, summary.duration, cfg.oracle, samples,
                [&sys](const Vec& zz) {
                    Vec q(zz.begin(), zz.begin() + 3), p(zz.begin() + 3, zz.end());
                    return sys.value(q, p);
                },
                [&sys] { return sys.counter().count(); });
        }
        // Step indices for oracle rows are its own accepted-step counts;
        // remap tau-aligned sample indices for drift fits.
        for (auto& row : result.traj.rows) row.step = std::lround(row.tau / h);
    } else {
        throw std::invalid_argument("run_geodesic: unknown method " + cfg.method);
    }

    result.traj.state_labels = {"t", "r", "phi", "p_t", "p_r", "p_phi"};
    if (result.traj.rows.front().state.size() == 3)  // oracle rows carry q and p too
        throw std::logic_error("run_geodesic: unexpected state width");

    // Orbit plane samples.
    result.traj.state_labels.push_back("orbit_x");
    result.traj.state_labels.push_back("orbit_y");
    for (auto& row : result.traj.rows) {
        const double r = row.state[1], phi = row.state[2];
        row.state.push_back(r * std::cos(phi));
        row.state.push_back(r * std::sin(phi));
    }

    summary.evaluations = result.traj.rows.back().evals;
    summary.diverged = result.traj.diverged;
    summary.diagnostic = result.traj.diagnostic;
    summary.final_state = result.traj.rows.back().state;
    for (const auto& row : result.traj.rows)
        summary.max_abs_dH = std::max(summary.max_abs_dH, std::abs(row.invariant - h_ref));

    if (cfg.with_reference && n_steps > 0 && !result.traj.diverged) {
        problems::SchwarzschildSystem ref_sys(cfg.geodesic);
        FieldFn ref_field = hamiltonian_field(ref_sys);
        Vec z0 = start.q;
        z0.insert(z0.end(), start.p.begin(), start.p.end());
        const Trajectory ref =
            oracle_solve(ref_field, z0, 0.0, summary.duration, cfg.oracle, sampled_times(result.traj));
        const double r_max = (1.0 + cfg.geodesic.e) * cfg.geodesic.a;
        append_reference_errors(result.traj, ref, {"t", "r", "phi"},
                                {P, r_max, 2.0 * std::numbers::pi}, summary);
    }
    return result;
}

RunResult run_vdp(const ExperimentConfig& cfg) {
    if (cfg.problem != "vdp") throw std::invalid_argument("run_vdp: config problem is not vdp");
    cfg.vdp.validate();

    const double h = cfg.h;
    const long n_steps = step_count(cfg.t_end, h);
    const long stride = cfg.sample_every > 0 ? cfg.sample_every : 1;
    const Vec x0 = {2.0, 2.0};

    problems::VdpSystem sys(cfg.vdp);

    RunResult result;
    RunSummary& summary = result.summary;
    summary.problem = cfg.problem;
    summary.method = cfg.method;
    summary.h = h;
    summary.n_steps = n_steps;
    summary.duration = static_cast<double>(n_steps) * h;

    if (cfg.method == "method1" || cfg.method == "method2") {
        OdeIntegrateOptions opt;
        opt.mix1 = cfg.mix1;
        opt.mix2 = cfg.mix2;
        opt.projection = cfg.proj;
        opt.mode = cfg.mode;
        opt.composition = composition_by_name(cfg.composition);
        opt.h = h;
        opt.n_steps = n_steps;
        opt.sample_every = stride;
        result.traj = integrate_ode(sys, ode_method_by_name(cfg.method), x0, 0.0, opt);
    } else if (cfg.method == "implicit-midpoint") {
        Trajectory traj;
        FieldFn field = [&sys](const Vec& x, double t) { return sys.field(x, t); };
        Vec x = x0;

        auto record = [&](long step, double t) {
            TrajectoryRow row;
            row.step = step;
            row.tau = t;
            row.t = t;
            row.state = x;
            row.invariant = std::numeric_limits<double>::quiet_NaN();
            row.evals = sys.counter().count();
            traj.rows.push_back(std::move(row));
        };

        record(0, 0.0);
        for (long i = 1; i <= n_steps; ++i) {
            const double t = static_cast<double>(i - 1) * h;
            x = implicit_midpoint_step(field, x, t, h);
            if (any_diverged(x)) {
                traj.diverged = true;
                traj.diagnostic = "divergence at step " + std::to_string(i);
                break;
            }
            if (i % stride == 0 || i == n_steps) record(i, static_cast<double>(i) * h);
        }
        result.traj = std::move(traj);
    } else if (cfg.method == "oracle") {
        FieldFn field = [&sys](const Vec& x, double t) { return sys.field(x, t); };
        std::vector<double> samples;
        for (long i = stride; i <= n_steps; i += stride) samples.push_back(static_cast<double>(i) * h);
        if (n_steps > 0 && (samples.empty() || samples.back() != summary.duration))
            samples.push_back(summary.duration);
        if (n_steps == 0) {
            Trajectory traj;
            TrajectoryRow row;
            row.state = x0;
            row.invariant = std::numeric_limits<double>::quiet_NaN();
            traj.rows.push_back(std::move(row));
            result.traj = std::move(traj);
        } else {
            result.traj = oracle_solve(field, x0, 0.0, summary.duration, cfg.oracle, samples, {},
                                       [&sys] { return sys.counter().count(); });
        }
        for (auto& row : result.traj.rows) row.step = std::lround(row.tau / h);
    } else {
        throw std::invalid_argument("run_vdp: unknown method " + cfg.method);
    }

    result.traj.state_labels = {"x", "y"};
    summary.evaluations = result.traj.rows.back().evals;
    summary.diverged = result.traj.diverged;
    summary.diagnostic = result.traj.diagnostic;
    summary.final_state = result.traj.rows.back().state;

    if (cfg.with_reference && n_steps > 0 && !result.traj.diverged) {
        problems::VdpSystem ref_sys(cfg.vdp);
        FieldFn ref_field = [&ref_sys](const Vec& x, double t) { return ref_sys.field(x, t); };
        const Trajectory ref =
            oracle_solve(ref_field, x0, 0.0, summary.duration, cfg.oracle, sampled_times(result.traj));
        append_reference_errors(result.traj, ref, {"x", "y"}, {1.0, 1.0}, summary);
    }
    return result;
}

}  // namespace xps::harness
