#include "xps/integrate.hpp"

#include <stdexcept>
#include <string>

namespace xps {

DriverMode driver_mode_by_name(std::string_view name) {
    if (name == "extended") return DriverMode::ExtendedPersistent;
    if (name == "project-each-step") return DriverMode::ProjectEachStep;
    throw std::invalid_argument("unknown driver mode: " + std::string(name));
}

void mixed_leapfrog_step(const HamiltonianSystem& sys, const SchemeSpec& scheme,
                         ExtendedState& s, double h, const LinearPhaseMap& m1,
                         const LinearPhaseMap& m2) {
    const std::size_t half = scheme.half_size();
    for (std::size_t i = 0; i < half; ++i)
        apply_operator(sys, scheme.sequence[i].op, s, scheme.sequence[i].fraction * h);
    if (!m1.is_identity()) s = apply_mixing(m1, s);
    for (std::size_t i = half; i < scheme.sequence.size(); ++i)
        apply_operator(sys, scheme.sequence[i].op, s, scheme.sequence[i].fraction * h);
    if (!m2.is_identity()) s = apply_mixing(m2, s);
}

namespace {

bool state_diverged(const ExtendedState& s) {
    return any_diverged(s.q) || any_diverged(s.qt) || any_diverged(s.p) || any_diverged(s.pt);
}

}  // namespace

Trajectory integrate(const HamiltonianSystem& sys, const SchemeSpec& scheme,
                     const PhaseState& start, const IntegrateOptions& opt) {
    if (opt.n_steps < 0) throw std::invalid_argument("integrate: negative step count");
    if (!std::isfinite(opt.h)) throw std::invalid_argument("integrate: non-finite step size");
    if (opt.projection.kind != MapKind::Projection)
        throw std::invalid_argument("integrate: output map must be a projection");
    opt.composition.validate();

    const std::uint64_t evals0 = sys.counter().count();
    const long stride = opt.sample_every > 0 ? opt.sample_every : 1;

    Trajectory traj;
    const int n = sys.dim();
    traj.state_labels.reserve(2 * static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) traj.state_labels.push_back("q" + std::to_string(i));
    for (int i = 0; i < n; ++i) traj.state_labels.push_back("p" + std::to_string(i));

    ExtendedState es = clone_up(start);

    auto record = [&](long step) {
        PhaseState ps = apply_projection(opt.projection, es);
        TrajectoryRow row;
        row.step = step;
        row.tau = es.tau;
        row.t = es.tau;
        row.state = ps.q;
        row.state.insert(row.state.end(), ps.p.begin(), ps.p.end());
        row.invariant = sys.value(ps.q, ps.p);
        row.evals = sys.counter().count() - evals0;
        traj.rows.push_back(std::move(row));
    };

    record(0);
    for (long i = 1; i <= opt.n_steps; ++i) {
        for (double g : opt.composition.gammas)
            mixed_leapfrog_step(sys, scheme, es, g * opt.h, opt.mix1, opt.mix2);
        es.tau = start.tau + static_cast<double>(i) * opt.h;
        if (state_diverged(es)) {
            traj.diverged = true;
            traj.diagnostic = "state component exceeded " +
                              std::to_string(kDivergenceThreshold) + " at step " +
                              std::to_string(i) + " (tau = " + std::to_string(es.tau) + ")";
            break;
        }
        if (opt.mode == DriverMode::ProjectEachStep) {
            PhaseState ps = apply_projection(opt.projection, es);
            es = clone_up(ps);
        }
        if (i % stride == 0 || i == opt.n_steps) record(i);
    }
    return traj;
}

}  // namespace xps
