#pragma once

#include "xps/composition.hpp"
#include "xps/maps.hpp"
#include "xps/scheme.hpp"
#include "xps/trajectory.hpp"

namespace xps {

/// How the doubled state is carried between steps.
///   ExtendedPersistent: the extended state evolves untouched; the
///     projection map only produces output samples.
///   ProjectEachStep: after every (possibly composited) step the state
///     is projected and re-cloned.
enum class DriverMode { ExtendedPersistent, ProjectEachStep };

DriverMode driver_mode_by_name(std::string_view name);  // "extended" | "project-each-step"

struct IntegrateOptions {
    LinearPhaseMap mix1 = preset("identity");
    LinearPhaseMap mix2 = preset("identity");
    LinearPhaseMap projection = preset("proj_primary_q_aux_p");
    DriverMode mode = DriverMode::ExtendedPersistent;
    CompositionScheme composition;  // default: plain base step
    double h = 0.0;
    long n_steps = 0;
    long sample_every = 1;
};

/// One base step with mixing: first half-palindrome, M1, second
/// half-palindrome, M2.
void mixed_leapfrog_step(const HamiltonianSystem& sys, const SchemeSpec& scheme,
                         ExtendedState& s, double h, const LinearPhaseMap& m1,
                         const LinearPhaseMap& m2);

/// Fixed-step extended-phase-space integration. Samples every
/// sample_every-th step (plus the initial and final state). On
/// divergence the trajectory ends at the last valid step with the
/// diagnostic filled in.
Trajectory integrate(const HamiltonianSystem& sys, const SchemeSpec& scheme,
                     const PhaseState& start, const IntegrateOptions& opt);

}  // namespace xps
