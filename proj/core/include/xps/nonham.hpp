#pragma once

#include "xps/composition.hpp"
#include "xps/integrate.hpp"
#include "xps/maps.hpp"
#include "xps/system.hpp"
#include "xps/trajectory.hpp"

namespace xps {

/// Doubled state for general first-order systems: time is promoted to a
/// coordinate pair (t, t~).
struct ExtendedODEState {
    Vec x, xt;
    double t = 0.0, tt = 0.0;
};

ExtendedODEState clone_up_ode(const Vec& x0, double t0);

enum class OdeMethod { Method1, Method2 };

OdeMethod ode_method_by_name(std::string_view name);  // "method1" | "method2"

/// Unpartitioned extended leapfrog:
///   x += h/2 f(x~, t~);  t += h/2
///   x~ += h  f(x,  t );  t~ += h
///   x += h/2 f(x~, t~);  t += h/2
/// Three field evaluations.
void method1_step(const FirstOrderSystem& sys, ExtendedODEState& s, double h);

/// Partitioned extended leapfrog (split at the system's partition
/// index): half-step (x, y~, t) from (x~, y, t~), full step
/// (x~, y, t~) from the midpoints, half-step (x, y~, t) to close.
/// Six component-field evaluations.
void method2_step(const FirstOrderSystem& sys, ExtendedODEState& s, double h);

/// Base step with mixing. An identity M1 keeps the merged middle
/// evaluations of the plain methods; otherwise the middle is split
/// around M1 so the step stays time-symmetric.
void mixed_ode_step(const FirstOrderSystem& sys, OdeMethod method, ExtendedODEState& s,
                    double h, const LinearPhaseMap& m1, const LinearPhaseMap& m2);

struct OdeIntegrateOptions {
    LinearPhaseMap mix1 = preset("identity");
    LinearPhaseMap mix2 = preset("identity");
    LinearPhaseMap projection{0.5, 0.5, MapKind::Projection};
    DriverMode mode = DriverMode::ProjectEachStep;
    CompositionScheme composition;
    double h = 0.0;
    long n_steps = 0;
    long sample_every = 1;
};

Trajectory integrate_ode(const FirstOrderSystem& sys, OdeMethod method, const Vec& x0,
                         double t0, const OdeIntegrateOptions& opt);

}  // namespace xps
