#pragma once

#include <functional>
#include <limits>

#include "xps/implicit_midpoint.hpp"
#include "xps/trajectory.hpp"
#include "xps/types.hpp"

namespace xps {

struct OracleConfig {
    double rel_tol = 1e-13;
    double abs_tol = 1e-15;
    double initial_step = 0.0;  // 0 = choose automatically
    long max_steps = 100000000;

    void validate() const;
};

/// High-accuracy truth solver: Dormand-Prince 5(4) embedded pair with
/// PI step-size control. Requested sample times are hit exactly by
/// clamping the step, so sampled values carry no interpolation error.
/// The returned trajectory has one row per sample time (t1 is always
/// sampled); the optional invariant_fn fills the invariant column and
/// evals_fn the cumulative-evaluation column.
Trajectory oracle_solve(const FieldFn& f, const Vec& x0, double t0, double t1,
                        const OracleConfig& cfg, const std::vector<double>& sample_times = {},
                        const std::function<double(const Vec&)>& invariant_fn = {},
                        const std::function<std::uint64_t()>& evals_fn = {});

/// Endpoint-only convenience wrapper.
Vec oracle_endpoint(const FieldFn& f, const Vec& x0, double t0, double t1,
                    const OracleConfig& cfg);

}  // namespace xps
