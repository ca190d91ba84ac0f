#pragma once

#include <functional>
#include <vector>

#include "xps/trajectory.hpp"
#include "xps/types.hpp"

namespace xps::harness {

/// Least-squares slope of y over x.
double fit_slope(const std::vector<double>& x, const std::vector<double>& y);

struct ConvergencePoint {
    double h = 0.0;
    double error = 0.0;
    bool used = true;  // false when the error sits at the round-off floor
};

struct ConvergenceResult {
    std::vector<ConvergencePoint> points;
    double slope = 0.0;  // log-log fit over the used points
    int n_used = 0;
};

/// Endpoint-error order fit. runner(h) returns the endpoint state for
/// step size h; reference is the truth endpoint. Errors below floor are
/// flagged and excluded from the fit. Needs at least three step sizes
/// and at least two points above the floor.
ConvergenceResult convergence_study(const std::function<Vec(double)>& runner,
                                    const Vec& reference, const std::vector<double>& hs,
                                    double floor = 0.0);

struct PrecessionResult {
    double mean_delta_omega = 0.0;
    double std_delta_omega = 0.0;
    int n_pericenters = 0;
    std::vector<double> passages;  // per-passage phi advance minus 2 pi
};

/// Pericenter detection on a geodesic trajectory (state columns
/// t, r, phi, ...): discrete local minima of r refined by a quadratic
/// fit through the bracketing triple, with phi interpolated at the
/// refined parameter. Requires at least three pericenter passages.
PrecessionResult precession_study(const Trajectory& traj);

struct DriftResult {
    double slope_per_step = 0.0;   // linear fit of the envelope over the run's second half
    double loglog_exponent = 0.0;  // power-law fit of the envelope over the second half
    double growth_ratio = 1.0;     // envelope(end) / envelope(mid)
    std::vector<double> envelope;  // running max of the input series
};

/// Secular-trend analysis of an error series sampled at the given step
/// indices. Requires at least 100 samples.
DriftResult drift_study(const std::vector<double>& step_index, const std::vector<double>& series);

/// |H - H_ref| series from a trajectory's invariant column.
std::vector<double> abs_invariant_error(const Trajectory& traj, double h_ref);

}  // namespace xps::harness
