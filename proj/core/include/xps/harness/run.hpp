#pragma once

#include <map>
#include <optional>
#include <string>

#include "xps/integrate.hpp"
#include "xps/nonham.hpp"
#include "xps/oracle.hpp"
#include "xps/problems/schwarzschild.hpp"
#include "xps/problems/vdp.hpp"
#include "xps/trajectory.hpp"

namespace xps::harness {

/// A fully specified experiment. Geodesic runs interpret h as a
/// fraction of the orbital period P and duration in orbits; van der Pol
/// runs use plain problem units.
struct ExperimentConfig {
    std::string problem = "schwarzschild";  // schwarzschild | vdp
    std::string method = "extended";  // extended | method1 | method2 | implicit-midpoint | oracle
    std::string scheme = "qptqtp";
    std::string composition = "none";  // none | kahan6
    LinearPhaseMap mix1 = preset("identity");
    LinearPhaseMap mix2 = preset("identity");
    LinearPhaseMap proj = preset("proj_primary_q_aux_p");
    DriverMode mode = DriverMode::ExtendedPersistent;
    double h = 0.02;        // fraction of P (geodesic) or time units (vdp)
    double orbits = 10.0;   // geodesic duration in periods
    double t_end = 500.0;   // vdp duration
    long sample_every = 1;
    std::string out;  // output base path; empty = no files
    OracleConfig oracle;
    unsigned seed = 12345;
    bool with_reference = false;  // add error-vs-oracle columns

    problems::SchwarzschildParams geodesic;
    problems::VdpParams vdp;

    /// Defaults the paper's experiments use for the given problem:
    /// geodesic: QP~Q~P, swap-momenta mixing, P1 projection, extended mode;
    /// vdp: kahan6 composition, project-each-step, averaging projection,
    /// M2 = swap_both.
    static ExperimentConfig geodesic_defaults();
    static ExperimentConfig vdp_defaults();
};

struct RunSummary {
    std::string problem, method;
    long n_steps = 0;
    double h = 0.0;
    double duration = 0.0;
    std::uint64_t evaluations = 0;
    double max_abs_dH = 0.0;        // geodesic only
    double max_abs_err = 0.0;       // vs oracle, when with_reference
    double final_err = 0.0;         // vs oracle at the last sample
    Vec final_state;
    bool diverged = false;
    std::string diagnostic;
};

struct RunResult {
    Trajectory traj;
    RunSummary summary;
};

/// Schwarzschild geodesic experiment. The trajectory carries
/// (t, r, phi, p_t, p_r, p_phi) plus the xy orbit columns; with
/// with_reference set, normalized coordinate errors against the truth
/// solver (dt/P, dr/((1+e)a), dphi/2pi) and their running max are
/// appended.
RunResult run_geodesic(const ExperimentConfig& cfg);

/// Forced van der Pol experiment; with_reference adds per-coordinate
/// errors against the truth solver and their running max.
RunResult run_vdp(const ExperimentConfig& cfg);

}  // namespace xps::harness
