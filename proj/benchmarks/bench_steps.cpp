#include <benchmark/benchmark.h>

#include "xps/implicit_midpoint.hpp"
#include "xps/integrate.hpp"
#include "xps/nonham.hpp"
#include "xps/oracle.hpp"
#include "xps/problems/schwarzschild.hpp"
#include "xps/problems/vdp.hpp"

namespace {

using namespace xps;

void BM_LeapfrogStep(benchmark::State& state, const char* scheme_name) {
    problems::SchwarzschildSystem sys({});
    const auto& scheme = scheme_by_name(scheme_name);
    const double h = 0.02 * sys.params().orbital_period();
    ExtendedState s = clone_up(problems::schwarzschild_initial_conditions(sys.params()));
    for (auto _ : state) {
        s = leapfrog_step(sys, scheme, s, h);
        benchmark::DoNotOptimize(s.q[1]);
    }
}
BENCHMARK_CAPTURE(BM_LeapfrogStep, qptqtp, "qptqtp");
BENCHMARK_CAPTURE(BM_LeapfrogStep, qtpqpt, "qtpqpt");

void BM_MixedStep(benchmark::State& state) {
    problems::SchwarzschildSystem sys({});
    const auto& scheme = scheme_by_name("qptqtp");
    const double h = 0.02 * sys.params().orbital_period();
    const LinearPhaseMap m = preset("swap_momenta");
    ExtendedState s = clone_up(problems::schwarzschild_initial_conditions(sys.params()));
    for (auto _ : state) {
        mixed_leapfrog_step(sys, scheme, s, h, m, m);
        benchmark::DoNotOptimize(s.q[1]);
    }
}
BENCHMARK(BM_MixedStep);

void BM_ImplicitMidpointStep(benchmark::State& state) {
    problems::SchwarzschildSystem sys({});
    FieldFn field = hamiltonian_field(sys);
    const double h = 0.02 * sys.params().orbital_period();
    const PhaseState start = problems::schwarzschild_initial_conditions(sys.params());
    Vec z = start.q;
    z.insert(z.end(), start.p.begin(), start.p.end());
    double tau = 0.0;
    for (auto _ : state) {
        z = implicit_midpoint_step(field, z, tau, h);
        tau += h;
        benchmark::DoNotOptimize(z[1]);
    }
}
BENCHMARK(BM_ImplicitMidpointStep);

void BM_VdpMethod1Composited(benchmark::State& state) {
    problems::VdpSystem sys({});
    ExtendedODEState s = clone_up_ode({2.0, 2.0}, 0.0);
    const LinearPhaseMap m1 = preset("identity"), m2 = preset("swap_both");
    const CompositionScheme comp = kahan6();
    for (auto _ : state) {
        for (double g : comp.gammas) mixed_ode_step(sys, OdeMethod::Method1, s, g * 0.02, m1, m2);
        benchmark::DoNotOptimize(s.x[0]);
    }
}
BENCHMARK(BM_VdpMethod1Composited);

void BM_OracleShortArc(benchmark::State& state) {
    problems::SchwarzschildSystem sys({});
    FieldFn field = hamiltonian_field(sys);
    const PhaseState start = problems::schwarzschild_initial_conditions(sys.params());
    Vec z = start.q;
    z.insert(z.end(), start.p.begin(), start.p.end());
    OracleConfig cfg;
    cfg.rel_tol = 1e-10;
    cfg.abs_tol = 1e-12;
    const double arc = 0.1 * sys.params().orbital_period();
    for (auto _ : state) {
        Vec end = oracle_endpoint(field, z, 0.0, arc, cfg);
        benchmark::DoNotOptimize(end[1]);
    }
}
BENCHMARK(BM_OracleShortArc);

}  // namespace

BENCHMARK_MAIN();
