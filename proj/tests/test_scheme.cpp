#include <doctest.h>

#include <random>

#include "support.hpp"
#include "xps/integrate.hpp"
#include "xps/oracle.hpp"
#include "xps/problems/harmonic.hpp"
#include "xps/problems/schwarzschild.hpp"
#include "xps/scheme.hpp"
#include "xps/stormer_verlet.hpp"

using namespace xps;
using xps::test::max_abs_diff;

namespace {

ExtendedState harmonic_state(double q, double qt, double p, double pt) {
    ExtendedState s;
    s.q = {q};
    s.qt = {qt};
    s.p = {p};
    s.pt = {pt};
    return s;
}

}  // namespace

TEST_CASE("drift on q reads the auxiliary coordinate copy and the primary momentum") {
    problems::HarmonicOscillator sys;
    const ExtendedState s = harmonic_state(0.0, 0.0, 1.0, 1.0);
    const ExtendedState out = op_drift_q(sys, s, 0.5);
    CHECK(out.q[0] == 0.5);
    CHECK(out.qt[0] == 0.0);
    CHECK(out.p[0] == 1.0);
    CHECK(out.pt[0] == 1.0);
}

TEST_CASE("zero step size is the identity on every operator") {
    problems::HarmonicOscillator sys;
    const ExtendedState s = harmonic_state(0.3, -0.2, 0.9, 1.4);
    for (OperatorTag tag : {OperatorTag::Q, OperatorTag::Qt, OperatorTag::P, OperatorTag::Pt}) {
        ExtendedState out = s;
        apply_operator(sys, tag, out, 0.0);
        CHECK(out.q[0] == s.q[0]);
        CHECK(out.qt[0] == s.qt[0]);
        CHECK(out.p[0] == s.p[0]);
        CHECK(out.pt[0] == s.pt[0]);
    }
}

TEST_CASE("q-drift at the geodesic apocentre leaves r untouched") {
    // p_r = 0 and the metric is diagonal, so dH/dp_r vanishes there.
    problems::SchwarzschildSystem sys({});
    const double h = 0.02 * sys.params().orbital_period();
    const ExtendedState s = clone_up(problems::schwarzschild_initial_conditions({}));
    const ExtendedState out = op_drift_q(sys, s, 0.5 * h);
    CHECK(out.q[1] == s.q[1]);
    CHECK(out.q[0] != s.q[0]);  // coordinate time does advance
}

TEST_CASE("kick on p decreases the momentum by the coordinate gradient") {
    problems::HarmonicOscillator sys;
    const ExtendedState s = harmonic_state(1.0, 1.0, 0.0, 0.0);
    const ExtendedState out = op_kick_p(sys, s, 1.0);
    CHECK(out.p[0] == -1.0);
    CHECK(out.pt[0] == 0.0);
}

TEST_CASE("kick on the auxiliary momentum with zero step is the identity") {
    problems::HarmonicOscillator sys;
    const ExtendedState s = harmonic_state(0.2, 0.4, 0.6, 0.8);
    const ExtendedState out = op_kick_pt(sys, s, 0.0);
    CHECK(out.pt[0] == s.pt[0]);
}

TEST_CASE("commuting pairs produce bitwise identical states in either order") {
    problems::SchwarzschildSystem sys({});
    ExtendedState s = clone_up(problems::schwarzschild_initial_conditions({}));
    s.qt[1] += 0.5;  // desynchronize the copies
    s.pt[0] -= 0.01;
    const double dt = 3.7;

    ExtendedState a = s, b = s;
    apply_operator(sys, OperatorTag::Q, a, dt);
    apply_operator(sys, OperatorTag::Pt, a, dt);
    apply_operator(sys, OperatorTag::Pt, b, dt);
    apply_operator(sys, OperatorTag::Q, b, dt);
    CHECK(a.q == b.q);
    CHECK(a.qt == b.qt);
    CHECK(a.p == b.p);
    CHECK(a.pt == b.pt);

    ExtendedState c = s, d = s;
    apply_operator(sys, OperatorTag::Qt, c, dt);
    apply_operator(sys, OperatorTag::P, c, dt);
    apply_operator(sys, OperatorTag::P, d, dt);
    apply_operator(sys, OperatorTag::Qt, d, dt);
    CHECK(c.qt == d.qt);
    CHECK(c.p == d.p);
}

TEST_CASE("combined H1 flow equals its commuting factors in either order") {
    problems::HarmonicOscillator sys;
    ExtendedState s = harmonic_state(0.1, 0.9, -0.3, 0.7);
    ExtendedState via_h1 = s;
    apply_operator(sys, OperatorTag::H1, via_h1, 0.25);
    ExtendedState via_factors = s;
    apply_operator(sys, OperatorTag::P, via_factors, 0.25);
    apply_operator(sys, OperatorTag::Qt, via_factors, 0.25);
    CHECK(via_h1.qt == via_factors.qt);
    CHECK(via_h1.p == via_factors.p);
}

TEST_CASE("scheme catalog carries palindromic unit-total sequences") {
    for (const auto& scheme : scheme_catalog()) {
        REQUIRE(scheme.sequence.size() == 8);
        const std::size_t n = scheme.sequence.size();
        double per_op[4] = {0, 0, 0, 0};
        for (std::size_t i = 0; i < n; ++i) {
            CHECK(scheme.sequence[i].op == scheme.sequence[n - 1 - i].op);
            CHECK(scheme.sequence[i].fraction == scheme.sequence[n - 1 - i].fraction);
            per_op[static_cast<int>(scheme.sequence[i].op)] += scheme.sequence[i].fraction;
        }
        for (double total : per_op) CHECK(total == 1.0);  // each variable advances h per step
    }
    CHECK_THROWS_AS(scheme_by_name("qqqq"), std::invalid_argument);
    CHECK(&scheme_by_name("h1h2h1") == &scheme_by_name("qtpqpt"));
    CHECK(&scheme_by_name("h2h1h2") == &scheme_by_name("qptqtp"));
}

TEST_CASE("one base step tracks the exact rotation to local third order") {
    problems::HarmonicOscillator sys;
    const double h = 0.1;
    const ExtendedState s = clone_up(PhaseState({1.0}, {0.0}));
    const ExtendedState out = leapfrog_step(sys, scheme_by_name("qtpqpt"), s, h);
    CHECK(std::abs(out.q[0] - std::cos(h)) <= 1e-4);
}

TEST_CASE("zero step size is the identity for every catalog scheme") {
    problems::HarmonicOscillator sys;
    const ExtendedState s = harmonic_state(0.4, 0.3, 0.2, 0.1);
    for (const auto& scheme : scheme_catalog()) {
        const ExtendedState out = leapfrog_step(sys, scheme, s, 0.0);
        CHECK(out.q == s.q);
        CHECK(out.qt == s.qt);
        CHECK(out.p == s.p);
        CHECK(out.pt == s.pt);
    }
}

TEST_CASE("base steps are reversible to round-off") {
    problems::SchwarzschildSystem sys({});
    const ExtendedState s = clone_up(problems::schwarzschild_initial_conditions({}));
    const double h = 0.02 * sys.params().orbital_period();
    for (const auto& scheme : scheme_catalog()) {
        ExtendedState out = leapfrog_step(sys, scheme, s, h);
        out = leapfrog_step(sys, scheme, out, -h);
        const double scale = 42.0;
        CHECK(max_abs_diff(out.q, s.q) / scale <= 1e-12);
        CHECK(max_abs_diff(out.p, s.p) <= 1e-12);
    }
}

TEST_CASE("copy pairs evolve identically from a clone at small step") {
    problems::HarmonicOscillator sys;
    const double h = 1e-4;
    const ExtendedState s = clone_up(PhaseState({1.0}, {1.0}));
    for (const auto& scheme : scheme_catalog()) {
        const ExtendedState out = leapfrog_step(sys, scheme, s, h);
        CHECK(std::abs(out.q[0] - out.qt[0]) <= 1e-12);
        CHECK(std::abs(out.p[0] - out.pt[0]) <= 1e-12);
    }
}

TEST_CASE("stormer-verlet kick-drift-kick on the harmonic oscillator") {
    problems::HarmonicOscillator sys;
    const GradFn grad_T = [&](const Vec& p) { return sys.grad_T(p); };
    const GradFn grad_V = [&](const Vec& q) { return sys.grad_V(q); };
    const PhaseState s({1.0}, {0.0});

    // Hand evaluation: p_half = -0.05, q1 = 1 - 0.005, p1 = -0.05 - 0.05*0.995.
    const PhaseState out = stormer_verlet_step(grad_T, grad_V, s, 0.1);
    CHECK(out.q[0] == doctest::Approx(0.995).epsilon(1e-15));
    CHECK(out.p[0] == doctest::Approx(-0.09975).epsilon(1e-15));

    const PhaseState id = stormer_verlet_step(grad_T, grad_V, s, 0.0);
    CHECK(id.q[0] == s.q[0]);
    CHECK(id.p[0] == s.p[0]);

    const PhaseState back = stormer_verlet_step(grad_T, grad_V, out, -0.1);
    CHECK(back.q[0] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(back.p[0] == doctest::Approx(0.0).scale(1.0).epsilon(1e-14));
}

TEST_CASE("stormer-verlet energy error stays second order") {
    problems::HarmonicOscillator sys;
    const GradFn grad_T = [&](const Vec& p) { return sys.grad_T(p); };
    const GradFn grad_V = [&](const Vec& q) { return sys.grad_V(q); };
    std::vector<double> hs = {0.2, 0.1, 0.05}, errs;
    for (double h : hs) {
        PhaseState s({1.0}, {0.0});
        const long n = std::lround(10.0 / h);
        double worst = 0.0;
        for (long i = 0; i < n; ++i) {
            s = stormer_verlet_step(grad_T, grad_V, s, h);
            worst = std::max(worst, std::abs(sys.value(s.q, s.p) - 0.5));
        }
        errs.push_back(worst);
    }
    CHECK(xps::test::loglog_slope(hs, errs) == doctest::Approx(2.0).epsilon(0.2));
}

TEST_CASE("integrate: evaluation count of the ten-orbit geodesic run") {
    problems::SchwarzschildSystem sys({});
    IntegrateOptions opt;
    opt.mix1 = preset("swap_momenta");
    opt.mix2 = preset("swap_momenta");
    opt.projection = preset("proj_primary_q_aux_p");
    opt.h = 0.02 * sys.params().orbital_period();
    opt.n_steps = 500;
    opt.sample_every = 50;
    const Trajectory traj = integrate(sys, scheme_by_name("qptqtp"),
                                      problems::schwarzschild_initial_conditions({}), opt);
    CHECK_FALSE(traj.diverged);
    // Table value 3.9e3, within ten percent.
    CHECK(traj.rows.back().evals == 4000);
    CHECK(std::abs(static_cast<double>(traj.rows.back().evals) - 3.9e3) <= 0.1 * 3.9e3);
}

TEST_CASE("integrate: a single plain step plus trivial projection equals leapfrog_step") {
    problems::HarmonicOscillator sys;
    const PhaseState start({0.7}, {-0.4});
    IntegrateOptions opt;
    opt.projection = LinearPhaseMap{1.0, 1.0, MapKind::Projection};
    opt.h = 0.05;
    opt.n_steps = 1;
    const Trajectory traj = integrate(sys, scheme_by_name("qqtppt"), start, opt);

    const ExtendedState direct = leapfrog_step(sys, scheme_by_name("qqtppt"), clone_up(start), opt.h);
    CHECK(traj.rows.back().state[0] == direct.q[0]);
    CHECK(traj.rows.back().state[1] == direct.p[0]);
}

TEST_CASE("integrate: harmonic energy error is bounded with no secular trend") {
    problems::HarmonicOscillator sys;
    IntegrateOptions opt;
    opt.projection = preset("proj_primary_q_aux_p");
    opt.h = 0.01;
    opt.n_steps = 1000;
    const Trajectory traj = integrate(sys, scheme_by_name("qtpqpt"), PhaseState({1.0}, {0.0}), opt);
    REQUIRE_FALSE(traj.diverged);

    std::vector<double> steps, env;
    double running = 0.0;
    for (const auto& row : traj.rows) {
        running = std::max(running, std::abs(row.invariant - 0.5));
        steps.push_back(static_cast<double>(row.step));
        env.push_back(running);
    }
    CHECK(running < 1e-4);
    const std::size_t half = steps.size() / 2;
    const double slope = xps::test::linfit_slope(
        std::vector<double>(steps.begin() + half, steps.end()),
        std::vector<double>(env.begin() + half, env.end()));
    CHECK(std::abs(slope) < 1e-10);
}

TEST_CASE("integrate: mixed-step reversibility for involutive mid-step maps") {
    problems::SchwarzschildSystem sys({});
    const ExtendedState start = clone_up(problems::schwarzschild_initial_conditions({}));
    const double h = 0.02 * sys.params().orbital_period();
    const LinearPhaseMap identity = preset("identity");
    for (const auto& scheme : scheme_catalog()) {
        for (const char* m1_name : {"identity", "swap_momenta", "swap_coordinates", "swap_both"}) {
            const LinearPhaseMap m1 = preset(m1_name);
            ExtendedState s = start;
            mixed_leapfrog_step(sys, scheme, s, h, m1, identity);
            mixed_leapfrog_step(sys, scheme, s, -h, m1, identity);
            CHECK(max_abs_diff(s.q, start.q) / 42.0 <= 1e-12);
            CHECK(max_abs_diff(s.qt, start.qt) / 42.0 <= 1e-12);
            CHECK(max_abs_diff(s.p, start.p) / 4.6 <= 1e-12);
            CHECK(max_abs_diff(s.pt, start.pt) / 4.6 <= 1e-12);
        }
    }
}

TEST_CASE("integrate: divergence is detected and reported with the last valid step") {
    // Uncoupled copies of a chaotic-free but unstable situation: use a
    // runaway cubic oscillator H = p^2/2 - q^4/4 whose orbits escape.
    class Runaway final : public HamiltonianSystem {
    public:
        int dim() const override { return 1; }

    protected:
        double do_value(const Vec& q, const Vec& p) const override {
            return 0.5 * p[0] * p[0] - 0.25 * q[0] * q[0] * q[0] * q[0];
        }
        Vec do_grad_q(const Vec& q, const Vec&) const override {
            return {-q[0] * q[0] * q[0]};
        }
        Vec do_grad_p(const Vec&, const Vec& p) const override { return {p[0]}; }
    };
    Runaway sys;
    IntegrateOptions opt;
    opt.projection = preset("proj_primary_q_aux_p");
    opt.h = 0.5;
    opt.n_steps = 10000;
    opt.sample_every = 1;
    const Trajectory traj = integrate(sys, scheme_by_name("qtpqpt"), PhaseState({2.0}, {2.0}), opt);
    CHECK(traj.diverged);
    CHECK_FALSE(traj.diagnostic.empty());
    CHECK(traj.rows.size() >= 1);
    for (const auto& row : traj.rows) CHECK(std::abs(row.state[0]) <= kDivergenceThreshold);
}

TEST_CASE("extended-space symplecticity of the h1h2h1 step on the harmonic oscillator") {
    problems::HarmonicOscillator sys;
    const double h = 0.1;
    auto step_map = [&](const Vec& z) {
        ExtendedState s;
        s.q = {z[0]};
        s.qt = {z[1]};
        s.p = {z[2]};
        s.pt = {z[3]};
        const ExtendedState out = leapfrog_step(sys, scheme_by_name("qtpqpt"), s, h);
        return Vec{out.q[0], out.qt[0], out.p[0], out.pt[0]};
    };
    const Vec z0 = {1.0, 1.0, 0.5, 0.5};
    CHECK(xps::test::symplectic_residual(xps::test::fd_jacobian(step_map, z0)) <= 1e-6);
}
