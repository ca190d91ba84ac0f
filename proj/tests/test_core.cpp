#include <doctest.h>

#include <limits>
#include <random>

#include "support.hpp"
#include "xps/maps.hpp"
#include "xps/problems/harmonic.hpp"
#include "xps/problems/schwarzschild.hpp"
#include "xps/scheme.hpp"
#include "xps/system.hpp"

using namespace xps;

TEST_CASE("phase state validates shape and finiteness") {
    CHECK_THROWS_AS(PhaseState({1.0, 2.0}, {3.0}), std::invalid_argument);
    CHECK_THROWS_AS(PhaseState({}, {}), std::invalid_argument);
    const double inf = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(PhaseState({inf}, {0.0}), std::invalid_argument);
    const double nan = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(PhaseState({0.0}, {nan}), std::invalid_argument);
}

TEST_CASE("clone_up duplicates coordinates and momenta") {
    const ExtendedState e = clone_up(PhaseState({1.0, 2.0}, {3.0, 4.0}, 7.0));
    CHECK(e.q == Vec{1.0, 2.0});
    CHECK(e.qt == Vec{1.0, 2.0});
    CHECK(e.p == Vec{3.0, 4.0});
    CHECK(e.pt == Vec{3.0, 4.0});
    CHECK(e.tau == 7.0);
    CHECK(e.t == e.tt);
}

TEST_CASE("clone_up zero state") {
    const ExtendedState e = clone_up(PhaseState({0.0}, {0.0}));
    CHECK(e.q[0] == 0.0);
    CHECK(e.qt[0] == 0.0);
    CHECK(e.p[0] == 0.0);
    CHECK(e.pt[0] == 0.0);
}

TEST_CASE("clone_up of the geodesic start matches the quoted coordinates") {
    const PhaseState s = problems::schwarzschild_initial_conditions({});
    const ExtendedState e = clone_up(s);
    CHECK(e.q == Vec{0.0, 42.0, 0.0});
    CHECK(e.qt == Vec{0.0, 42.0, 0.0});
}

TEST_CASE("clone_up rejects non-finite input") {
    PhaseState s({1.0}, {1.0});
    s.q[0] = std::numeric_limits<double>::quiet_NaN();  // mutate past the constructor check
    CHECK_THROWS_AS(clone_up(s), std::invalid_argument);
}

TEST_CASE("gradient check accepts the harmonic oscillator") {
    problems::HarmonicOscillator sys;
    CHECK(check_gradients(sys, PhaseState({1.0}, {1.0}), 1e-6));
}

TEST_CASE("gradient check accepts schwarzschild at the experiment start") {
    problems::SchwarzschildSystem sys({});
    CHECK(check_gradients(sys, problems::schwarzschild_initial_conditions({}), 1e-6));
}

namespace {

// Harmonic oscillator with a deliberately wrong q-gradient.
class CorruptedSystem final : public HamiltonianSystem {
public:
    int dim() const override { return 1; }

protected:
    double do_value(const Vec& q, const Vec& p) const override {
        return 0.5 * (p[0] * p[0] + q[0] * q[0]);
    }
    Vec do_grad_q(const Vec& q, const Vec&) const override { return {q[0] + 0.1}; }
    Vec do_grad_p(const Vec&, const Vec& p) const override { return {p[0]}; }
};

}  // namespace

TEST_CASE("gradient check flags a corrupted gradient") {
    CorruptedSystem sys;
    CHECK_FALSE(check_gradients(sys, PhaseState({1.0}, {1.0}), 1e-6));
}

TEST_CASE("projection of a cloned state is the identity for any admissible weights") {
    std::mt19937 rng(2024);
    std::uniform_real_distribution<double> coeff(-1.5, 1.5);
    std::uniform_real_distribution<double> val(-10.0, 10.0);
    for (int trial = 0; trial < 200; ++trial) {
        const PhaseState s({val(rng), val(rng)}, {val(rng), val(rng)}, val(rng));
        const ExtendedState e = clone_up(s);
        const LinearPhaseMap proj{coeff(rng), coeff(rng), MapKind::Projection};
        const PhaseState back = apply_projection(proj, e);
        CHECK(back.q == s.q);  // exact: blending equal pairs is the identity
        CHECK(back.p == s.p);
        CHECK(back.tau == s.tau);
    }
}

TEST_CASE("evaluation counter counts exactly one bump per gradient call") {
    problems::HarmonicOscillator sys;
    const ExtendedState e = clone_up(PhaseState({1.0}, {0.5}));
    const auto& scheme = scheme_by_name("qptqtp");
    const std::uint64_t before = sys.counter().count();
    ExtendedState s = e;
    const long k = 17;
    for (long i = 0; i < k; ++i) s = leapfrog_step(sys, scheme, s, 0.01);
    CHECK(sys.counter().count() - before == static_cast<std::uint64_t>(k * 8));
    CHECK(scheme.evals_per_step() == 8);

    // value() is free of charge
    const std::uint64_t mid = sys.counter().count();
    (void)sys.value(s.q, s.p);
    CHECK(sys.counter().count() == mid);
}
