#include <doctest.h>

#include <random>

#include "support.hpp"
#include "xps/integrate.hpp"
#include "xps/maps.hpp"
#include "xps/problems/schwarzschild.hpp"

using namespace xps;

namespace {

ExtendedState sample_state() {
    ExtendedState s;
    s.q = {1.0, 2.0};
    s.qt = {3.0, 4.0};
    s.p = {-1.0, 0.5};
    s.pt = {2.0, -2.0};
    return s;
}

}  // namespace

TEST_CASE("swap-momenta mixing permutes the momentum copies only") {
    const ExtendedState s = sample_state();
    const ExtendedState m = apply_mixing(preset("swap_momenta"), s);
    CHECK(m.q == s.q);
    CHECK(m.qt == s.qt);
    CHECK(m.p == s.pt);
    CHECK(m.pt == s.p);
}

TEST_CASE("identity mixing leaves the state untouched") {
    const ExtendedState s = sample_state();
    const ExtendedState m = apply_mixing(preset("identity"), s);
    CHECK(m.q == s.q);
    CHECK(m.qt == s.qt);
    CHECK(m.p == s.p);
    CHECK(m.pt == s.pt);
}

TEST_CASE("averaging mixing collapses both copies onto the mean") {
    const ExtendedState s = sample_state();
    const ExtendedState m = apply_mixing(preset("average"), s);
    for (std::size_t i = 0; i < 2; ++i) {
        CHECK(m.q[i] == doctest::Approx(0.5 * (s.q[i] + s.qt[i])).epsilon(1e-15));
        CHECK(m.q[i] == m.qt[i]);
        CHECK(m.p[i] == doctest::Approx(0.5 * (s.p[i] + s.pt[i])).epsilon(1e-15));
        CHECK(m.p[i] == m.pt[i]);
    }
}

TEST_CASE("P1 projection on a clone returns the original exactly") {
    const PhaseState s({0.3, -0.7}, {1.1, 0.2}, 3.0);
    const PhaseState back = apply_projection(preset("proj_primary_q_aux_p"), clone_up(s));
    CHECK(back.q == s.q);
    CHECK(back.p == s.p);
}

TEST_CASE("one-third/two-thirds projection preset carries the advertised weights") {
    const LinearPhaseMap m = preset("p_one_third_two_thirds");
    CHECK(m.kind == MapKind::Projection);
    CHECK(m.alpha_q == doctest::Approx(1.0 / 3.0).epsilon(1e-16));
    CHECK(m.alpha_p == doctest::Approx(2.0 / 3.0).epsilon(1e-16));
}

TEST_CASE("averaging projection interpolates linearly") {
    ExtendedState s = clone_up(PhaseState({1.0}, {0.0}));
    const double eps = 1e-3;
    s.qt[0] = s.q[0] + 2.0 * eps;
    const PhaseState out = apply_projection(preset("proj_average"), s);
    CHECK(out.q[0] == doctest::Approx(1.0 + eps).epsilon(1e-15));
}

TEST_CASE("preset lookup errors and kinds") {
    CHECK_THROWS_AS(preset("no_such_map"), std::invalid_argument);
    CHECK(preset("identity").is_identity());
    CHECK(preset("swap_momenta").alpha_q == 1.0);
    CHECK(preset("swap_momenta").alpha_p == 0.0);
    CHECK(preset("proj_aux_q_primary_p").alpha_q == 0.0);
    CHECK(preset("proj_aux_q_primary_p").alpha_p == 1.0);
}

TEST_CASE("kind mismatch is rejected") {
    const ExtendedState s = sample_state();
    CHECK_THROWS_AS(apply_mixing(preset("proj_average"), s), std::invalid_argument);
    CHECK_THROWS_AS(apply_projection(preset("average"), s), std::invalid_argument);
}

TEST_CASE("mixing presets with 0/1 weights are exact involutions") {
    for (const char* name : {"identity", "swap_momenta", "swap_coordinates", "swap_both"}) {
        const LinearPhaseMap m = preset(name);
        const ExtendedState s = sample_state();
        const ExtendedState twice = apply_mixing(m, apply_mixing(m, s));
        CHECK(twice.q == s.q);
        CHECK(twice.qt == s.qt);
        CHECK(twice.p == s.p);
        CHECK(twice.pt == s.pt);
    }
}

TEST_CASE("projections are idempotent on clones for random admissible weights") {
    std::mt19937 rng(99);
    std::uniform_real_distribution<double> coeff(-2.0, 2.0);
    for (int trial = 0; trial < 100; ++trial) {
        const PhaseState s({coeff(rng)}, {coeff(rng)});
        const LinearPhaseMap proj{coeff(rng), coeff(rng), MapKind::Projection};
        const PhaseState out = apply_projection(proj, clone_up(s));
        CHECK(out.q == s.q);
        CHECK(out.p == s.p);
    }
}

// Numerical realization of the leading-order energy-error analysis: two
// mixed steps of QP~Q~P from a cloned geodesic state, fitted in h.
namespace {

double delta_h_after_two_steps(const LinearPhaseMap& m1, const LinearPhaseMap& m2,
                               const LinearPhaseMap& proj, double h) {
    problems::SchwarzschildSystem sys({});
    const PhaseState start = problems::schwarzschild_initial_conditions({});
    const double h0 = sys.value(start.q, start.p);
    ExtendedState s = clone_up(start);
    const auto& scheme = scheme_by_name("qptqtp");
    mixed_leapfrog_step(sys, scheme, s, h, m1, m2);
    mixed_leapfrog_step(sys, scheme, s, h, m1, m2);
    const PhaseState out = apply_projection(proj, s);
    return std::abs(sys.value(out.q, out.p) - h0);
}

double delta_h_slope(const LinearPhaseMap& m1, const LinearPhaseMap& m2,
                     const LinearPhaseMap& proj) {
    const std::vector<double> hs = {1e-2, 5e-3, 2.5e-3, 1.25e-3};
    std::vector<double> lx, ly;
    for (double h : hs) {
        const double dh = delta_h_after_two_steps(m1, m2, proj, h);
        if (dh > 1e-14) {  // keep points above the state round-off floor
            lx.push_back(std::log(h));
            ly.push_back(std::log(dh));
        }
    }
    REQUIRE(lx.size() >= 2);
    return xps::test::linfit_slope(lx, ly);
}

}  // namespace

TEST_CASE("energy error order: identity mixing with (1/3, 2/3) projection") {
    const double slope =
        delta_h_slope(preset("identity"), preset("identity"), preset("p_one_third_two_thirds"));
    CHECK(slope >= 3.7);
}

TEST_CASE("energy error order: momentum permutation with coordinate permutation closer") {
    const double slope = delta_h_slope(preset("swap_momenta"), preset("swap_coordinates"),
                                       preset("proj_primary_q_aux_p"));
    CHECK(slope >= 2.7);
}

TEST_CASE("energy error order: generic interpolating maps") {
    const double slope =
        delta_h_slope(LinearPhaseMap{0.3, 0.8, MapKind::Mixing},
                      LinearPhaseMap{0.6, 0.2, MapKind::Mixing},
                      LinearPhaseMap{0.7, 0.4, MapKind::Projection});
    CHECK(slope >= 1.7);
}
