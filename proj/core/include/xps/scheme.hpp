#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "xps/system.hpp"
#include "xps/types.hpp"

namespace xps {

/// Component flows of the split extended Hamiltonian
/// H~ = H1(q, p~) + H2(q~, p) with H1 = H2 = H:
///   Q  advances q   by dt * grad_p H(q~, p)
///   Qt advances q~  by dt * grad_p H(q,  p~)
///   P  advances p   by -dt * grad_q H(q,  p~)
///   Pt advances p~  by -dt * grad_q H(q~, p)
/// H1 is the commuting pair Qt P applied together, H2 the pair Q Pt.
enum class OperatorTag { Q, Qt, P, Pt, H1, H2 };

struct OpFraction {
    OperatorTag op;
    double fraction;  // of the step size h
};

/// One symmetric second-order base step, stored as the full palindromic
/// operator sequence. Drivers insert the mixing maps between the two
/// halves and after the step.
struct SchemeSpec {
    std::string name;
    std::vector<OpFraction> sequence;

    static SchemeSpec symmetric(std::string name, std::array<OperatorTag, 4> half);

    std::size_t half_size() const { return sequence.size() / 2; }
    /// Gradient evaluations consumed by one base step.
    int evals_per_step() const;
};

/// The unique symmetric second-order leapfrogs on the doubled phase
/// space, up to commuting reorderings:
///   qtpqpt  (= H1(h/2) H2(h) H1(h/2), alias h1h2h1)
///   qptqtp  (= H2(h/2) H1(h) H2(h/2), alias h2h1h2)
///   qqtppt, qqtptp, pptqqt, pptqtq
const std::vector<SchemeSpec>& scheme_catalog();
const SchemeSpec& scheme_by_name(std::string_view name);  // throws on unknown name

void apply_operator(const HamiltonianSystem& sys, OperatorTag tag, ExtendedState& s, double dt);

// Single component flows, named by their action.
ExtendedState op_drift_q(const HamiltonianSystem& sys, ExtendedState s, double dt);
ExtendedState op_drift_qt(const HamiltonianSystem& sys, ExtendedState s, double dt);
ExtendedState op_kick_p(const HamiltonianSystem& sys, ExtendedState s, double dt);
ExtendedState op_kick_pt(const HamiltonianSystem& sys, ExtendedState s, double dt);

/// One base step of the given scheme with no mixing. Advances tau by h.
ExtendedState leapfrog_step(const HamiltonianSystem& sys, const SchemeSpec& scheme,
                            ExtendedState s, double h);

}  // namespace xps
