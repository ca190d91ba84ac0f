#include "xps/scheme.hpp"

#include <stdexcept>

namespace xps {

SchemeSpec SchemeSpec::symmetric(std::string name, std::array<OperatorTag, 4> half) {
    SchemeSpec s;
    s.name = std::move(name);
    s.sequence.reserve(8);
    for (OperatorTag op : half) s.sequence.push_back({op, 0.5});
    for (int i = 3; i >= 0; --i) s.sequence.push_back({half[static_cast<std::size_t>(i)], 0.5});
    return s;
}

int SchemeSpec::evals_per_step() const {
    int n = 0;
    for (const auto& of : sequence)
        n += (of.op == OperatorTag::H1 || of.op == OperatorTag::H2) ? 2 : 1;
    return n;
}

const std::vector<SchemeSpec>& scheme_catalog() {
    using enum OperatorTag;
    static const std::vector<SchemeSpec> catalog = {
        SchemeSpec::symmetric("qtpqpt", {Qt, P, Q, Pt}),
        SchemeSpec::symmetric("qptqtp", {Q, Pt, Qt, P}),
        SchemeSpec::symmetric("qqtppt", {Q, Qt, P, Pt}),
        SchemeSpec::symmetric("qqtptp", {Q, Qt, Pt, P}),
        SchemeSpec::symmetric("pptqqt", {P, Pt, Q, Qt}),
        SchemeSpec::symmetric("pptqtq", {P, Pt, Qt, Q}),
    };
    return catalog;
}

const SchemeSpec& scheme_by_name(std::string_view name) {
    // Aliases by the combined-flow spelling.
    if (name == "h1h2h1") name = "qtpqpt";
    if (name == "h2h1h2") name = "qptqtp";
    for (const auto& s : scheme_catalog())
        if (s.name == name) return s;
    throw std::invalid_argument("unknown scheme: " + std::string(name));
}

void apply_operator(const HamiltonianSystem& sys, OperatorTag tag, ExtendedState& s, double dt) {
    if (!std::isfinite(dt)) throw std::invalid_argument("apply_operator: non-finite dt");
    switch (tag) {
        case OperatorTag::Q:
            axpy(s.q, dt, sys.grad_p(s.qt, s.p));
            break;
        case OperatorTag::Qt:
            axpy(s.qt, dt, sys.grad_p(s.q, s.pt));
            break;
        case OperatorTag::P:
            axpy(s.p, -dt, sys.grad_q(s.q, s.pt));
            break;
        case OperatorTag::Pt:
            axpy(s.pt, -dt, sys.grad_q(s.qt, s.p));
            break;
        case OperatorTag::H1:  // commuting pair Qt P, one exact H1 flow
            apply_operator(sys, OperatorTag::Qt, s, dt);
            apply_operator(sys, OperatorTag::P, s, dt);
            break;
        case OperatorTag::H2:  // commuting pair Q Pt
            apply_operator(sys, OperatorTag::Q, s, dt);
            apply_operator(sys, OperatorTag::Pt, s, dt);
            break;
    }
}

ExtendedState op_drift_q(const HamiltonianSystem& sys, ExtendedState s, double dt) {
    apply_operator(sys, OperatorTag::Q, s, dt);
    return s;
}

ExtendedState op_drift_qt(const HamiltonianSystem& sys, ExtendedState s, double dt) {
    apply_operator(sys, OperatorTag::Qt, s, dt);
    return s;
}

ExtendedState op_kick_p(const HamiltonianSystem& sys, ExtendedState s, double dt) {
    apply_operator(sys, OperatorTag::P, s, dt);
    return s;
}

ExtendedState op_kick_pt(const HamiltonianSystem& sys, ExtendedState s, double dt) {
    apply_operator(sys, OperatorTag::Pt, s, dt);
    return s;
}

ExtendedState leapfrog_step(const HamiltonianSystem& sys, const SchemeSpec& scheme,
                            ExtendedState s, double h) {
    for (const auto& of : scheme.sequence) apply_operator(sys, of.op, s, of.fraction * h);
    s.tau += h;
    return s;
}

}  // namespace xps
