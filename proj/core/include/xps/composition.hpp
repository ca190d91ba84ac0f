#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "xps/types.hpp"

namespace xps {

/// Palindromic substep coefficients turning a symmetric second-order
/// base step into a higher-order method.
struct CompositionScheme {
    std::string name = "none";
    std::vector<double> gammas{1.0};

    bool is_single() const { return gammas.size() == 1 && gammas[0] == 1.0; }

    /// Throws unless the coefficients sum to 1 within 1e-15 and are
    /// exactly palindromic.
    void validate() const;
};

/// The 9-stage sixth-order coefficient set of Kahan and Li.
CompositionScheme kahan6();

CompositionScheme composition_by_name(const std::string& name);  // "none" | "kahan6"

/// Composed step: applies the base step with substep sizes gamma_i * h,
/// left to right.
template <class StepFn>
auto compose(StepFn base, CompositionScheme scheme) {
    if (scheme.gammas.empty()) throw std::invalid_argument("compose: empty coefficient list");
    return [base = std::move(base), scheme = std::move(scheme)](auto& state, double h) {
        for (double g : scheme.gammas) base(state, g * h);
    };
}

}  // namespace xps
