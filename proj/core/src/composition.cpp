#include "xps/composition.hpp"

#include <cmath>

namespace xps {

void CompositionScheme::validate() const {
    if (gammas.empty()) throw std::invalid_argument("composition: empty coefficient list");
    double sum = 0.0;
    for (double g : gammas) sum += g;
    if (std::abs(sum - 1.0) > 1e-15)
        throw std::invalid_argument("composition: coefficients must sum to 1");
    const std::size_t n = gammas.size();
    for (std::size_t i = 0; i < n; ++i)
        if (gammas[i] != gammas[n - 1 - i])
            throw std::invalid_argument("composition: coefficients must be palindromic");
}

CompositionScheme kahan6() {
    CompositionScheme s;
    s.name = "kahan6";
    const double g1 = 0.39216144400731413928;
    const double g2 = 0.33259913678935943860;
    const double g3 = -0.70624617255763935981;
    const double g4 = 0.082213596293550800230;
    const double g5 = 0.79854399093482996340;
    s.gammas = {g1, g2, g3, g4, g5, g4, g3, g2, g1};
    return s;
}

CompositionScheme composition_by_name(const std::string& name) {
    if (name == "none" || name.empty()) return CompositionScheme{};
    if (name == "kahan6") return kahan6();
    throw std::invalid_argument("unknown composition: " + name);
}

}  // namespace xps
