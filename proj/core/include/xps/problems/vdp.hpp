#pragma once

#include "xps/system.hpp"
#include "xps/types.hpp"

namespace xps::problems {

struct VdpParams {
    double mu = 5.0;
    double A = 5.0;
    double P_force = 2.0 * 3.14159265358979323846 / 2.463;

    void validate() const;
};

/// Forced van der Pol oscillator, partitioned at k = 1:
///   x' = y
///   y' = mu (1 - x^2) y - x + A cos(2 pi t / P_force)
class VdpSystem final : public FirstOrderSystem {
public:
    explicit VdpSystem(VdpParams params);

    int dim() const override { return 2; }
    std::optional<int> partition() const override { return 1; }
    const VdpParams& params() const { return params_; }

protected:
    Vec do_field(const Vec& x, double t) const override;

private:
    VdpParams params_;
};

}  // namespace xps::problems
