#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "xps/types.hpp"

namespace xps {

struct TrajectoryRow {
    long step = 0;
    double tau = 0.0;
    double t = 0.0;
    Vec state;               // projected coordinates (and momenta, when present)
    double invariant = 0.0;  // H for Hamiltonian runs, NaN otherwise
    std::uint64_t evals = 0; // cumulative vector-field evaluations in this run
};

struct Trajectory {
    std::vector<std::string> state_labels;
    std::vector<TrajectoryRow> rows;
    bool diverged = false;
    std::string diagnostic;

    const TrajectoryRow& back() const { return rows.back(); }
};

}  // namespace xps
