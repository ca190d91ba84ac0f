#pragma once

#include <string>

#include "xps/harness/run.hpp"
#include "xps/trajectory.hpp"

namespace xps::harness {

/// CSV with a header row; values printed with 17 significant digits for
/// lossless round-trips. Output is deterministic for a given trajectory.
std::string trajectory_to_csv(const Trajectory& traj);
void write_trajectory_csv(const std::string& path, const Trajectory& traj);
Trajectory read_trajectory_csv(const std::string& path);

std::string summary_to_json(const RunSummary& summary);
void write_summary_json(const std::string& path, const RunSummary& summary);

}  // namespace xps::harness
