#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "torusfhn/config.hpp"
#include "torusfhn/dynamics.hpp"

namespace torusfhn {

/// t, x_0_0, y_0_0, ... in row-major neuron order; torus #2 columns end in _t2.
std::vector<std::string> trajectory_header(int n, bool two_tori);

/// Shortest round-trip text for a double (17 significant digits at most).
std::string format_double(double v);

void write_trajectory_csv(std::ostream& os, const Trajectory& traj);
void write_trajectory_csv(const std::string& path, const Trajectory& traj);

/// Parses a CSV written by write_trajectory_csv and attaches cfg's settings and
/// system. Throws TrajectoryFormatError on any mismatch.
Trajectory read_trajectory_csv(std::istream& is, const RunConfig& cfg);
Trajectory read_trajectory_csv(const std::string& path, const RunConfig& cfg);

}  // namespace torusfhn
