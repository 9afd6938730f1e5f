#pragma once

#include <ostream>
#include <string>

#include "plap/config.hpp"

namespace plap {

// 17 significant digits; round-trips every double.
std::string format_double(double v);

// snap_<k>.csv (t,r,f) plus diagnostics.json.
void write_radial_trajectory(const std::string& dir, const RadialTrajectory& traj, double front_slope);
// snap_<k>.csv (t,x,y,f; positive nodes only), front_<k>.csv (t,x,y) plus diagnostics.json
// with the grid geometry.
void write_planar_trajectory(const std::string& dir, const PlanarTrajectory& traj, double front_slope);

// Diagnostics are recomputed from the states; status and step statistics come
// from diagnostics.json.
RadialTrajectory read_radial_trajectory(const std::string& dir);
PlanarTrajectory read_planar_trajectory(const std::string& dir, const PParams& params);
// "radial" or "planar", from diagnostics.json.
std::string trajectory_kind(const std::string& dir);

// Runs the configured mode and writes its files into cfg.output_dir.
// Returns the exit status: 0 success, 2 verification failure, 3 solver error,
// 4 configuration error. Failures also leave error.json behind.
int run_and_emit(const RunConfig& cfg, std::ostream& log, bool quiet = false);

// error.json for failures that happen before a run starts.
void write_error_json(const std::string& dir, const Error& e);

}  // namespace plap
