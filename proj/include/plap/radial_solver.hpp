#pragma once

#include <optional>
#include <vector>

#include "plap/core.hpp"

namespace plap {

struct DtPolicy {
  enum class Kind { Cfl, Fixed } kind = Kind::Cfl;
  double sigma = 0.4;
  double dt = 0.0;
};

struct RadialRunConfig {
  PParams params;
  InitialSpec initial;
  int N = 201;
  DtPolicy dt_policy;
  double t_max = 100.0;
  double extinction_threshold = 1e-4;
  int snapshot_every = 100;
  // Extra snapshot times hit exactly by shortening the step before them.
  std::vector<double> sample_times;
  bool semi_implicit = false;
  long max_steps = 200000000;
};

void validate(const RadialRunConfig& cfg);

double cfl_dt(const RadialState& s, const PParams& params, double sigma);

struct RadialStepResult {
  RadialState state;
  StepStats stats;
  double front_velocity = 0.0;
};

struct StepOptions {
  double front_slope = 1.0;
  bool semi_implicit = false;
};

// One time step: interior update on the current grid, front move, remap.
RadialStepResult step_radial(const RadialState& s, double dt, const PParams& params,
                             const StepOptions& opt = {});

// Convenience overload returning the state only.
RadialState step_radial_state(const RadialState& s, double dt, const PParams& params);

// Discrete divergence-form operator at the nodes of the current grid (front node 0).
std::vector<double> radial_operator(const RadialState& s, const PParams& params);

Diagnostics radial_diagnostics(const RadialState& s, double front_slope = 1.0);

RadialTrajectory solve_radial(const RadialRunConfig& cfg);

std::optional<double> extinction_time(const RadialTrajectory& traj, double threshold);

}  // namespace plap
