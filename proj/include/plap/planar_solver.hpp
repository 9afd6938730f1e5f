#pragma once

#include <vector>

#include "plap/core.hpp"
#include "plap/radial_solver.hpp"

namespace plap {

inline InitialSpec disk_cap_spec() {
  InitialSpec s;
  s.kind = InitialKind::DiskCap;
  return s;
}

struct PlanarRunConfig {
  PParams params{3.0, 0.01, 2};
  InitialSpec initial = disk_cap_spec();
  int marker_count = 128;  // initial count; reduced as the front shrinks
  double grid_spacing = 1.0 / 64.0;
  DtPolicy dt_policy{DtPolicy::Kind::Cfl, 0.9, 0.0};
  double t_max = 100.0;
  double extinction_threshold = 0.04;  // resolution-limited, see README
  int snapshot_every = 100;
  std::vector<double> sample_times;
  long max_steps = 50000000;
};

void validate(const PlanarRunConfig& cfg);

// Per-marker front data from the local least-squares fit.
struct MarkerFit {
  double speed = 0.0;     // inward normal speed
  double slope = 0.0;     // fitted |Df| at the front (unconstrained)
  double curvature = 0.0; // Menger curvature of the marker polygon
  int samples = 0;
};

// Inward speed from f_t = Delta_p^eps f at the front with |Df| = front_slope imposed;
// the normal second derivative comes from a fit over nearby nodes.
MarkerFit marker_fit(const PlanarState& s, int k, const PParams& params, double front_slope = 1.0);
double marker_normal_velocity(const PlanarState& s, int k, const PParams& params);

double planar_cfl_dt(const PlanarState& s, const PParams& params, double sigma);

struct PlanarStepResult {
  PlanarState state;
  StepStats stats;
  double max_speed = 0.0;
  double min_speed = 0.0;
};

PlanarStepResult step_planar(const PlanarState& s, double dt, const PParams& params, double front_slope = 1.0);
PlanarState step_planar_state(const PlanarState& s, double dt, const PParams& params);

// Divergence-form operator with cut-cell closure at every grid node (0 outside).
// Also returns the diagonal weight of the Dirichlet front terms.
void planar_operator(const PlanarState& s, const PParams& params, std::vector<double>& L,
                     std::vector<double>& front_diag);

// Node gradient with one-sided arms at the front.
Vec2 planar_node_gradient(const PlanarState& s, int i, int j);

// Largest eigenvalue of the 3x3-stencil Hessian over nodes whose full stencil is
// inside the front; -inf when no such node exists.
double planar_max_hessian_eigenvalue(const PlanarState& s);

Diagnostics planar_diagnostics(const PlanarState& s, const PParams& params, double front_slope = 1.0);

PlanarTrajectory solve_planar(const PlanarRunConfig& cfg);

std::optional<double> extinction_time(const PlanarTrajectory& traj, double threshold);

// Rotation by +90 degrees about the origin (exact on the symmetric grid).
PlanarState rotate90(const PlanarState& s);

}  // namespace plap
