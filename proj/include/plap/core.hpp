#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "plap/error.hpp"

namespace plap {

// Problem parameters. q = p/2 is derived, never stored.
struct PParams {
  double p = 3.0;
  double epsilon = 0.0;
  int n = 1;

  double q() const { return 0.5 * p; }
};

// Throws RangeError unless p > 2, epsilon >= 0 and n >= 1.
PParams make_params(double p, double epsilon, int n);
void validate(const PParams& params);

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  double operator[](int i) const { return i == 0 ? x : y; }
  double& operator[](int i) { return i == 0 ? x : y; }
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }

// Radially symmetric state on the front-fixed grid r_i = i/(N-1) * R.
// heights[N-1] is the front node and is always 0.
struct RadialState {
  double time = 0.0;
  double front_radius = 1.0;
  std::vector<double> heights;

  int size() const { return static_cast<int>(heights.size()); }
  double spacing() const { return front_radius / (size() - 1); }
  double radius(int i) const { return front_radius * (static_cast<double>(i) / (size() - 1)); }
};

// Node values on a uniform grid whose node (i, j) sits at ((i + ix0) h, (j + iy0) h).
// Integer offsets keep coordinates exactly symmetric under sign flips.
struct GridField2D {
  int nx = 0;
  int ny = 0;
  int ix0 = 0;
  int iy0 = 0;
  double h = 0.0;
  std::vector<double> v;

  double x(int i) const { return (i + ix0) * h; }
  double y(int j) const { return (j + iy0) * h; }
  Vec2 node(int i, int j) const { return {x(i), y(j)}; }
  double& at(int i, int j) { return v[static_cast<std::size_t>(j) * nx + i]; }
  double at(int i, int j) const { return v[static_cast<std::size_t>(j) * nx + i]; }
  bool in_range(int i, int j) const { return i >= 0 && j >= 0 && i < nx && j < ny; }
};

// Convex front given by counter-clockwise markers plus the height field.
// Nodes outside the marker polygon carry 0.
struct PlanarState {
  double time = 0.0;
  std::vector<Vec2> markers;
  GridField2D field;
};

// Non-degeneracy bounds: B_{r_in} is inside the positivity set, which is inside
// B_{R_out}, and f >= m on B_{r_in}.
struct GeometryBounds {
  double r_in = 0.0;
  double R_out = 0.0;
  double m = 0.0;
};

void validate(const GeometryBounds& b);

struct Diagnostics {
  double time = 0.0;
  double sup_grad = 0.0;
  double neumann_residual = 0.0;
  double concavity_violation = 0.0;
  // Front radius (radial) or enclosed area (planar).
  double front_measure = 0.0;
  double max_height = 0.0;
  // Planar only.
  double perimeter = 0.0;
  double max_curvature = 0.0;
  double min_turn = 0.0;
  // Markers at sharp corners, left out of the Neumann residual.
  int corner_markers = 0;
};

// Aggregated per-step checks made inside the solver loop.
struct StepStats {
  long steps = 0;
  // Largest f_new - f_old from the PDE update on nodes that stay inside.
  double max_increase = -INFINITY;
  // Largest outward front displacement in one step (should be <= 0).
  double max_front_advance = -INFINITY;
  // Smallest |f_r| - m/(2R) margin seen at the front (radial only).
  double min_nondegeneracy_margin = INFINITY;
  // Most negative height clipped to zero during the run.
  double min_clipped = 0.0;
  double min_dt = INFINITY;
  double max_dt = 0.0;
  // Steps where the default strip width was under four cells.
  long thin_strip_steps = 0;

  void merge(const StepStats& o);
};

enum class RunStatus { Extinct, TimeCapReached };
const char* status_name(RunStatus s);

template <class State>
struct Snapshot {
  double t = 0.0;
  State state;
  Diagnostics diag;
};

template <class State>
struct Trajectory {
  std::vector<Snapshot<State>> snapshots;
  RunStatus status = RunStatus::TimeCapReached;
  StepStats stats;
};

using RadialTrajectory = Trajectory<RadialState>;
using PlanarTrajectory = Trajectory<PlanarState>;

enum class InitialKind { ParabolicCap, Cone, Table, DiskCap, PolygonCap };
const char* initial_kind_name(InitialKind k);

struct InitialSpec {
  InitialKind kind = InitialKind::ParabolicCap;
  double R0 = 1.0;
  // Prescribed |Df| at the front. 1 for the free-boundary problem.
  double front_slope = 1.0;
  // Table kind: (r, f) pairs with r increasing from 0 and f vanishing at the last r.
  std::vector<std::pair<double, double>> table;
  // PolygonCap kind: vertices of a convex polygon, either orientation.
  std::vector<Vec2> polygon;
};

RadialState build_initial_radial(const InitialSpec& spec, const PParams& params, int N);

// Grid spacing h; the grid is square and symmetric about the origin.
PlanarState build_initial_planar(const InitialSpec& spec, const PParams& params, double h,
                                 int marker_count);

// Throws NegativeHeight / NonMonotone / SupportViolation when a radial state is malformed.
void validate(const RadialState& s, double concavity_tol);

// |f_r| at radius r from the monotone cubic reconstruction.
double sample_gradient(const RadialState& s, double r);
// Gradient of the planar field at x, bilinear in the node gradients.
Vec2 sample_gradient(const PlanarState& s, Vec2 x);

// Profile value at r (0 outside the support).
double evaluate(const RadialState& s, double r);

}  // namespace plap
