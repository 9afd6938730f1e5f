#include "plap/planar_solver.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <string>

#include "plap/operator.hpp"
#include "plap/polygon.hpp"

namespace plap {

void validate(const PlanarRunConfig& cfg) {
  validate(cfg.params);
  if (cfg.params.n != 2) throw Error(ErrorKind::RangeError, "planar runs need n = 2");
  if (cfg.marker_count < 16) throw Error(ErrorKind::RangeError, "marker_count must be >= 16");
  if (!(cfg.grid_spacing > 0.0)) throw Error(ErrorKind::RangeError, "grid spacing must be positive");
  if (cfg.dt_policy.kind == DtPolicy::Kind::Cfl && !(cfg.dt_policy.sigma > 0.0 && cfg.dt_policy.sigma <= 1.0))
    throw Error(ErrorKind::RangeError, "cfl sigma must lie in (0, 1]");
  if (cfg.dt_policy.kind == DtPolicy::Kind::Fixed && !(cfg.dt_policy.dt > 0.0))
    throw Error(ErrorKind::RangeError, "fixed dt must be positive");
  if (!(cfg.t_max >= 0.0)) throw Error(ErrorKind::RangeError, "t_max must be >= 0");
  if (!(cfg.extinction_threshold > 0.0)) throw Error(ErrorKind::RangeError, "extinction_threshold must be > 0");
  if (cfg.snapshot_every < 1) throw Error(ErrorKind::RangeError, "snapshot_every must be >= 1");
  for (std::size_t k = 0; k < cfg.sample_times.size(); ++k)
    if (!(cfg.sample_times[k] >= 0.0) || (k > 0 && !(cfg.sample_times[k] > cfg.sample_times[k - 1])))
      throw Error(ErrorKind::RangeError, "sample_times must be increasing and non-negative");
}

namespace {

constexpr double kMinArm = 1e-3;  // smallest cut arm, in cells
constexpr double kFitRadius = 3.5;  // fit neighbourhood radius, in cells
constexpr double kMinMarkerSpacing = 2.5;  // in cells; see step_planar
constexpr double kCornerTurn = 0.5;  // radians; sharper markers are polygon corners

enum Dir { E = 0, W = 1, N = 2, S = 3 };

// Inside mask and arm lengths for the current front.
struct Geometry {
  std::vector<std::uint8_t> inside;
  std::vector<std::array<double, 4>> arm;
};

// Inside the spline front and positive. The positivity set only shrinks, so a
// node the front left behind stays out even if a redistribution of the markers
// moves the spline back across it.
void restrict_to_positive(const GridField2D& g, std::vector<std::uint8_t>& in) {
  for (std::size_t id = 0; id < in.size(); ++id)
    if (!(g.v[id] > 0.0)) in[id] = 0;
}

std::vector<std::uint8_t> inside_mask(const PlanarState& s) {
  std::vector<std::uint8_t> in = poly::grid_inside(poly::grid_crossings(s.markers, s.field), s.field);
  restrict_to_positive(s.field, in);
  return in;
}

Geometry build_geometry(const PlanarState& s) {
  const GridField2D& g = s.field;
  const poly::GridCrossings c = poly::grid_crossings(s.markers, g);
  Geometry G;
  G.inside = poly::grid_inside(c, g);
  restrict_to_positive(g, G.inside);
  G.arm.assign(G.inside.size(), {g.h, g.h, g.h, g.h});
  auto in = [&](int i, int j) { return g.in_range(i, j) && G.inside[static_cast<std::size_t>(j) * g.nx + i]; };
  auto clamp_arm = [&](double a) { return std::clamp(a, kMinArm * g.h, g.h); };
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      if (!in(i, j)) continue;
      auto& a = G.arm[static_cast<std::size_t>(j) * g.nx + i];
      const double x = g.x(i), y = g.y(j);
      if (!in(i + 1, j)) a[E] = clamp_arm(c.row_hi[j] - x);
      if (!in(i - 1, j)) a[W] = clamp_arm(x - c.row_lo[j]);
      if (!in(i, j + 1)) a[N] = clamp_arm(c.col_hi[i] - y);
      if (!in(i, j - 1)) a[S] = clamp_arm(y - c.col_lo[i]);
    }
  return G;
}

// Three-point derivative with arms am (backward) and ap (forward).
double nonuniform_derivative(double fm, double f0, double fp, double am, double ap) {
  return (am * am * (fp - f0) + ap * ap * (f0 - fm)) / (am * ap * (am + ap));
}

// A node within half a cell of the front holds a value of the size of its arm,
// and dividing by that arm amplifies any mismatch; the far side is used instead.
double node_derivative(double fm, double f0, double fp, double am, double ap, double h) {
  if (am < 0.5 * h && ap >= 0.5 * h) return (fp - f0) / ap;
  if (ap < 0.5 * h && am >= 0.5 * h) return (f0 - fm) / am;
  return nonuniform_derivative(fm, f0, fp, am, ap);
}

struct NodeGrads {
  std::vector<double> gx, gy;
};

NodeGrads node_gradients(const PlanarState& s, const Geometry& G) {
  const GridField2D& g = s.field;
  NodeGrads out;
  out.gx.assign(G.inside.size(), 0.0);
  out.gy.assign(G.inside.size(), 0.0);
  auto in = [&](int i, int j) { return g.in_range(i, j) && G.inside[static_cast<std::size_t>(j) * g.nx + i]; };
  auto val = [&](int i, int j) { return in(i, j) ? g.at(i, j) : 0.0; };
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      const std::size_t id = static_cast<std::size_t>(j) * g.nx + i;
      if (!G.inside[id]) continue;
      const auto& a = G.arm[id];
      const double f0 = g.at(i, j);
      out.gx[id] = node_derivative(val(i - 1, j), f0, val(i + 1, j), a[W], a[E], g.h);
      out.gy[id] = node_derivative(val(i, j - 1), f0, val(i, j + 1), a[S], a[N], g.h);
    }
  return out;
}

// Distance from x to the spline near marker k (two segments on each side).
double spline_distance(const std::vector<Vec2>& P, int k, Vec2 x) {
  const int M = static_cast<int>(P.size());
  double best = INFINITY;
  for (int seg : {(k - 2 + 2 * M) % M, (k - 1 + M) % M, k, (k + 1) % M}) {
    Vec2 a = P[seg], b = P[(seg + 1) % M];
    Vec2 e = b - a;
    double ee = dot(e, e);
    double u = ee > 0.0 ? std::clamp(dot(x - a, e) / ee, 0.0, 1.0) : 0.0;
    for (int it = 0; it < 8; ++it) {
      Vec2 r = poly::spline_point(P, seg, u) - x;
      Vec2 t = poly::spline_tangent(P, seg, u);
      double tt = dot(t, t);
      if (tt == 0.0) break;
      double un = std::clamp(u - dot(r, t) / tt, 0.0, 1.0);
      if (un == u) break;
      u = un;
    }
    best = std::min(best, norm(poly::spline_point(P, seg, u) - x));
  }
  return best;
}

struct FitSample {
  double d, t, f, w;
};

}  // namespace

MarkerFit marker_fit(const PlanarState& s, int k, const PParams& params, double front_slope) {
  const auto& P = s.markers;
  const int M = static_cast<int>(P.size());
  const GridField2D& g = s.field;
  const Vec2 m = P[k];
  const Vec2 nu = poly::vertex_normal(P, k);
  MarkerFit out;
  out.curvature = poly::menger_curvature(P[(k - 1 + M) % M], m, P[(k + 1) % M]);

  const int ci = static_cast<int>(std::lround(m.x / g.h)) - g.ix0;
  const int cj = static_cast<int>(std::lround(m.y / g.h)) - g.iy0;
  const int reach = static_cast<int>(std::ceil(kFitRadius)) + 1;
  const double rad = kFitRadius * g.h;
  std::vector<FitSample> samples;
  for (int j = cj - reach; j <= cj + reach; ++j)
    for (int i = ci - reach; i <= ci + reach; ++i) {
      if (!g.in_range(i, j)) continue;
      const Vec2 x = g.node(i, j);
      if (norm(x - m) > rad) continue;
      const double f = g.at(i, j);
      if (!(f > 0.0)) continue;
      const double z = norm(x - m) / rad;
      samples.push_back({spline_distance(P, k, x), cross(nu, x - m), f, (1.0 - z * z) * (1.0 - z * z)});
    }
  if (samples.size() < 3) throw Error(ErrorKind::StencilFailure, "fewer than three nodes near marker " + std::to_string(k));
  std::sort(samples.begin(), samples.end(),
            [](const FitSample& a, const FitSample& b) { return a.d != b.d ? a.d < b.d : a.t < b.t; });
  double S2 = 0, S3 = 0, S4 = 0, Sfd = 0, Sfd2 = 0, Sr = 0;
  for (const auto& q : samples) {
    const double d2 = q.d * q.d, w = q.w;
    S2 += w * d2;
    S3 += w * d2 * q.d;
    S4 += w * d2 * d2;
    Sfd += w * q.f * q.d;
    Sfd2 += w * q.f * d2;
    Sr += w * (q.f - front_slope * q.d) * d2;
  }
  out.samples = static_cast<int>(samples.size());
  // Unconstrained fit f = a d + c d^2 / 2 gives the measured slope.
  const double det = S2 * S4 - S3 * S3;
  if (!(std::abs(det) > 1e-14 * S2 * S4)) throw Error(ErrorKind::StencilFailure, "degenerate fit at marker " + std::to_string(k));
  out.slope = (Sfd * S4 - S3 * Sfd2) / det;
  if (out.slope < 0.5)
    throw Error(ErrorKind::DegenerateFront, "front slope below 0.5 at marker " + std::to_string(k));
  // With the slope imposed, f - slope d = b d^2 / 2.
  const double b = 2.0 * Sr / S4;
  const double sq = front_slope * front_slope;
  const double q = params.q(), base = sq + params.epsilon;
  const double alpha = fast_pow(base, q - 1.0);
  const double beta = 2.0 * (q - 1.0) * fast_pow(base, q - 2.0);
  const double lap = alpha * (b - out.curvature * front_slope) + beta * sq * b;
  out.speed = -lap / front_slope;
  return out;
}

double marker_normal_velocity(const PlanarState& s, int k, const PParams& params) {
  return marker_fit(s, k, params).speed;
}

namespace {

double max_face_s(const PlanarState& s, const Geometry& G, const NodeGrads& ng) {
  const GridField2D& g = s.field;
  double smax = 0.0;
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      const std::size_t id = static_cast<std::size_t>(j) * g.nx + i;
      if (!G.inside[id]) continue;
      const double gx = ng.gx[id], gy = ng.gy[id];
      smax = std::max(smax, gx * gx + gy * gy);
      const auto& a = G.arm[id];
      const double f0 = g.at(i, j);
      // Face slopes toward each neighbour (0 beyond the front).
      const int di[4] = {1, -1, 0, 0}, dj[4] = {0, 0, 1, -1};
      for (int d = 0; d < 4; ++d) {
        const int ii = i + di[d], jj = j + dj[d];
        const bool nb_in = g.in_range(ii, jj) && G.inside[static_cast<std::size_t>(jj) * g.nx + ii];
        const double fn = nb_in ? g.at(ii, jj) : 0.0;
        const double gn = (fn - f0) / a[d];
        const double gt = d < 2 ? gy : gx;
        smax = std::max(smax, gn * gn + gt * gt);
      }
    }
  return smax;
}

}  // namespace

double planar_cfl_dt(const PlanarState& s, const PParams& params, double sigma) {
  Geometry G = build_geometry(s);
  NodeGrads ng = node_gradients(s, G);
  const double lam = coefficient_eigenvalues(max_face_s(s, G, ng), params).big;
  if (lam == 0.0) return INFINITY;
  const double h = s.field.h;
  return sigma * h * h / (4.0 * lam);
}

namespace {

void operator_with_geometry(const PlanarState& s, const PParams& params, const Geometry& G, const NodeGrads& ng,
                            std::vector<double>& L, std::vector<double>& D) {
  const GridField2D& g = s.field;
  L.assign(G.inside.size(), 0.0);
  D.assign(G.inside.size(), 0.0);
  auto idx = [&](int i, int j) { return static_cast<std::size_t>(j) * g.nx + i; };
  auto in = [&](int i, int j) { return g.in_range(i, j) && G.inside[idx(i, j)]; };
  const double h = g.h;
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      const std::size_t id = idx(i, j);
      if (!G.inside[id]) continue;
      const auto& a = G.arm[id];
      const double f0 = g.at(i, j);
      // Explicit flux through a face shared with an inside neighbour; the
      // derivative is taken in the positive axis direction.
      auto face = [&](int ii, int jj, bool xface, double sign) {
        const std::size_t nb = idx(ii, jj);
        const double gn = sign * (g.at(ii, jj) - f0) / h;
        const double gt = xface ? 0.5 * (ng.gy[id] + ng.gy[nb]) : 0.5 * (ng.gx[id] + ng.gx[nb]);
        return flux_factor(gn * gn + gt * gt, params) * gn;
      };
      // Weight k / arm of a face cut by the front (value 0 there).
      auto cut = [&](double arm, double gt) {
        const double gn = f0 / arm;
        return flux_factor(gn * gn + gt * gt, params) / arm;
      };
      double Fe = 0, Fw = 0, Fn = 0, Fs = 0, dx = 0, dy = 0;
      if (in(i + 1, j)) Fe = face(i + 1, j, true, 1.0); else dx += cut(a[E], ng.gy[id]);
      if (in(i - 1, j)) Fw = face(i - 1, j, true, -1.0); else dx += cut(a[W], ng.gy[id]);
      if (in(i, j + 1)) Fn = face(i, j + 1, false, 1.0); else dy += cut(a[N], ng.gx[id]);
      if (in(i, j - 1)) Fs = face(i, j - 1, false, -1.0); else dy += cut(a[S], ng.gx[id]);
      const double hx = 0.5 * (a[E] + a[W]), hy = 0.5 * (a[N] + a[S]);
      L[id] = (Fe - Fw) / hx + (Fn - Fs) / hy;
      D[id] = dx / hx + dy / hy;
    }
}

}  // namespace

void planar_operator(const PlanarState& s, const PParams& params, std::vector<double>& L,
                     std::vector<double>& front_diag) {
  Geometry G = build_geometry(s);
  NodeGrads ng = node_gradients(s, G);
  operator_with_geometry(s, params, G, ng, L, front_diag);
  for (std::size_t id = 0; id < L.size(); ++id)
    if (G.inside[id]) L[id] -= front_diag[id] * s.field.v[id];
}

Vec2 planar_node_gradient(const PlanarState& s, int i, int j) {
  Geometry G = build_geometry(s);
  NodeGrads ng = node_gradients(s, G);
  const std::size_t id = static_cast<std::size_t>(j) * s.field.nx + i;
  return {ng.gx[id], ng.gy[id]};
}

PlanarStepResult step_planar(const PlanarState& s, double dt, const PParams& params, double front_slope) {
  if (!(dt > 0.0)) throw Error(ErrorKind::InvalidArgument, "dt must be positive");
  const GridField2D& g = s.field;
  const double h = g.h;
  Geometry G = build_geometry(s);
  NodeGrads ng = node_gradients(s, G);
  {
    const double lam = coefficient_eigenvalues(max_face_s(s, G, ng), params).big;
    const double limit = lam == 0.0 ? INFINITY : h * h / (4.0 * lam);
    if (dt > limit * (1.0 + 1e-12)) throw Error(ErrorKind::CflViolation, "dt exceeds the explicit stability budget");
  }
  PlanarStepResult res;
  StepStats& st = res.stats;
  st.steps = 1;
  st.min_dt = st.max_dt = dt;

  // Front speeds from the current state.
  const int M = static_cast<int>(s.markers.size());
  std::vector<double> V(M);
  std::vector<Vec2> nu(M);
  res.max_speed = -INFINITY;
  res.min_speed = INFINITY;
  for (int k = 0; k < M; ++k) {
    V[k] = marker_fit(s, k, params, front_slope).speed;
    nu[k] = poly::vertex_normal(s.markers, k);
  }
  for (int k = 0; k < M; ++k) {
    res.max_speed = std::max(res.max_speed, V[k]);
    res.min_speed = std::min(res.min_speed, V[k]);
  }

  // Move markers along the averaged normals, check convexity, redistribute.
  std::vector<Vec2> moved(M);
  double mean_len = 0.0;
  for (int k = 0; k < M; ++k) {
    moved[k] = s.markers[k] + (dt * V[k]) * nu[k];
    mean_len += norm(s.markers[(k + 1) % M] - s.markers[k]);
  }
  mean_len /= M;
  const double tol = 1e-12 * mean_len * mean_len;
  std::vector<double> turns = poly::turn_crosses(moved);
  for (int k = 0; k < M; ++k)
    if (turns[k] < -tol)
      throw Error(ErrorKind::ConvexityLost, "negative turn at marker " + std::to_string(k));
  if (!(poly::signed_area(moved) > 0.0)) throw Error(ErrorKind::ConvexityLost, "front polygon collapsed");
  st.max_front_advance = -res.min_speed * dt;
  // Markers closer than a few cells see the grid noise of the fits as curvature, so
  // the count drops as the front shrinks (never below 16, never above the start).
  const int count = std::clamp(static_cast<int>(poly::perimeter(moved) / (kMinMarkerSpacing * h)), 16, M);

  // Interior update against the new front; nodes it left behind carry 0 and the
  // cut faces are implicit in the node value.
  PlanarState out;
  if (count < M) {
    // Chord points sit inside the spline by up to the sagitta; a drop moves most
    // of them to mid-chord, so the new points go on the spline instead.
    out.markers = poly::resample_spline(moved, count);
    if (!poly::is_strictly_convex(out.markers)) out.markers = poly::resample_uniform(moved, count);
  } else {
    out.markers = poly::resample_uniform(moved, count);
  }
  out.time = s.time + dt;
  out.field = g;
  Geometry G1 = build_geometry(out);
  for (std::size_t id = 0; id < G1.inside.size(); ++id)
    if (!G1.inside[id]) out.field.v[id] = 0.0;
  NodeGrads ng1 = node_gradients(out, G1);
  std::vector<double> L, D;
  operator_with_geometry(out, params, G1, ng1, L, D);
  double inc = -INFINITY;
  for (std::size_t id = 0; id < L.size(); ++id) {
    if (!G1.inside[id]) continue;
    const double f0 = g.v[id];
    double f1 = (out.field.v[id] + dt * L[id]) / (1.0 + dt * D[id]);
    inc = std::max(inc, f1 - f0);
    if (f1 < 0.0) {
      if (f1 < -1e-12) throw Error(ErrorKind::NegativeHeight, "height below clamp tolerance");
      st.min_clipped = std::min(st.min_clipped, f1);
      f1 = 0.0;
    }
    L[id] = f1;
  }
  for (std::size_t id = 0; id < L.size(); ++id)
    if (G1.inside[id]) out.field.v[id] = L[id];
  st.max_increase = inc;
  res.state = std::move(out);
  return res;
}

PlanarState step_planar_state(const PlanarState& s, double dt, const PParams& params) {
  return step_planar(s, dt, params).state;
}

double planar_max_hessian_eigenvalue(const PlanarState& s) {
  const GridField2D& g = s.field;
  std::vector<std::uint8_t> in = inside_mask(s);
  auto inside = [&](int i, int j) { return g.in_range(i, j) && in[static_cast<std::size_t>(j) * g.nx + i]; };
  const double h2 = g.h * g.h;
  double best = -INFINITY;
  for (int j = 1; j + 1 < g.ny; ++j)
    for (int i = 1; i + 1 < g.nx; ++i) {
      bool full = true;
      for (int dj = -1; dj <= 1 && full; ++dj)
        for (int di = -1; di <= 1 && full; ++di) full = inside(i + di, j + dj);
      if (!full) continue;
      const double fxx = (g.at(i + 1, j) - 2.0 * g.at(i, j) + g.at(i - 1, j)) / h2;
      const double fyy = (g.at(i, j + 1) - 2.0 * g.at(i, j) + g.at(i, j - 1)) / h2;
      const double fxy = (g.at(i + 1, j + 1) - g.at(i - 1, j + 1) - g.at(i + 1, j - 1) + g.at(i - 1, j - 1)) / (4.0 * h2);
      const double mean = 0.5 * (fxx + fyy), dev = std::hypot(0.5 * (fxx - fyy), fxy);
      best = std::max(best, mean + dev);
    }
  return best;
}

Diagnostics planar_diagnostics(const PlanarState& s, const PParams& params, double front_slope) {
  Diagnostics d;
  d.time = s.time;
  Geometry G = build_geometry(s);
  NodeGrads ng = node_gradients(s, G);
  for (std::size_t id = 0; id < G.inside.size(); ++id) {
    if (!G.inside[id]) continue;
    d.sup_grad = std::max(d.sup_grad, std::hypot(ng.gx[id], ng.gy[id]));
    d.max_height = std::max(d.max_height, s.field.v[id]);
  }
  const int M = static_cast<int>(s.markers.size());
  for (int k = 0; k < M; ++k) {
    const Vec2 a = s.markers[k] - s.markers[(k - 1 + M) % M], b = s.markers[(k + 1) % M] - s.markers[k];
    if (std::atan2(cross(a, b), dot(a, b)) > kCornerTurn) {
      ++d.corner_markers;
      continue;
    }
    try {
      MarkerFit f = marker_fit(s, k, params, front_slope);
      d.neumann_residual = std::max(d.neumann_residual, std::abs(f.slope - front_slope));
      d.max_curvature = std::max(d.max_curvature, f.curvature);
    } catch (const Error&) {
      d.neumann_residual = INFINITY;
    }
  }
  d.concavity_violation = std::max(0.0, planar_max_hessian_eigenvalue(s));
  d.front_measure = poly::signed_area(s.markers);
  d.perimeter = poly::perimeter(s.markers);
  std::vector<double> t = poly::turn_crosses(s.markers);
  d.min_turn = *std::min_element(t.begin(), t.end());
  return d;
}

PlanarTrajectory solve_planar(const PlanarRunConfig& cfg) {
  validate(cfg);
  PlanarTrajectory traj;
  if (cfg.t_max <= 0.0) return traj;
  const double slope = cfg.initial.front_slope;
  PlanarState s = build_initial_planar(cfg.initial, cfg.params, cfg.grid_spacing, cfg.marker_count);
  auto push = [&](const PlanarState& st) {
    traj.snapshots.push_back({st.time, st, planar_diagnostics(st, cfg.params, slope)});
  };
  push(s);
  std::size_t next_sample = 0;
  while (next_sample < cfg.sample_times.size() && cfg.sample_times[next_sample] <= s.time) ++next_sample;
  long steps = 0;
  bool pushed_last = true;
  for (;;) {
    const double hmax = *std::max_element(s.field.v.begin(), s.field.v.end());
    if (hmax <= cfg.extinction_threshold) {
      traj.status = RunStatus::Extinct;
      break;
    }
    if (s.time >= cfg.t_max) {
      traj.status = RunStatus::TimeCapReached;
      break;
    }
    if (steps >= cfg.max_steps) throw Error(ErrorKind::RangeError, "step limit reached", s.time);
    double dt = cfg.dt_policy.kind == DtPolicy::Kind::Cfl ? planar_cfl_dt(s, cfg.params, cfg.dt_policy.sigma)
                                                          : cfg.dt_policy.dt;
    double target = cfg.t_max;
    bool is_sample = false;
    if (next_sample < cfg.sample_times.size() && cfg.sample_times[next_sample] < target) {
      target = cfg.sample_times[next_sample];
      is_sample = true;
    }
    bool hit = false;
    if (s.time + dt >= target - 1e-10 * dt) {
      dt = target - s.time;
      hit = true;
    } else if (s.time + 1.5 * dt > target) {
      // Nodes a fraction of a cell inside the front lag the front position and
      // relax upward during a step much shorter than the budget, so the
      // remainder is split into two halves rather than leaving a sliver.
      dt = 0.5 * (target - s.time);
    }
    PlanarStepResult r;
    try {
      r = step_planar(s, dt, cfg.params, slope);
    } catch (const Error& e) {
      throw e.at_time(s.time);
    }
    traj.stats.merge(r.stats);
    s = std::move(r.state);
    ++steps;
    if (hit) {
      s.time = target;
      if (is_sample) ++next_sample;
    }
    pushed_last = false;
    if (steps % cfg.snapshot_every == 0 || (hit && is_sample)) {
      push(s);
      pushed_last = true;
    }
  }
  if (!pushed_last) push(s);
  return traj;
}

std::optional<double> extinction_time(const PlanarTrajectory& traj, double threshold) {
  const auto& S = traj.snapshots;
  auto peak = [](const PlanarState& st) { return *std::max_element(st.field.v.begin(), st.field.v.end()); };
  for (std::size_t k = 0; k < S.size(); ++k) {
    double H = peak(S[k].state);
    if (H <= threshold) {
      if (k == 0) return S[0].t;
      double Hp = peak(S[k - 1].state);
      double w = (Hp - threshold) / (Hp - H);
      return S[k - 1].t + w * (S[k].t - S[k - 1].t);
    }
  }
  return std::nullopt;
}

PlanarState rotate90(const PlanarState& s) {
  const GridField2D& g = s.field;
  if (g.nx != g.ny || g.ix0 != g.iy0 || g.ix0 != -(g.nx - 1) / 2)
    throw Error(ErrorKind::InvalidArgument, "rotation needs a square grid centred at the origin");
  PlanarState r;
  r.time = s.time;
  r.field = g;
  const int K2 = g.nx - 1;
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) r.field.at(i, j) = g.at(j, K2 - i);
  r.markers.reserve(s.markers.size());
  for (const Vec2& m : s.markers) r.markers.push_back({-m.y, m.x});
  return r;
}

}  // namespace plap
