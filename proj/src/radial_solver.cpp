#include "plap/radial_solver.hpp"

#include <algorithm>
#include <cmath>

#include "plap/hodograph.hpp"
#include "plap/interpolation.hpp"
#include "plap/operator.hpp"

namespace plap {

void validate(const RadialRunConfig& cfg) {
  validate(cfg.params);
  if (cfg.N < 8) throw Error(ErrorKind::RangeError, "N must be at least 8");
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

// ((i + 1/2) / i)^{n-1} and ((i - 1/2) / i)^{n-1}.
double metric_ratio(double num, double den, int n) {
  double r = 1.0, b = num / den;
  for (int k = 1; k < n; ++k) r *= b;
  return r;
}

double node_gradient(const RadialState& s, int i) {
  const int N = s.size();
  const double h = s.spacing();
  if (i == 0) return 0.0;
  if (i == N - 1) return (s.heights[N - 1] - s.heights[N - 2]) / h;
  return (s.heights[i + 1] - s.heights[i - 1]) / (2.0 * h);
}

}  // namespace

double cfl_dt(const RadialState& s, const PParams& params, double sigma) {
  // The larger eigenvalue grows with s, and node gradients are averages of
  // half-node gradients, so the maximum sits at the steepest half-node.
  const int N = s.size();
  const double h = s.spacing();
  double smax = 0.0;
  for (int i = 0; i + 1 < N; ++i) {
    double gh = s.heights[i + 1] - s.heights[i];
    smax = std::max(smax, gh * gh);
  }
  smax /= h * h;
  const double lam = coefficient_eigenvalues(smax, params).big;
  if (lam == 0.0) return INFINITY;
  return sigma * h * h / (2.0 * params.n * lam);
}

namespace {

// Metric weights ((i +- 1/2)/i)^{n-1}, cached per (N, n).
struct MetricTable {
  int N = 0, n = 0;
  std::vector<double> wp, wm;
};

const MetricTable& metric_table(int N, int n) {
  thread_local MetricTable t;
  if (t.N != N || t.n != n) {
    t.N = N;
    t.n = n;
    t.wp.assign(N, 1.0);
    t.wm.assign(N, 1.0);
    for (int i = 1; i < N; ++i) {
      t.wp[i] = metric_ratio(i + 0.5, i, n);
      t.wm[i] = metric_ratio(i - 0.5, i, n);
    }
  }
  return t;
}

}  // namespace

std::vector<double> radial_operator(const RadialState& s, const PParams& params) {
  const int N = s.size();
  const int n = params.n;
  const double inv_h = 1.0 / s.spacing();
  const auto& f = s.heights;
  const MetricTable& mt = metric_table(N, n);
  std::vector<double> L(N, 0.0);
  double phi_prev = radial_flux((f[1] - f[0]) * inv_h, params);
  L[0] = 2.0 * n * phi_prev * inv_h;
  if (n == 1) {
    for (int i = 1; i < N - 1; ++i) {
      double phi = radial_flux((f[i + 1] - f[i]) * inv_h, params);
      L[i] = (phi - phi_prev) * inv_h;
      phi_prev = phi;
    }
  } else {
    for (int i = 1; i < N - 1; ++i) {
      double phi = radial_flux((f[i + 1] - f[i]) * inv_h, params);
      L[i] = (mt.wp[i] * phi - mt.wm[i] * phi_prev) * inv_h;
      phi_prev = phi;
    }
  }
  return L;
}

namespace {

void interior_update_semi_implicit(const RadialState& s, double dt, const PParams& params,
                                   std::vector<double>& out) {
  const int N = s.size();
  const int n = params.n;
  const double h = s.spacing();
  const auto& f = s.heights;
  std::vector<double> k(N - 1);
  for (int i = 0; i + 1 < N; ++i) {
    double g = (f[i + 1] - f[i]) / h;
    k[i] = flux_factor(g * g, params);
  }
  // Tridiagonal rows 0..N-2, unknown f_{N-1} = 0.
  const int M = N - 1;
  std::vector<double> lo(M, 0.0), di(M, 0.0), up(M, 0.0), rhs(M);
  for (int i = 0; i < M; ++i) {
    double cp, cm;
    if (i == 0) {
      cp = 2.0 * n * k[0] / (h * h);
      cm = 0.0;
    } else {
      cp = metric_table(N, n).wp[i] * k[i] / (h * h);
      cm = metric_table(N, n).wm[i] * k[i - 1] / (h * h);
    }
    di[i] = 1.0 + dt * (cp + cm);
    if (i + 1 < M) up[i] = -dt * cp;
    if (i > 0) lo[i] = -dt * cm;
    rhs[i] = f[i];
  }
  for (int i = 1; i < M; ++i) {
    double w = lo[i] / di[i - 1];
    di[i] -= w * up[i - 1];
    rhs[i] -= w * rhs[i - 1];
  }
  out.assign(N, 0.0);
  out[M - 1] = rhs[M - 1] / di[M - 1];
  for (int i = M - 2; i >= 0; --i) out[i] = (rhs[i] - up[i] * out[i + 1]) / di[i];
}

// Smallest |f_r| - m/(2R) + 5h over the strip nodes, plus whether the strip
// is thinner than four cells.
void nondegeneracy(const RadialState& s, StepStats& st) {
  const int N = s.size();
  const double h = s.spacing(), R = s.front_radius;
  const double pos = 0.5 * (N - 1);
  const int i0 = static_cast<int>(std::floor(pos));
  const double w = pos - i0;
  const double m = (1.0 - w) * s.heights[i0] + w * s.heights[std::min(i0 + 1, N - 1)];
  GeometryBounds b{0.5 * R, R, m};
  if (!(m > 0.0)) {
    st.min_nondegeneracy_margin = -INFINITY;
    return;
  }
  const double d = default_strip_width(b);
  if (d < 4.0 * h) ++st.thin_strip_steps;
  const double floor = m / (2.0 * R);
  for (int i = N - 1; i >= 1; --i) {
    double slope = (s.heights[i - 1] - s.heights[i]) / h;
    st.min_nondegeneracy_margin = std::min(st.min_nondegeneracy_margin, slope - floor + 5.0 * h);
    if (s.heights[i - 1] > d) break;
  }
}

}  // namespace

RadialStepResult step_radial(const RadialState& s, double dt, const PParams& params, const StepOptions& opt) {
  const int N = s.size();
  if (!(dt > 0.0)) throw Error(ErrorKind::InvalidArgument, "dt must be positive");
  if (!opt.semi_implicit) {
    const double limit = cfl_dt(s, params, 1.0);
    if (dt > limit * (1.0 + 1e-12)) throw Error(ErrorKind::CflViolation, "dt exceeds the explicit stability budget");
  }
  RadialStepResult res;
  StepStats& st = res.stats;
  st.steps = 1;
  st.min_dt = st.max_dt = dt;
  nondegeneracy(s, st);

  const double V = radial_front_velocity(s, params, opt.front_slope);
  res.front_velocity = V;

  std::vector<double> fstar;
  if (opt.semi_implicit) {
    interior_update_semi_implicit(s, dt, params, fstar);
  } else {
    std::vector<double> L = radial_operator(s, params);
    fstar.resize(N);
    for (int i = 0; i < N - 1; ++i) fstar[i] = s.heights[i] + dt * L[i];
    fstar[N - 1] = 0.0;
  }
  double inc = -INFINITY;
  for (int i = 0; i < N - 1; ++i) inc = std::max(inc, fstar[i] - s.heights[i]);
  st.max_increase = inc;

  const double Rnew = s.front_radius + dt * V;
  st.max_front_advance = dt * V;
  if (!(Rnew > 0.0)) throw Error(ErrorKind::NegativeHeight, "front collapsed through the axis in one step");

  pchip_remap_uniform(fstar, s.spacing(), Rnew / (N - 1), res.state.heights);
  res.state.heights[N - 1] = 0.0;
  for (int i = 0; i < N - 1; ++i) {
    double& v = res.state.heights[i];
    if (v < 0.0) {
      if (v < -1e-12) throw Error(ErrorKind::NegativeHeight, "height below clamp tolerance");
      st.min_clipped = std::min(st.min_clipped, v);
      v = 0.0;
    }
  }
  res.state.front_radius = Rnew;
  res.state.time = s.time + dt;
  return res;
}

RadialState step_radial_state(const RadialState& s, double dt, const PParams& params) {
  return step_radial(s, dt, params).state;
}

Diagnostics radial_diagnostics(const RadialState& s, double front_slope) {
  const int N = s.size();
  const double h = s.spacing();
  const auto& f = s.heights;
  Diagnostics d;
  d.time = s.time;
  for (int i = 0; i < N; ++i) d.sup_grad = std::max(d.sup_grad, std::abs(node_gradient(s, i)));
  d.neumann_residual = std::abs(f[N - 2] / h - front_slope);
  double conc = 0.0;
  for (int i = 0; i < N - 1; ++i) {
    double fm = i == 0 ? f[1] : f[i - 1];
    conc = std::max(conc, (f[i + 1] - 2.0 * f[i] + fm) / (h * h));
  }
  d.concavity_violation = conc;
  d.front_measure = s.front_radius;
  d.max_height = *std::max_element(f.begin(), f.end());
  return d;
}

RadialTrajectory solve_radial(const RadialRunConfig& cfg) {
  validate(cfg);
  RadialTrajectory traj;
  if (cfg.t_max <= 0.0) {
    traj.status = RunStatus::TimeCapReached;
    return traj;
  }
  const double slope = cfg.initial.front_slope;
  RadialState s = build_initial_radial(cfg.initial, cfg.params, cfg.N);
  auto push = [&](const RadialState& st) {
    traj.snapshots.push_back({st.time, st, radial_diagnostics(st, slope)});
  };
  push(s);
  StepOptions opt{slope, cfg.semi_implicit};
  std::size_t next_sample = 0;
  while (next_sample < cfg.sample_times.size() && cfg.sample_times[next_sample] <= s.time) ++next_sample;
  long steps = 0;
  bool pushed_last = true;
  for (;;) {
    double hmax = *std::max_element(s.heights.begin(), s.heights.end());
    if (hmax <= cfg.extinction_threshold) {
      traj.status = RunStatus::Extinct;
      break;
    }
    if (s.time >= cfg.t_max) {
      traj.status = RunStatus::TimeCapReached;
      break;
    }
    if (steps >= cfg.max_steps) throw Error(ErrorKind::RangeError, "step limit reached", s.time);
    double dt = cfg.dt_policy.kind == DtPolicy::Kind::Cfl ? cfl_dt(s, cfg.params, cfg.dt_policy.sigma)
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
    }
    RadialStepResult r;
    try {
      r = step_radial(s, dt, cfg.params, opt);
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

std::optional<double> extinction_time(const RadialTrajectory& traj, double threshold) {
  const auto& S = traj.snapshots;
  auto peak = [](const RadialState& st) { return *std::max_element(st.heights.begin(), st.heights.end()); };
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

}  // namespace plap
