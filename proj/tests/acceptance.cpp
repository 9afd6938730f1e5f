// Acceptance run: one PASS/FAIL line per criterion, tolerances pinned below.
// Exit status is 0 when every criterion comes out as expected; the criteria in
// kKnownRed are expected to fail (see README, "Known limitations").

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "plap/hodograph.hpp"
#include "plap/operator.hpp"
#include "plap/planar_solver.hpp"
#include "plap/polygon.hpp"
#include "plap/radial_solver.hpp"
#include "plap/verify.hpp"

using namespace plap;

namespace {

using Clock = std::chrono::steady_clock;

const std::set<int> kKnownRed = {3, 7};

constexpr double kItemSeconds = 60.0;
constexpr double kGradC = 5.0;
constexpr double kConcavityC = 10.0;
constexpr double kStepDecay = 1e-12;
constexpr double kNeumannC = 1.0;
constexpr double kMinOrder = 1.0;
// Measured orders are log-log slopes; a residual exactly proportional to h
// gives 1 - O(1e-11) from rounding in the logs.
constexpr double kOrderRounding = 1e-9;
constexpr double kStructural = 1e-12;
constexpr double kOrdering = 1e-3;
constexpr double kGapMonotonicity = 1e-3;
constexpr double kScaling = 5e-2;
constexpr double kExactScaling = 1e-12;
constexpr double kDegenerateEps = 1e-4;
constexpr double kFrontRadius = 2e-2;
constexpr double kExtinctionTime = 5e-2;
constexpr double kDivOrder = 2.0;
constexpr double kDivOrderBand = 0.25;
constexpr double kEigen = 1e-12;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

// Least-squares slope of log(y) against log(x).
double log_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const int n = static_cast<int>(x.size());
  double mx = 0, my = 0;
  for (int i = 0; i < n; ++i) {
    mx += std::log(x[i]) / n;
    my += std::log(y[i]) / n;
  }
  double sxy = 0, sxx = 0;
  for (int i = 0; i < n; ++i) {
    sxy += (std::log(x[i]) - mx) * (std::log(y[i]) - my);
    sxx += (std::log(x[i]) - mx) * (std::log(x[i]) - mx);
  }
  return sxy / sxx;
}

RadialRunConfig cap(int n, double p, double eps, int N, double t_max, double R0 = 1.0) {
  RadialRunConfig c;
  c.params = make_params(p, eps, n);
  c.initial.kind = InitialKind::ParabolicCap;
  c.initial.R0 = R0;
  c.N = N;
  c.t_max = t_max;
  c.snapshot_every = 50;
  return c;
}

const InvariantRecord& record(const InvariantReport& r, const std::string& name) {
  const InvariantRecord* x = r.find(name);
  if (!x) throw Error(ErrorKind::InvalidArgument, "report has no " + name);
  return *x;
}

struct RadialCapRun {
  RadialRunConfig cfg;
  RadialTrajectory traj;
  InvariantReport report;
  double seconds = 0.0;
};

struct PlanarRun {
  std::string name;
  PlanarRunConfig cfg;
  PlanarTrajectory traj;
  InvariantReport report;
  double seconds = 0.0;
};

// Runs shared between criteria; their wall time is charged to every item that reads them.
struct Shared {
  std::vector<RadialCapRun> caps;  // n, p, eps over the desk grid, short window
  double caps_seconds = 0.0;
  PlanarRun disk, square;
  double spent = 0.0;  // wall time of shared runs so far
};

void run_caps(Shared& s) {
  if (!s.caps.empty()) return;
  const auto t0 = Clock::now();
  for (int n : {1, 2})
    for (double p : {3.0, 4.0})
      for (double eps : {1e-2, 1e-3}) {
        RadialCapRun r;
        r.cfg = cap(n, p, eps, 201, 0.05);
        const auto t1 = Clock::now();
        r.traj = solve_radial(r.cfg);
        r.seconds = since(t1);
        r.report = invariant_report(r.traj, r.cfg.params);
        s.caps.push_back(std::move(r));
      }
  s.caps_seconds = since(t0);
  s.spent += s.caps_seconds;
}

std::string cap_name(const RadialRunConfig& c) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "n=%d p=%g eps=%g", c.params.n, c.params.p, c.params.epsilon);
  return buf;
}

void run_planar(PlanarRun& r, const std::string& name, const InitialSpec& initial, double& spent) {
  if (!r.traj.snapshots.empty()) return;
  r.name = name;
  r.cfg.initial = initial;
  const auto t0 = Clock::now();
  r.traj = solve_planar(r.cfg);
  r.seconds = since(t0);
  r.report = invariant_report(r.traj, r.cfg.params);
  spent += r.seconds;
}

InitialSpec unit_square() {
  InitialSpec s;
  s.kind = InitialKind::PolygonCap;
  s.polygon = {{-0.5, -0.5}, {0.5, -0.5}, {0.5, 0.5}, {-0.5, 0.5}};
  return s;
}

void run_planars(Shared& s) {
  run_planar(s.disk, "disk", disk_cap_spec(), s.spent);
  run_planar(s.square, "square", unit_square(), s.spent);
}

struct Outcome {
  bool pass = true;
  std::string detail;
  double shared_seconds = 0.0;

  void check(bool ok, const std::string& what) {
    if (!detail.empty()) detail += "; ";
    detail += what + (ok ? "" : " [x]");
    pass = pass && ok;
  }
};

// 1: gradient bound on cap runs and its behaviour under N -> 2N.
Outcome ac1(Shared& s) {
  Outcome o;
  run_caps(s);
  run_planar(s.disk, "disk", disk_cap_spec(), s.spent);
  o.shared_seconds = s.caps_seconds + s.disk.seconds;
  double worst = -INFINITY;
  std::string where;
  bool ok = true;
  for (const auto& r : s.caps) {
    const InvariantRecord& g = record(r.report, "gradient_bound");
    const double h = 1.0 / (r.cfg.N - 1);
    ok = ok && g.worst <= 1.0 + kGradC * h;
    if (g.worst - 1.0 > worst) {
      worst = g.worst - 1.0;
      where = cap_name(r.cfg);
    }
  }
  o.check(ok, "radial sup|Df|-1 = " + fmt("%.3e", worst) + " (" + where + ") vs 5h = " + fmt("%.3g", kGradC / 200));
  const double hp = s.disk.cfg.grid_spacing;
  const double gp = record(s.disk.report, "gradient_bound").worst;
  o.check(gp <= 1.0 + kGradC * hp, "disk sup|Df| = " + fmt("%.6f", gp) + " vs 1+5h = " + fmt("%.6f", 1.0 + kGradC * hp));

  // Excess over 1 under refinement: it must not grow, and when positive it must
  // shrink at order >= 1.
  for (int n : {1, 2}) {
    double e[2] = {0.0, 0.0};
    for (const auto& r : s.caps)
      if (r.cfg.params.n == n && r.cfg.params.p == 3.0 && r.cfg.params.epsilon == 1e-2)
        e[0] = std::max(record(r.report, "gradient_bound").worst - 1.0, 0.0);
    RadialRunConfig c = cap(n, 3.0, 1e-2, 401, 0.05);
    e[1] = std::max(record(invariant_report(solve_radial(c), c.params), "gradient_bound").worst - 1.0, 0.0);
    bool refine_ok;
    std::string what = "n=" + std::to_string(n) + " excess N=201 " + fmt("%.2e", e[0]) + ", N=401 " + fmt("%.2e", e[1]);
    if (e[0] == 0.0) {
      refine_ok = e[1] == 0.0;
      what += " (already <= 1)";
    } else {
      const double order = e[1] > 0.0 ? std::log2(e[0] / e[1]) : INFINITY;
      refine_ok = order >= kMinOrder - kOrderRounding;
      what += ", order " + fmt("%.2f", order);
    }
    o.check(refine_ok, what);
  }
  return o;
}

// 2: per-step decay, front shrinkage, planar nesting.
Outcome ac2(Shared& s) {
  Outcome o;
  run_caps(s);
  run_planars(s);
  o.shared_seconds = s.caps_seconds + s.disk.seconds + s.square.seconds;
  double inc = -INFINITY, adv = -INFINITY, shrink = -INFINITY, snap = -INFINITY;
  for (const auto& r : s.caps) {
    inc = std::max(inc, record(r.report, "step_decay").worst);
    adv = std::max(adv, record(r.report, "front_advance").worst);
    shrink = std::max(shrink, record(r.report, "front_shrinkage").worst);
    snap = std::max(snap, record(r.report, "height_decay").worst);
  }
  o.check(inc <= kStepDecay, "radial max step increase " + fmt("%.2e", inc));
  o.check(adv <= 0.0 && shrink <= 0.0, "radial max dR per step " + fmt("%.2e", adv) + ", per snapshot " + fmt("%.2e", shrink));
  o.check(snap <= 1e-9, "radial snapshot-to-snapshot increase " + fmt("%.2e", snap));
  for (const PlanarRun* r : {&s.disk, &s.square}) {
    const InvariantRecord& nest = record(r->report, "nesting");
    const InvariantRecord& area = record(r->report, "area_shrinkage");
    std::string where = nest.pass ? "" : " at t=" + fmt("%.5f", nest.time) + " " + nest.location;
    o.check(nest.pass, r->name + " nesting: largest outward distance " + fmt("%.2e", nest.worst) + " vs " +
                           fmt("%.2e", nest.tolerance) + where);
    o.check(area.pass, r->name + " max area change " + fmt("%.2e", area.worst));
    // Informational: the planar module lists no per-step decay invariant.
    o.detail += "; " + r->name + " step increase " + fmt("%.1e", record(r->report, "step_decay").worst) + " (info)";
  }
  return o;
}

double min_turn_all(const PlanarTrajectory& t, double& at) {
  double lo = INFINITY;
  for (const auto& sn : t.snapshots) {
    const std::vector<double> tc = poly::turn_crosses(sn.state.markers);
    const double m = *std::min_element(tc.begin(), tc.end());
    if (m < lo) {
      lo = m;
      at = sn.t;
    }
  }
  return lo;
}

// 3: concavity of the profile, convexity of the front.
Outcome ac3(Shared& s) {
  Outcome o;
  run_caps(s);
  run_planars(s);
  o.shared_seconds = s.caps_seconds + s.disk.seconds + s.square.seconds;
  bool ok = true;
  double worst = -INFINITY;
  for (const auto& r : s.caps) {
    const double h = 1.0 / (r.cfg.N - 1);
    const double c = record(r.report, "concavity").worst;
    ok = ok && c <= kConcavityC * h * h;
    worst = std::max(worst, c);
  }
  o.check(ok, "radial max second difference " + fmt("%.2e", worst) + " vs 10h^2 = " + fmt("%.2e", kConcavityC / 4e4));
  for (const PlanarRun* r : {&s.disk, &s.square}) {
    const double h = r->cfg.grid_spacing;
    double hess = -INFINITY, at_h = 0.0;
    for (const auto& sn : r->traj.snapshots) {
      const double e = planar_max_hessian_eigenvalue(sn.state);
      if (e > hess) {
        hess = e;
        at_h = sn.t;
      }
    }
    o.check(hess <= kConcavityC * h * h, r->name + " Hessian max eigenvalue " + fmt("%.2e", hess) + " at t=" +
                                             fmt("%.4f", at_h) + " vs " + fmt("%.2e", kConcavityC * h * h));
    double at_c = 0.0;
    const double turn = min_turn_all(r->traj, at_c);
    o.check(turn > 0.0, r->name + " min turn cross " + fmt("%.2e", turn) + " at t=" + fmt("%.4f", at_c) + " (" +
                            status_name(r->traj.status) + ")");
  }
  return o;
}

// 4: Neumann residual order and the non-degeneracy margin.
Outcome ac4(Shared&) {
  Outcome o;
  for (int n : {1, 2}) {
    std::vector<double> hs, res;
    bool bound = true, nondeg = true;
    std::string what = "n=" + std::to_string(n) + " residual";
    for (int N : {101, 201, 401}) {
      RadialRunConfig c = cap(n, 3.0, 1e-2, N, 0.05);
      const RadialTrajectory t = solve_radial(c);
      const InvariantReport rep = invariant_report(t, c.params);
      const double h = 1.0 / (N - 1);
      double abs_res = 0.0;
      for (const auto& sn : t.snapshots) abs_res = std::max(abs_res, sn.diag.neumann_residual);
      bound = bound && abs_res <= kNeumannC * h;
      nondeg = nondeg && record(rep, "nondegeneracy").pass;
      hs.push_back(h);
      res.push_back(abs_res);
      what += " " + fmt("%.3e", abs_res);
    }
    const double order = log_slope(hs, res);
    o.check(bound, what + " (<= C h, C=1)");
    o.check(order >= kMinOrder - kOrderRounding, "n=" + std::to_string(n) + " order " + fmt("%.12f", order));
    o.check(nondeg, "n=" + std::to_string(n) + " non-degeneracy margin >= 0");
  }
  return o;
}

// 5: structural lower bound and positive definite strip coefficients.
Outcome ac5(Shared&) {
  Outcome o;
  std::mt19937_64 rng(20261016);
  std::normal_distribution<double> N01;
  std::uniform_real_distribution<double> U(0.0, 1.0);
  for (int n : {2, 3}) {
    double lo = INFINITY, pd = INFINITY;
    for (int k = 0; k < 10000; ++k) {
      Eigen::VectorXd g(n - 1), xi(n);
      for (int i = 0; i < n - 1; ++i) g[i] = 3.0 * N01(rng);
      for (int i = 0; i < n; ++i) xi[i] = N01(rng);
      xi.normalize();
      // Valid draws satisfy g1^2 >= 1 + |g'|^2.
      const double g1 = std::sqrt(1.0 + g.squaredNorm()) * (1.0 + 2.0 * U(rng));
      lo = std::min(lo, structural_form_bound(g1, g, xi, n) - 1.0 / (2 * n));
      const PParams P = make_params(3.0 + U(rng), k % 2 ? 1e-2 : 1e-3, n);
      pd = std::min(pd, planar_strip_coefficients(g1, g, P).lambda_min);
    }
    o.check(lo >= -kStructural, "n=" + std::to_string(n) + " min Q - 1/(2n) = " + fmt("%.3e", lo));
    o.check(pd > 0.0, "n=" + std::to_string(n) + " min strip eigenvalue " + fmt("%.3e", pd));
  }
  return o;
}

// 6: comparison of nested caps, same and crossed epsilon.
Outcome ac6(Shared&) {
  Outcome o;
  const std::pair<double, double> pairs[] = {{1e-2, 1e-2}, {1e-3, 1e-3}, {1e-2, 1e-3}};
  for (auto [e_small, e_large] : pairs) {
    VerifyTolerances tol;
    tol.ordering = kOrdering;
    tol.gap_monotonicity = kGapMonotonicity;
    const ComparisonReport r =
        comparison_pair(cap(2, 3.0, e_small, 201, 0.1, 1.0), cap(2, 3.0, e_large, 201, 0.1, 1.2), tol);
    const std::string tag = "eps " + fmt("%g", e_small) + "/" + fmt("%g", e_large);
    o.check(r.all_nested, tag + " nested");
    o.check(r.max_ordering_violation <= kOrdering, tag + " ordering " + fmt("%.2e", r.max_ordering_violation));
    o.check(r.gap_monotonicity_defect <= kGapMonotonicity, tag + " gap defect " + fmt("%.2e", r.gap_monotonicity_defect));
  }
  return o;
}

// 7: scaling maps.
Outcome ac7(Shared&) {
  Outcome o;
  ScalingSpec sc;
  sc.lambda = 2.0;
  double dev[2];
  int k = 0;
  for (int N : {201, 401}) dev[k++] = scaling_test(cap(1, 3.0, 1e-2, N, 0.05), sc).deviation;
  // An exactly equivariant discretization leaves only rounding, where halving is not measurable.
  const bool exact = dev[0] <= kExactScaling && dev[1] <= kExactScaling;
  o.check(dev[0] <= kScaling, "eps_invariant deviation N=201 " + fmt("%.2e", dev[0]));
  o.check(exact || dev[1] <= 0.5 * dev[0],
          "N=401 " + fmt("%.2e", dev[1]) + (exact ? " (both at rounding level)" : " ratio " + fmt("%.2f", dev[0] / dev[1])));

  sc.mode = ScalingMode::Degenerate;
  std::vector<double> eps = {1e-2, 1e-3, kDegenerateEps}, by_eps;
  for (double e : eps) by_eps.push_back(scaling_test(cap(1, 3.0, e, 201, 0.05), sc).deviation);
  std::vector<double> hs, by_h;
  for (int N : {101, 201, 401}) {
    hs.push_back(1.0 / (N - 1));
    by_h.push_back(scaling_test(cap(1, 3.0, kDegenerateEps, N, 0.05), sc).deviation);
  }
  const double se = log_slope(eps, by_eps), sh = log_slope(hs, by_h);
  o.check(se > 0.0, "degenerate dev vs eps " + fmt("%.2e", by_eps[0]) + " " + fmt("%.2e", by_eps[1]) + " " +
                        fmt("%.2e", by_eps[2]) + " slope " + fmt("%.3f", se));
  o.check(sh > 0.0, "dev vs h (eps=1e-4) " + fmt("%.2e", by_h[0]) + " " + fmt("%.2e", by_h[1]) + " " +
                        fmt("%.2e", by_h[2]) + " slope " + fmt("%.3f", sh));
  return o;
}

// 8: monotone convergence in epsilon.
Outcome ac8(Shared&) {
  Outcome o;
  VerifyTolerances tol;
  tol.ordering = kOrdering;
  const EpsReport r = eps_monotonicity(cap(1, 3.0, 1e-2, 201, 0.05), {1e-2, 1e-3, 1e-4}, tol);
  o.check(r.pairs[0].ordering_defect <= kOrdering, "ordering 1e-2 -> 1e-3 " + fmt("%.2e", r.pairs[0].ordering_defect));
  std::string d = "sup differences";
  for (const auto& p : r.pairs) d += " " + fmt("%.3e", p.sup_difference);
  o.check(r.differences_decreasing, d);
  return o;
}

// 9: extinction before the certified bound, each run inside the time budget.
Outcome ac9(Shared&) {
  Outcome o;
  for (int n : {1, 2})
    for (double p : {3.0, 4.0})
      for (double eps : {1e-2, 1e-3}) {
        RadialRunConfig c = cap(n, p, eps, 201, 100.0);
        c.snapshot_every = 1000;
        const auto t0 = Clock::now();
        const ExtinctionReport r = extinction_bound(c);
        const double w = since(t0);
        const bool ok =
            r.verdict == Verdict::Pass && r.T_observed && *r.T_observed <= r.certificate.bound && w <= kItemSeconds;
        o.check(ok, cap_name(c) + " T " + (r.T_observed ? fmt("%.4f", *r.T_observed) : std::string("none")) + " <= " +
                        fmt("%.3f", r.certificate.bound) + " in " + fmt("%.1fs", w));
      }
  return o;
}

// 10: weak-form residual under joint refinement.
Outcome ac10(Shared&) {
  Outcome o;
  const TestFunction bumps[] = {{0.2, 0.15}, {0.45, 0.15}, {0.0, 0.3}};
  std::vector<double> hs;
  std::vector<std::vector<double>> res(3);
  for (int N : {51, 101, 201}) {
    RadialRunConfig c = cap(1, 3.0, 1e-2, N, 0.04);
    c.snapshot_every = 10;
    c.sample_times = {0.01, 0.04};
    const ProfileTrajectory pt = to_profiles(solve_radial(c), c.params);
    hs.push_back(1.0 / (N - 1));
    for (int b = 0; b < 3; ++b) res[b].push_back(weak_residual(pt, bumps[b], 0.01, 0.04));
  }
  for (int b = 0; b < 3; ++b) {
    const double order = log_slope(hs, res[b]);
    o.check(order >= kMinOrder - kOrderRounding, "bump at " + fmt("%.2f", bumps[b].center) + " residual " +
                                                     fmt("%.2e", res[b][0]) + " -> " + fmt("%.2e", res[b][2]) +
                                                     " order " + fmt("%.2f", order));
  }
  return o;
}

// 11: disk planar run against the radial n = 2 run.
Outcome ac11(Shared& s) {
  Outcome o;
  run_planar(s.disk, "disk", disk_cap_spec(), s.spent);
  o.shared_seconds = s.disk.seconds;
  const PParams& P = s.disk.cfg.params;
  RadialRunConfig c = cap(2, P.p, P.epsilon, 201, 100.0);
  c.snapshot_every = 200;
  const RadialTrajectory rt = solve_radial(c);
  const RadialSampler rs(rt);
  double worst = 0.0, at = 0.0;
  for (const auto& sn : s.disk.traj.snapshots) {
    if (sn.t > rs.t_end()) break;
    const double d = std::abs(std::sqrt(sn.diag.front_measure / std::numbers::pi) - rs.front(sn.t));
    if (d > worst) {
      worst = d;
      at = sn.t;
    }
  }
  o.check(worst <= kFrontRadius, "max |R_planar - R_radial| " + fmt("%.2e", worst) + " at t=" + fmt("%.4f", at));
  const auto Tp = extinction_time(s.disk.traj, s.disk.cfg.extinction_threshold);
  const auto Tr = extinction_time(rt, c.extinction_threshold);
  const bool ok = Tp && Tr && std::abs(*Tp - *Tr) <= kExtinctionTime;
  o.check(ok, "T planar " + (Tp ? fmt("%.4f", *Tp) : std::string("none")) + " radial " +
                  (Tr ? fmt("%.4f", *Tr) : std::string("none")));
  return o;
}

// Smooth field for the operator comparison, any dimension.
struct Manufactured {
  int n;
  double value(const Eigen::VectorXd& x) const {
    double s = 0.4, c = 1.0;
    for (int i = 0; i < n; ++i) {
      s += (0.3 - 0.1 * i) * x[i] - 0.35 * x[i] * x[i];
      c *= std::cos(0.7 * x[i] + 0.2 * i);
    }
    return s + 0.1 * c;
  }
  Eigen::VectorXd grad(const Eigen::VectorXd& x) const {
    Eigen::VectorXd g(n);
    for (int i = 0; i < n; ++i) {
      double c = 1.0;
      for (int j = 0; j < n; ++j) c *= j == i ? -0.7 * std::sin(0.7 * x[j] + 0.2 * j) : std::cos(0.7 * x[j] + 0.2 * j);
      g[i] = (0.3 - 0.1 * i) - 0.7 * x[i] + 0.1 * c;
    }
    return g;
  }
  Eigen::MatrixXd hess(const Eigen::VectorXd& x) const {
    Eigen::MatrixXd H(n, n);
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k) {
        double c = 1.0;
        for (int j = 0; j < n; ++j) {
          const double a = 0.7 * x[j] + 0.2 * j;
          if (j == i && j == k) c *= -0.49 * std::cos(a);
          else if (j == i || j == k) c *= -0.7 * std::sin(a);
          else c *= std::cos(a);
        }
        H(i, k) = 0.1 * c - (i == k ? 0.7 : 0.0);
      }
    return H;
  }
};

std::vector<double> box(const Manufactured& F, const Eigen::VectorXd& x, double h) {
  const int n = F.n;
  std::vector<double> out(box_stencil_size(n));
  std::vector<int> o(n, -1);
  for (std::size_t k = 0; k < out.size(); ++k) {
    Eigen::VectorXd y = x;
    for (int i = 0; i < n; ++i) y[i] += o[i] * h;
    out[box_stencil_index(o)] = F.value(y);
    for (int i = 0; i < n && ++o[i] > 1; ++i) o[i] = -1;
  }
  return out;
}

// 12: operator discretization order and closed-form eigenvalues.
Outcome ac12(Shared&) {
  Outcome o;
  for (int n : {1, 2, 3}) {
    const Manufactured F{n};
    double lo = INFINITY, hi = -INFINITY;
    for (double p : {3.0, 4.0})
      for (double eps : {1e-2, 1e-3}) {
        const PParams P = make_params(p, eps, n);
        Eigen::VectorXd x(n);
        for (int i = 0; i < n; ++i) x[i] = 0.1 + 0.15 * i;
        const double exact = p_laplacian_nondiv(F.grad(x), F.hess(x), P);
        std::vector<double> hs, err;
        for (double h : {0.04, 0.02, 0.01}) {
          hs.push_back(h);
          err.push_back(std::abs(p_laplacian_div_fd(box(F, x, h), h, P) - exact));
        }
        const double order = log_slope(hs, err);
        lo = std::min(lo, order);
        hi = std::max(hi, order);
      }
    o.check(lo >= kDivOrder - kDivOrderBand && hi <= kDivOrder + kDivOrderBand,
            "n=" + std::to_string(n) + " div/nondiv order " + fmt("%.3f", lo) + ".." + fmt("%.3f", hi));
  }
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  double worst = 0.0;
  for (int k = 0; k < 1000; ++k) {
    const int n = 1 + k % 3;
    const PParams P = make_params(2.1 + 2.0 * (U(rng) + 1.0), 0.05 * (U(rng) + 1.0), n);
    Eigen::VectorXd g(n);
    for (int i = 0; i < n; ++i) g[i] = U(rng);
    if (g.norm() > 1.0) g /= g.norm();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(coefficient_matrix(g, P).a);
    const CoefficientEigenvalues ce = coefficient_eigenvalues(g.squaredNorm(), P);
    std::vector<double> want(n - 1, ce.alpha);
    want.push_back(ce.big);
    std::sort(want.begin(), want.end());
    for (int i = 0; i < n; ++i) worst = std::max(worst, std::abs(es.eigenvalues()[i] - want[i]));
  }
  o.check(worst <= kEigen, "max eigenvalue mismatch " + fmt("%.2e", worst) + " over 1000 samples");
  return o;
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<Outcome(Shared&)>> items[] = {
      {"gradient bound", ac1},           {"monotone decay and shrinkage", ac2},
      {"concavity and convexity", ac3},  {"hodograph consistency", ac4},
      {"structural ellipticity", ac5},   {"comparison principle", ac6},
      {"scaling equivariance", ac7},     {"epsilon-monotone convergence", ac8},
      {"extinction bound", ac9},         {"weak-form residual", ac10},
      {"planar/radial cross-validation", ac11}, {"operator oracles", ac12}};
  Shared shared;
  int passed = 0, unexpected = 0;
  for (int k = 0; k < 12; ++k) {
    const auto t0 = Clock::now();
    const double spent_before = shared.spent;
    Outcome o;
    try {
      o = items[k].second(shared);
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("error: ") + e.what();
    }
    // Shared runs are charged in full to every item that reads them.
    const double own = since(t0) - (shared.spent - spent_before);
    const double charged = own + o.shared_seconds;
    // The extinction item budgets each run separately.
    if (k != 8 && charged > kItemSeconds) o.check(false, "over " + fmt("%.0f", kItemSeconds) + " s");
    const bool expected_red = kKnownRed.count(k + 1) > 0;
    passed += o.pass;
    unexpected += o.pass == expected_red;
    const std::string shared_note = o.shared_seconds > 0.0 ? " incl. shared runs " + fmt("%.1f", o.shared_seconds) + " s" : "";
    std::printf("AC%d %s %s: %s (%.1f s%s)%s\n", k + 1, o.pass ? "PASS" : "FAIL", items[k].first, o.detail.c_str(),
                charged, shared_note.c_str(), expected_red ? " [known]" : "");
    std::fflush(stdout);
  }
  std::printf("acceptance: %d/12 PASS, %d unexpected\n", passed, unexpected);
  return unexpected == 0 ? 0 : 1;
}
