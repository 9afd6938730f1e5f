#include "plap/verify.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <sstream>

#include "plap/polygon.hpp"

namespace plap {

namespace {

double sup_operator(const InitialSpec& spec, const PParams& params, int N, double exclusion) {
  RadialState s = build_initial_radial(spec, params, N);
  std::vector<double> L = radial_operator(s, params);
  double sup = -INFINITY;
  for (int i = 0; i < N - 1; ++i) {
    if (s.radius(i) < exclusion) continue;
    sup = std::max(sup, L[i]);
  }
  return sup;
}

std::string fmt_r(double r) {
  std::ostringstream o;
  o << "r=" << r;
  return o.str();
}

std::string fmt_xy(Vec2 x) {
  std::ostringstream o;
  o << "x=" << x.x << ",y=" << x.y;
  return o.str();
}

template <class F>
auto run_async(F f) {
  return std::async(std::launch::async, std::move(f));
}

}  // namespace

SubsolutionCertificate certify_subsolution(const InitialSpec& spec, const PParams& params, int N) {
  validate(params);
  if (N < 9) throw Error(ErrorKind::InvalidArgument, "certificate needs at least 9 nodes");
  SubsolutionCertificate c;
  const RadialState s0 = build_initial_radial(spec, params, N);
  c.max_f0 = *std::max_element(s0.heights.begin(), s0.heights.end());
  // Two coarse cells around a cone tip; the coarse grid uses the same radius.
  if (spec.kind == InitialKind::Cone) c.exclusion_radius = 4.0 * s0.spacing();
  c.grid_sup = sup_operator(spec, params, N, c.exclusion_radius);
  const double coarse = sup_operator(spec, params, (N - 1) / 2 + 1, c.exclusion_radius);
  c.pad = std::abs(c.grid_sup - coarse);
  c.c = c.grid_sup + c.pad;
  if (!(c.c < 0.0)) {
    std::ostringstream o;
    o << "operator supremum " << c.c << " is not negative";
    throw Error(ErrorKind::NotStrictlyNegative, o.str());
  }
  c.bound = c.max_f0 / std::abs(c.c);
  return c;
}

RadialSampler::RadialSampler(const RadialTrajectory& traj) {
  if (traj.snapshots.empty()) throw Error(ErrorKind::InvalidArgument, "trajectory is empty");
  for (const auto& s : traj.snapshots) {
    if (!t_.empty() && !(s.t > t_.back())) continue;
    std::vector<double> r(s.state.size());
    for (int i = 0; i < s.state.size(); ++i) r[i] = s.state.radius(i);
    t_.push_back(s.t);
    R_.push_back(s.state.front_radius);
    f_.emplace_back(std::move(r), s.state.heights, 0.0);
  }
}

double RadialSampler::at(std::size_t k, double r) const {
  r = std::abs(r);
  if (r >= R_[k]) return 0.0;
  return f_[k](r);
}

double RadialSampler::value(double t, double r) const {
  if (t <= t_.front()) return at(0, r);
  if (t >= t_.back()) return at(t_.size() - 1, r);
  std::size_t k = static_cast<std::size_t>(std::upper_bound(t_.begin(), t_.end(), t) - t_.begin()) - 1;
  const double w = (t - t_[k]) / (t_[k + 1] - t_[k]);
  if (w == 0.0) return at(k, r);
  return (1.0 - w) * at(k, r) + w * at(k + 1, r);
}

double RadialSampler::front(double t) const {
  if (t <= t_.front()) return R_.front();
  if (t >= t_.back()) return R_.back();
  std::size_t k = static_cast<std::size_t>(std::upper_bound(t_.begin(), t_.end(), t) - t_.begin()) - 1;
  const double w = (t - t_[k]) / (t_[k + 1] - t_[k]);
  return (1.0 - w) * R_[k] + w * R_[k + 1];
}

void check_initial_nesting(const RadialRunConfig& small, const RadialRunConfig& large) {
  validate(small);
  validate(large);
  if (small.params.p != large.params.p || small.params.n != large.params.n)
    throw Error(ErrorKind::InitialNestingViolated, "paired runs need the same p and n");
  if (small.params.epsilon < large.params.epsilon)
    throw Error(ErrorKind::InitialNestingViolated, "the inner run needs the larger epsilon");
  const RadialState a = build_initial_radial(small.initial, small.params, small.N);
  const RadialState b = build_initial_radial(large.initial, large.params, large.N);
  if (a.front_radius > b.front_radius)
    throw Error(ErrorKind::InitialNestingViolated, "inner support is not contained in the outer one");
  const double scale = std::max(1.0, *std::max_element(b.heights.begin(), b.heights.end()));
  for (int i = 0; i < a.size(); ++i)
    if (a.heights[i] > evaluate(b, a.radius(i)) + 1e-12 * scale)
      throw Error(ErrorKind::InitialNestingViolated, "inner data exceed the outer data at " + fmt_r(a.radius(i)));
}

ComparisonReport comparison_pair(const RadialRunConfig& small, const RadialRunConfig& large,
                                 const VerifyTolerances& tol) {
  check_initial_nesting(small, large);
  auto fa = run_async([&] { return solve_radial(small); });
  auto fb = run_async([&] { return solve_radial(large); });
  const RadialTrajectory A = fa.get();
  const RadialTrajectory B = fb.get();
  const RadialSampler SB(B);
  ComparisonReport rep;
  for (const auto& snap : A.snapshots) {
    if (snap.t > SB.t_end()) break;
    const RadialState& s = snap.state;
    ComparisonRecord rec;
    rec.t = snap.t;
    rec.R_small = s.front_radius;
    rec.R_large = SB.front(snap.t);
    rec.nested = rec.R_small <= rec.R_large;
    rec.gap = INFINITY;
    for (int i = 0; i < s.size(); ++i) {
      const double d = SB.value(snap.t, s.radius(i)) - s.heights[i];
      rec.ordering_violation = std::max(rec.ordering_violation, -d);
      rec.gap = std::min(rec.gap, d);
    }
    rep.records.push_back(rec);
  }
  for (std::size_t k = 0; k < rep.records.size(); ++k) {
    const auto& r = rep.records[k];
    rep.all_nested = rep.all_nested && r.nested;
    rep.max_ordering_violation = std::max(rep.max_ordering_violation, r.ordering_violation);
    if (k > 0) rep.gap_monotonicity_defect = std::max(rep.gap_monotonicity_defect, rep.records[k - 1].gap - r.gap);
  }
  rep.pass = rep.all_nested && rep.max_ordering_violation <= tol.ordering &&
             rep.gap_monotonicity_defect <= tol.gap_monotonicity;
  return rep;
}

const char* scaling_mode_name(ScalingMode m) {
  return m == ScalingMode::EpsInvariant ? "eps_invariant" : "degenerate";
}

InitialSpec scaled_initial(const InitialSpec& spec, const ScalingSpec& sc) {
  const double lam = sc.lambda;
  if (!(lam > 0.0)) throw Error(ErrorKind::RangeError, "lambda must be positive");
  const double b = sc.mode == ScalingMode::EpsInvariant ? lam : lam * lam;
  InitialSpec out = spec;
  out.front_slope = spec.front_slope * b / lam;
  switch (spec.kind) {
    case InitialKind::ParabolicCap:
    case InitialKind::Cone:
      out.R0 = spec.R0 / b;
      break;
    case InitialKind::Table:
      for (auto& [r, f] : out.table) {
        r /= b;
        f /= lam;
      }
      break;
    default:
      throw Error(ErrorKind::InvalidArgument, "scaling needs radial initial data");
  }
  return out;
}

ScalingReport scaling_test(const RadialRunConfig& cfg, const ScalingSpec& sc, const VerifyTolerances& tol) {
  validate(cfg);
  const double lam = sc.lambda;
  const double b = sc.mode == ScalingMode::EpsInvariant ? lam : lam * lam;
  const double a = sc.mode == ScalingMode::EpsInvariant ? lam * lam : std::pow(lam, cfg.params.p + 2.0);
  RadialRunConfig scaled = cfg;
  scaled.initial = scaled_initial(cfg.initial, sc);
  scaled.t_max = cfg.t_max / a;
  scaled.extinction_threshold = cfg.extinction_threshold / lam;
  scaled.sample_times.clear();
  for (double t : cfg.sample_times) scaled.sample_times.push_back(t / a);
  auto fa = run_async([&] { return solve_radial(cfg); });
  auto fb = run_async([&] { return solve_radial(scaled); });
  const RadialTrajectory base = fa.get();
  const RadialTrajectory tr = fb.get();
  const RadialSampler SB(base);
  ScalingReport rep;
  rep.spec = sc;
  rep.window_end = std::min(tr.snapshots.back().t, SB.t_end() / a);
  const auto& h0 = tr.snapshots.front().state.heights;
  const double scale = *std::max_element(h0.begin(), h0.end());
  double dev = 0.0;
  for (const auto& snap : tr.snapshots) {
    if (snap.t > rep.window_end) break;
    const RadialState& s = snap.state;
    // Compare on the union of supports: scaled nodes plus the mapped base front.
    for (int i = 0; i < s.size(); ++i) {
      const double r = s.radius(i);
      dev = std::max(dev, std::abs(s.heights[i] - SB.value(a * snap.t, b * r) / lam));
    }
    const double Rb = SB.front(a * snap.t) / b;
    for (int i = 0; i < s.size(); ++i) {
      const double r = Rb * i / (s.size() - 1);
      dev = std::max(dev, std::abs(evaluate(s, r) - SB.value(a * snap.t, b * r) / lam));
    }
    ++rep.compared_snapshots;
  }
  rep.deviation = dev / scale;
  rep.pass = rep.deviation <= tol.scaling;
  return rep;
}

EpsReport eps_monotonicity(const RadialRunConfig& cfg, const std::vector<double>& eps_list,
                           const VerifyTolerances& tol) {
  validate(cfg);
  for (std::size_t k = 0; k < eps_list.size(); ++k) {
    if (!(eps_list[k] > 0.0)) throw Error(ErrorKind::RangeError, "eps_list entries must be positive");
    if (k > 0 && !(eps_list[k] < eps_list[k - 1]))
      throw Error(ErrorKind::RangeError, "eps_list must be strictly decreasing");
  }
  EpsReport rep;
  if (eps_list.size() < 2) return rep;
  std::vector<std::future<RadialTrajectory>> futs;
  for (double e : eps_list) {
    RadialRunConfig c = cfg;
    c.params.epsilon = e;
    futs.push_back(run_async([c] { return solve_radial(c); }));
  }
  std::vector<RadialTrajectory> runs;
  for (auto& f : futs) runs.push_back(f.get());
  for (std::size_t k = 0; k + 1 < runs.size(); ++k) {
    EpsPair pr;
    pr.eps_large = eps_list[k];
    pr.eps_small = eps_list[k + 1];
    const RadialSampler S(runs[k + 1]);
    for (const auto& snap : runs[k].snapshots) {
      if (snap.t > S.t_end()) break;
      const RadialState& s = snap.state;
      for (int i = 0; i < s.size(); ++i) {
        const double d = s.heights[i] - S.value(snap.t, s.radius(i));
        pr.ordering_defect = std::max(pr.ordering_defect, d);
        pr.sup_difference = std::max(pr.sup_difference, std::abs(d));
      }
      // Points of the smaller-eps support beyond the larger-eps front.
      const double R2 = S.front(snap.t);
      for (int i = 0; i < s.size(); ++i) {
        const double r = R2 * i / (s.size() - 1);
        pr.sup_difference = std::max(pr.sup_difference, std::abs(evaluate(s, r) - S.value(snap.t, r)));
      }
    }
    rep.pairs.push_back(pr);
  }
  for (std::size_t k = 1; k < rep.pairs.size(); ++k)
    if (!(rep.pairs[k].sup_difference < rep.pairs[k - 1].sup_difference)) rep.differences_decreasing = false;
  rep.pass = rep.differences_decreasing;
  for (const auto& p : rep.pairs) rep.pass = rep.pass && p.ordering_defect <= tol.ordering;
  return rep;
}

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

ExtinctionReport extinction_bound(const RadialRunConfig& cfg) {
  validate(cfg);
  ExtinctionReport rep;
  rep.certificate = certify_subsolution(cfg.initial, cfg.params, cfg.N);
  const RadialTrajectory tr = solve_radial(cfg);
  rep.status = tr.status;
  if (tr.status != RunStatus::Extinct) {
    rep.verdict = Verdict::Inconclusive;
    return rep;
  }
  rep.T_observed = extinction_time(tr, cfg.extinction_threshold);
  rep.verdict = rep.T_observed && *rep.T_observed <= rep.certificate.bound ? Verdict::Pass : Verdict::Fail;
  return rep;
}

bool InvariantReport::pass() const {
  return std::all_of(records.begin(), records.end(), [](const InvariantRecord& r) { return r.pass; });
}

const InvariantRecord* InvariantReport::find(const std::string& name) const {
  for (const auto& r : records)
    if (r.name == name) return &r;
  return nullptr;
}

namespace {

// Tracks the worst value of an upper-bounded quantity.
struct Worst {
  InvariantRecord rec;
  bool seen = false;

  Worst(std::string name, double tol) {
    rec.name = std::move(name);
    rec.tolerance = tol;
    rec.worst = -INFINITY;
  }
  void offer(double v, double t, const std::string& where) {
    if (!seen || v > rec.worst) {
      rec.worst = v;
      rec.time = t;
      rec.location = where;
      seen = true;
    }
  }
  InvariantRecord done() {
    if (!seen) {
      rec.worst = 0.0;
      rec.location = "none";
    }
    rec.pass = rec.worst <= rec.tolerance;
    return rec;
  }
};

void add_step_decay(const StepStats& st, const VerifyTolerances& tol, double t_end, InvariantReport& rep) {
  if (st.steps == 0) return;
  Worst w("step_decay", tol.decay);
  w.offer(st.max_increase, t_end, "solver steps");
  rep.records.push_back(w.done());
}

}  // namespace

InvariantReport invariant_report(const RadialTrajectory& traj, const PParams&, const VerifyTolerances& tol) {
  if (traj.snapshots.empty()) throw Error(ErrorKind::InvalidArgument, "trajectory is empty");
  const auto& S = traj.snapshots;
  const double h0 = S.front().state.spacing();
  Worst grad("gradient_bound", 1.0 + tol.grad_C * h0);
  Worst conc("concavity", tol.concavity_C * h0 * h0);
  Worst neu("neumann_residual", tol.neumann_C * h0);
  Worst neg("nonnegativity", 0.0);
  Worst decay("height_decay", tol.radial_snapshot_decay);
  Worst shrink("front_shrinkage", 0.0);
  for (std::size_t k = 0; k < S.size(); ++k) {
    const RadialState& s = S[k].state;
    const double t = S[k].t, h = s.spacing();
    const int N = s.size();
    const auto& f = s.heights;
    for (int i = 0; i + 1 < N; ++i) {
      const double g = std::abs(f[i + 1] - f[i]) / h;
      grad.offer(g, t, fmt_r((i + 0.5) * h));
    }
    for (int i = 0; i + 1 < N; ++i) {
      const double fm = i == 0 ? f[1] : f[i - 1];
      conc.offer((f[i + 1] - 2.0 * f[i] + fm) / (h * h), t, fmt_r(s.radius(i)));
    }
    neu.offer(S[k].diag.neumann_residual, t, fmt_r(s.front_radius));
    for (int i = 0; i < N; ++i) neg.offer(-f[i], t, fmt_r(s.radius(i)));
    if (k > 0) {
      const RadialState& p = S[k - 1].state;
      for (int i = 0; i < N; ++i) decay.offer(f[i] - evaluate(p, s.radius(i)), t, fmt_r(s.radius(i)));
      shrink.offer(s.front_radius - p.front_radius, t, fmt_r(s.front_radius));
    }
  }
  InvariantReport rep;
  for (Worst* w : {&grad, &conc, &neu, &neg, &decay, &shrink}) rep.records.push_back(w->done());
  add_step_decay(traj.stats, tol, S.back().t, rep);
  if (traj.stats.steps > 0) {
    // The solver stores margin + 5h; the check is |f_r| >= m/(2R) - 5h.
    Worst nd("nondegeneracy", 0.0);
    nd.offer(-traj.stats.min_nondegeneracy_margin, S.back().t, "strip nodes");
    rep.records.push_back(nd.done());
    Worst adv("front_advance", 0.0);
    adv.offer(traj.stats.max_front_advance, S.back().t, "solver steps");
    rep.records.push_back(adv.done());
  }
  return rep;
}

InvariantReport invariant_report(const PlanarTrajectory& traj, const PParams&, const VerifyTolerances& tol) {
  if (traj.snapshots.empty()) throw Error(ErrorKind::InvalidArgument, "trajectory is empty");
  const auto& S = traj.snapshots;
  const double h = S.front().state.field.h;
  Worst grad("gradient_bound", 1.0 + tol.grad_C * h);
  Worst conc("concavity", tol.concavity_C * h * h);
  Worst neu("neumann_residual", tol.planar_neumann_C * h);
  // Reported as the negated smallest turn cross: strictly positive turns pass.
  Worst convex("convexity", 0.0);
  Worst neg("nonnegativity", 0.0);
  Worst decay("height_decay", tol.decay);
  Worst nest("nesting", tol.nesting * h);
  Worst area("area_shrinkage", 0.0);
  bool collinear_start = false;
  for (std::size_t k = 0; k < S.size(); ++k) {
    const PlanarState& s = S[k].state;
    const Diagnostics& d = S[k].diag;
    const double t = S[k].t;
    grad.offer(d.sup_grad, t, "nodes");
    conc.offer(d.concavity_violation, t, "nodes");
    neu.offer(d.neumann_residual, t, "markers");
    const std::vector<double> turns = poly::turn_crosses(s.markers);
    const auto it = std::min_element(turns.begin(), turns.end());
    const std::string where = "marker " + std::to_string(it - turns.begin());
    if (k == 0 && *it == 0.0) {
      // Markers placed along a straight edge of the initial polygon are exactly
      // collinear; that is a property of the data, checked as >= 0.
      collinear_start = true;
    } else {
      convex.offer(*it > 0.0 ? -*it : std::max(-*it, 1e-300), t, where);
    }
    for (std::size_t id = 0; id < s.field.v.size(); ++id)
      if (s.field.v[id] < 0.0) neg.offer(-s.field.v[id], t, "node " + std::to_string(id));
    if (k > 0) {
      const PlanarState& p = S[k - 1].state;
      const GridField2D& g = s.field;
      if (p.field.v.size() == g.v.size()) {
        for (int j = 0; j < g.ny; ++j)
          for (int i = 0; i < g.nx; ++i) decay.offer(g.at(i, j) - p.field.at(i, j), t, fmt_xy(g.node(i, j)));
      }
      for (const Vec2& m : s.markers) nest.offer(-poly::inner_distance(p.markers, m), t, fmt_xy(m));
      area.offer(d.front_measure - S[k - 1].diag.front_measure, t, "polygon");
    }
  }
  InvariantReport rep;
  for (Worst* w : {&grad, &conc, &neu, &convex, &neg, &decay, &nest, &area}) rep.records.push_back(w->done());
  if (collinear_start) rep.records[3].location += " (initial snapshot has collinear markers, checked as >= 0)";
  add_step_decay(traj.stats, tol, S.back().t, rep);
  return rep;
}

}  // namespace plap
