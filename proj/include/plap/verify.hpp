#pragma once

#include <optional>
#include <string>
#include <vector>

#include "plap/core.hpp"
#include "plap/interpolation.hpp"
#include "plap/planar_solver.hpp"
#include "plap/radial_solver.hpp"

namespace plap {

// Pass/fail thresholds. Resolution-scaled entries multiply h (or h^2) of the
// run being checked, taken from its first snapshot.
struct VerifyTolerances {
  double grad_C = 5.0;        // sup |Df| <= 1 + grad_C h
  double concavity_C = 10.0;  // positive second difference <= concavity_C h^2
  double neumann_C = 1.0;     // radial front residual <= neumann_C h
  double planar_neumann_C = 10.0;
  double decay = 1e-12;       // per-step height increase
  // Snapshot-to-snapshot increase on the front-fixed radial grid; the earlier
  // profile is evaluated at the later nodes through the monotone cubic.
  double radial_snapshot_decay = 1e-9;
  double nesting = 1e-9;      // times h, for marker-in-polygon distances
  double ordering = 1e-3;
  double gap_monotonicity = 1e-3;
  double scaling = 5e-2;
};

struct SubsolutionCertificate {
  double c = 0.0;          // padded grid supremum of the operator on the initial data
  double bound = 0.0;      // max f0 / |c|
  double max_f0 = 0.0;
  double grid_sup = 0.0;   // unpadded supremum at the requested resolution
  double pad = 0.0;        // |sup(N) - sup(coarse)|
  double exclusion_radius = 0.0;
};

// Radial initial data only. Nodes within exclusion_radius of a cone tip are
// skipped. Throws NotStrictlyNegative when the padded supremum is >= 0.
SubsolutionCertificate certify_subsolution(const InitialSpec& spec, const PParams& params, int N);

// Evaluates a radial trajectory between snapshots: monotone cubic in r, linear in t.
class RadialSampler {
 public:
  explicit RadialSampler(const RadialTrajectory& traj);

  double t_begin() const { return t_.front(); }
  double t_end() const { return t_.back(); }
  double value(double t, double r) const;
  double front(double t) const;

 private:
  double at(std::size_t k, double r) const;

  std::vector<double> t_, R_;
  std::vector<Pchip> f_;
};

struct ComparisonRecord {
  double t = 0.0;
  double R_small = 0.0;
  double R_large = 0.0;
  bool nested = true;
  double ordering_violation = 0.0;  // max (f - f')+
  double gap = 0.0;                 // min over the small support of f' - f
};

struct ComparisonReport {
  std::vector<ComparisonRecord> records;
  bool all_nested = true;
  double max_ordering_violation = 0.0;
  double gap_monotonicity_defect = 0.0;
  bool pass = true;
};

// Throws InitialNestingViolated unless the small data sit under the large data
// and eps_small >= eps_large.
void check_initial_nesting(const RadialRunConfig& small, const RadialRunConfig& large);
ComparisonReport comparison_pair(const RadialRunConfig& small, const RadialRunConfig& large,
                                 const VerifyTolerances& tol = {});

enum class ScalingMode { EpsInvariant, Degenerate };
const char* scaling_mode_name(ScalingMode m);

struct ScalingSpec {
  double lambda = 2.0;
  ScalingMode mode = ScalingMode::EpsInvariant;
};

// Initial data of the transformed run: f0(b x)/lambda with b = lambda (eps
// invariant) or lambda^2 (degenerate, front slope scaled by lambda).
InitialSpec scaled_initial(const InitialSpec& spec, const ScalingSpec& sc);

struct ScalingReport {
  ScalingSpec spec;
  double deviation = 0.0;  // max |f_scaled - map(f_base)| / max f_scaled(0)
  double window_end = 0.0; // in the scaled run's time
  int compared_snapshots = 0;
  bool pass = true;
};

ScalingReport scaling_test(const RadialRunConfig& cfg, const ScalingSpec& sc, const VerifyTolerances& tol = {});

struct EpsPair {
  double eps_large = 0.0;
  double eps_small = 0.0;
  double ordering_defect = 0.0;  // max (f^{eps_large} - f^{eps_small})+
  double sup_difference = 0.0;   // max |f^{eps_large} - f^{eps_small}|
};

struct EpsReport {
  std::vector<EpsPair> pairs;
  bool differences_decreasing = true;
  bool pass = true;
};

EpsReport eps_monotonicity(const RadialRunConfig& cfg, const std::vector<double>& eps_list,
                           const VerifyTolerances& tol = {});

enum class Verdict { Pass, Fail, Inconclusive };
const char* verdict_name(Verdict v);

struct ExtinctionReport {
  SubsolutionCertificate certificate;
  std::optional<double> T_observed;
  RunStatus status = RunStatus::TimeCapReached;
  Verdict verdict = Verdict::Inconclusive;
};

ExtinctionReport extinction_bound(const RadialRunConfig& cfg);

struct InvariantRecord {
  std::string name;
  double worst = 0.0;
  double tolerance = 0.0;
  double time = 0.0;
  std::string location;
  bool pass = true;
};

struct InvariantReport {
  std::vector<InvariantRecord> records;
  bool pass() const;
  const InvariantRecord* find(const std::string& name) const;
};

InvariantReport invariant_report(const RadialTrajectory& traj, const PParams& params,
                                 const VerifyTolerances& tol = {});
InvariantReport invariant_report(const PlanarTrajectory& traj, const PParams& params,
                                 const VerifyTolerances& tol = {});

}  // namespace plap
