#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "plap/planar_solver.hpp"
#include "plap/radial_solver.hpp"
#include "plap/verify.hpp"

namespace plap {

enum class RunMode { Radial, Planar, Verify };

enum class VerifySuite { ExtinctionBound, ComparisonPair, Scaling, EpsMonotonicity, Invariants, Certify };
const char* suite_name(VerifySuite s);
std::optional<VerifySuite> parse_suite(std::string_view name);

// Fully materialized configuration; nothing downstream supplies defaults.
struct RunConfig {
  RunMode mode = RunMode::Radial;
  VerifySuite suite = VerifySuite::Invariants;
  // Planar geometry (disk_cap / polygon_cap); selects the solver for verify suites.
  bool planar = false;
  RadialRunConfig radial;
  PlanarRunConfig planar_run;
  // Outer run of comparison_pair.
  RadialRunConfig pair;
  ScalingSpec scaling;
  std::vector<double> eps_list;
  VerifyTolerances tolerances;
  // Trajectory written by an earlier run, for the invariants suite.
  std::string trajectory_dir;
  std::string output_dir = "out";
  bool emit_plot_data = false;
};

// Throws ParseError, SchemaError (with the key path) or RangeError.
RunConfig parse_config(const std::string& path);
// Relative file references resolve against base_dir.
RunConfig parse_config_text(const std::string& text, const std::string& base_dir = ".");

// Canonical JSON of every key with its effective value.
std::string materialized_json(const RunConfig& cfg);
// JSON Schema of the config format.
std::string config_schema_json();

std::size_t edit_distance(std::string_view a, std::string_view b);
std::uint64_t fnv1a64(std::string_view data);

}  // namespace plap
