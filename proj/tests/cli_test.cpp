#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"
#include "plap/config.hpp"
#include "plap/output.hpp"

using namespace plap;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  fs::path d = fs::temp_directory_path() / ("plap_cli_test_" + name);
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

ErrorKind parse_error_kind(const std::string& text, std::string* message = nullptr) {
  try {
    parse_config_text(text);
  } catch (const Error& e) {
    if (message) *message = e.what();
    return e.kind();
  }
  ADD_FAILURE() << "config accepted: " << text;
  return ErrorKind::InvalidArgument;
}

RunConfig radial_config(const fs::path& out, const std::string& extra = "") {
  RunConfig c = parse_config_text(R"({"mode": "radial", "p": 3, "epsilon": 0.01, "initial": "parabolic_cap",
                                      "N": 41, "t_max": 0.01, "snapshot_every": 20)" +
                                  extra + "}");
  c.output_dir = out.string();
  return c;
}

int run_binary(const std::string& args) {
  const int rc = std::system((std::string(PLAP_BIN) + " " + args + " > /dev/null 2>&1").c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

}  // namespace

TEST(Config, MinimalConfigGetsDefaults) {
  RunConfig c = parse_config_text(R"({"mode": "radial", "p": 3, "epsilon": 0.01, "initial": "parabolic_cap"})");
  EXPECT_EQ(c.mode, RunMode::Radial);
  EXPECT_FALSE(c.planar);
  EXPECT_EQ(c.radial.N, 201);
  EXPECT_EQ(c.radial.params.n, 1);
  EXPECT_EQ(c.radial.initial.R0, 1.0);
  EXPECT_EQ(c.radial.dt_policy.sigma, 0.4);
  RunConfig q = parse_config_text(R"({"mode": "planar", "p": 3, "epsilon": 0.01, "initial": "disk_cap"})");
  EXPECT_TRUE(q.planar);
  EXPECT_EQ(q.planar_run.params.n, 2);
  EXPECT_EQ(q.planar_run.marker_count, 128);
  EXPECT_EQ(q.planar_run.grid_spacing, 1.0 / 64.0);
}

TEST(Config, MaterializedJsonListsEveryEffectiveValue) {
  RunConfig c = parse_config_text(R"({"mode": "radial", "p": 3, "epsilon": 0.01, "initial": "parabolic_cap"})");
  const auto j = nlohmann::json::parse(materialized_json(c));
  for (const char* k : {"mode", "p", "epsilon", "n", "initial", "R0", "N", "t_max", "cfl_sigma", "output_dir"})
    EXPECT_TRUE(j.contains(k)) << k;
  EXPECT_EQ(materialized_json(c), materialized_json(parse_config_text(materialized_json(c))));
}

TEST(Config, RangeAndSchemaErrors) {
  std::string msg;
  EXPECT_EQ(parse_error_kind(R"({"mode": "radial", "p": 2, "epsilon": 0.01, "initial": "cone"})", &msg),
            ErrorKind::RangeError);
  EXPECT_NE(msg.find('p'), std::string::npos);
  EXPECT_EQ(parse_error_kind(R"({"mode": "radial", "p": 3, "epsilonn": 0.01, "initial": "cone"})", &msg),
            ErrorKind::SchemaError);
  EXPECT_NE(msg.find("did you mean 'epsilon'"), std::string::npos) << msg;
  EXPECT_EQ(parse_error_kind(R"({"mode": "radial", "p": "3", "epsilon": 0.01, "initial": "cone"})"),
            ErrorKind::SchemaError);
  EXPECT_EQ(parse_error_kind(R"({"mode": "radial", "p": 3, "epsilon": 0.01})"), ErrorKind::SchemaError);
  EXPECT_EQ(parse_error_kind(R"({"mode": "planar", "p": 3, "epsilon": 0.01, "initial": "cone"})"),
            ErrorKind::SchemaError);
  EXPECT_EQ(parse_error_kind(R"({"mode": "verify:nope", "p": 3, "epsilon": 0.01, "initial": "cone"})"),
            ErrorKind::SchemaError);
  EXPECT_EQ(parse_error_kind("{\"mode\": "), ErrorKind::ParseError);
}

TEST(Output, RadialSnapshotsAreSortedAndRoundTrip) {
  const fs::path out = scratch("roundtrip");
  RunConfig c = radial_config(out);
  ASSERT_EQ(run_and_emit(c, std::cerr, true), 0);
  std::ifstream in(out / "snap_0000.csv");
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "t,r,f");
  double prev = -1.0;
  int rows = 0;
  while (std::getline(in, line)) {
    double t, r, f;
    char c1, c2;
    std::istringstream(line) >> t >> c1 >> r >> c2 >> f;
    EXPECT_GT(r, prev);
    prev = r;
    ++rows;
  }
  EXPECT_EQ(rows, 41);
  EXPECT_TRUE(fs::exists(out / "manifest.json"));
  EXPECT_EQ(trajectory_kind(out.string()), "radial");

  const RadialTrajectory a = solve_radial(c.radial);
  const RadialTrajectory b = read_radial_trajectory(out.string());
  ASSERT_EQ(a.snapshots.size(), b.snapshots.size());
  for (std::size_t k = 0; k < a.snapshots.size(); ++k) {
    EXPECT_EQ(a.snapshots[k].t, b.snapshots[k].t);
    EXPECT_EQ(a.snapshots[k].state.front_radius, b.snapshots[k].state.front_radius);
    EXPECT_EQ(a.snapshots[k].state.heights, b.snapshots[k].state.heights);
    EXPECT_EQ(a.snapshots[k].diag.neumann_residual, b.snapshots[k].diag.neumann_residual);
  }
}

TEST(Output, PlanarRoundTrip) {
  const fs::path out = scratch("planar");
  RunConfig c = parse_config_text(R"({"mode": "planar", "p": 3, "epsilon": 0.01, "initial": "disk_cap",
                                      "grid_spacing": 0.03125, "marker_count": 64, "t_max": 0.003,
                                      "snapshot_every": 10})");
  c.output_dir = out.string();
  ASSERT_EQ(run_and_emit(c, std::cerr, true), 0);
  EXPECT_EQ(trajectory_kind(out.string()), "planar");
  const PlanarTrajectory a = solve_planar(c.planar_run);
  const PlanarTrajectory b = read_planar_trajectory(out.string(), c.planar_run.params);
  ASSERT_EQ(a.snapshots.size(), b.snapshots.size());
  for (std::size_t k = 0; k < a.snapshots.size(); ++k) {
    EXPECT_EQ(a.snapshots[k].state.field.v, b.snapshots[k].state.field.v);
    ASSERT_EQ(a.snapshots[k].state.markers.size(), b.snapshots[k].state.markers.size());
    EXPECT_EQ(a.snapshots[k].diag.front_measure, b.snapshots[k].diag.front_measure);
  }
}

TEST(Output, IdenticalConfigsGiveIdenticalFiles) {
  const fs::path a = scratch("det_a"), b = scratch("det_b");
  ASSERT_EQ(run_and_emit(radial_config(a), std::cerr, true), 0);
  ASSERT_EQ(run_and_emit(radial_config(b), std::cerr, true), 0);
  int compared = 0;
  for (const auto& e : fs::directory_iterator(a)) {
    const std::string name = e.path().filename().string();
    if (name == "manifest.json") continue;  // carries the wall time
    EXPECT_EQ(slurp(e.path()), slurp(b / name)) << name;
    ++compared;
  }
  EXPECT_GT(compared, 2);
  const auto ma = nlohmann::json::parse(slurp(a / "manifest.json"));
  const auto mb = nlohmann::json::parse(slurp(b / "manifest.json"));
  EXPECT_EQ(ma["config_hash"], mb["config_hash"]);
  EXPECT_EQ(ma["files"], mb["files"]);
}

TEST(Output, ExtinctionReportKeys) {
  const fs::path out = scratch("extinction");
  RunConfig c = parse_config_text(R"({"mode": "verify:extinction_bound", "p": 3, "epsilon": 0.01,
                                      "initial": "parabolic_cap", "n": 2, "N": 41})");
  c.output_dir = out.string();
  ASSERT_EQ(run_and_emit(c, std::cerr, true), 0);
  const auto j = nlohmann::json::parse(slurp(out / "report.json"));
  for (const char* k : {"T_observed", "bound", "certificate", "verdict", "pass"}) EXPECT_TRUE(j.contains(k)) << k;
  EXPECT_EQ(j["verdict"], "pass");
  EXPECT_LT(j["T_observed"].get<double>(), j["bound"].get<double>());
}

TEST(Binary, ExitCodes) {
  const fs::path dir = scratch("binary");
  auto write = [&](const std::string& name, const std::string& text) {
    std::ofstream(dir / name) << text;
    return (dir / name).string();
  };
  const std::string good = write("good.json", R"({"mode": "radial", "p": 3, "epsilon": 0.01,
      "initial": "parabolic_cap", "N": 41, "t_max": 0.005})");
  EXPECT_EQ(run_binary("run " + good + " --out " + (dir / "good").string()), 0);
  EXPECT_TRUE(fs::exists(dir / "good" / "manifest.json"));

  const std::string bad = write("bad.json", R"({"mode": "radial", "p": 2, "epsilon": 0.01, "initial": "cone"})");
  EXPECT_EQ(run_binary("run " + bad + " --out " + (dir / "bad").string()), 4);
  EXPECT_TRUE(fs::exists(dir / "bad" / "error.json"));

  // A convex initial profile cannot be certified.
  write("convex.csv", "r,f\n0,0.4\n0.5,0.4\n1,0\n");
  const std::string convex = write("convex.json", R"({"mode": "radial", "p": 3, "epsilon": 0,
      "initial": "table", "table_file": "convex.csv", "N": 41})");
  EXPECT_EQ(run_binary("verify certify " + convex + " --out " + (dir / "convex").string()), 2);

  // A trajectory with a planted height increase fails the invariants suite.
  const fs::path traj = dir / "traj";
  RunConfig c = radial_config(traj);
  ASSERT_EQ(run_and_emit(c, std::cerr, true), 0);
  {
    const fs::path snap = traj / "snap_0001.csv";
    std::istringstream in(slurp(snap));
    std::ostringstream out;
    std::string line;
    int row = 0;
    while (std::getline(in, line)) {
      if (row++ == 5) {
        const auto cut = line.rfind(',');
        line = line.substr(0, cut + 1) + format_double(std::stod(line.substr(cut + 1)) + 1e-3);
      }
      out << line << "\n";
    }
    std::ofstream(snap) << out.str();
  }
  const std::string inv = write("inv.json", R"({"mode": "radial", "p": 3, "epsilon": 0.01,
      "initial": "parabolic_cap", "trajectory_dir": "traj"})");
  EXPECT_EQ(run_binary("verify invariants " + inv + " --out " + (dir / "inv").string()), 2);
  const auto rep = nlohmann::json::parse(slurp(dir / "inv" / "report.json"));
  EXPECT_EQ(rep["pass"], false);

  EXPECT_EQ(run_binary("bogus"), 4);
  EXPECT_EQ(run_binary("schema"), 0);
}
