#include "plap/output.hpp"

#include <algorithm>
#include <chrono>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <regex>
#include <sstream>

#include "json.hpp"
#include "plap/polygon.hpp"

namespace plap {

namespace fs = std::filesystem;
using nlohmann::json;
using nlohmann::ordered_json;

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

constexpr const char* kVersion = "0.1.0";

// JSON has no infinities; they travel as strings.
ordered_json jnum(double v) {
  if (std::isnan(v)) return "NaN";
  if (std::isinf(v)) return v > 0 ? "Infinity" : "-Infinity";
  return v;
}

double from_jnum(const json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "Infinity") return INFINITY;
    if (s == "-Infinity") return -INFINITY;
    if (s == "NaN") return NAN;
  }
  throw Error(ErrorKind::ParseError, "expected a number in diagnostics.json");
}

void write_text(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  if (!out) throw Error(ErrorKind::IoError, "cannot write " + p.string());
  out << text;
  if (!out) throw Error(ErrorKind::IoError, "write failed for " + p.string());
}

std::string read_text(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw Error(ErrorKind::IoError, "cannot open " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Removes files an earlier run may have left, so readers never mix runs.
void clear_outputs(const fs::path& dir) {
  static const std::regex pat(R"((snap|front)_\d+\.csv|diagnostics\.json|report\.json|manifest\.json|error\.json)");
  if (!fs::is_directory(dir)) return;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.is_regular_file() && std::regex_match(e.path().filename().string(), pat)) fs::remove(e.path());
  fs::remove_all(dir / "plotdata");
}

ordered_json stats_json(const StepStats& s) {
  return {{"steps", s.steps},
          {"max_increase", jnum(s.max_increase)},
          {"max_front_advance", jnum(s.max_front_advance)},
          {"min_nondegeneracy_margin", jnum(s.min_nondegeneracy_margin)},
          {"min_clipped", jnum(s.min_clipped)},
          {"min_dt", jnum(s.min_dt)},
          {"max_dt", jnum(s.max_dt)},
          {"thin_strip_steps", s.thin_strip_steps}};
}

StepStats stats_from(const json& j) {
  StepStats s;
  s.steps = j.at("steps").get<long>();
  s.max_increase = from_jnum(j.at("max_increase"));
  s.max_front_advance = from_jnum(j.at("max_front_advance"));
  s.min_nondegeneracy_margin = from_jnum(j.at("min_nondegeneracy_margin"));
  s.min_clipped = from_jnum(j.at("min_clipped"));
  s.min_dt = from_jnum(j.at("min_dt"));
  s.max_dt = from_jnum(j.at("max_dt"));
  s.thin_strip_steps = j.at("thin_strip_steps").get<long>();
  return s;
}

ordered_json diag_json(std::size_t index, const Diagnostics& d, bool planar) {
  ordered_json j = {{"index", index},
                    {"t", jnum(d.time)},
                    {"sup_grad", jnum(d.sup_grad)},
                    {"neumann_residual", jnum(d.neumann_residual)},
                    {"concavity_violation", jnum(d.concavity_violation)},
                    {"front_measure", jnum(d.front_measure)},
                    {"max_height", jnum(d.max_height)}};
  if (planar) {
    j["perimeter"] = jnum(d.perimeter);
    j["max_curvature"] = jnum(d.max_curvature);
    j["min_turn"] = jnum(d.min_turn);
    j["corner_markers"] = d.corner_markers;
  }
  return j;
}

std::string snap_name(const char* stem, std::size_t k) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%s_%04zu.csv", stem, k);
  return buf;
}

struct CsvRows {
  std::vector<std::vector<double>> rows;
};

CsvRows read_csv(const fs::path& p, const std::string& header) {
  std::ifstream in(p);
  if (!in) throw Error(ErrorKind::IoError, "cannot open " + p.string());
  std::string line;
  std::getline(in, line);
  if (line != header) throw Error(ErrorKind::ParseError, p.string() + ": expected header " + header);
  const std::size_t cols = static_cast<std::size_t>(std::count(header.begin(), header.end(), ',')) + 1;
  CsvRows out;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::size_t pos = 0;
    while (pos <= line.size()) {
      std::size_t end = line.find(',', pos);
      if (end == std::string::npos) end = line.size();
      try {
        row.push_back(std::stod(line.substr(pos, end - pos)));
      } catch (const std::exception&) {
        throw Error(ErrorKind::ParseError, p.string() + ": bad number in '" + line + "'");
      }
      pos = end + 1;
    }
    if (row.size() != cols) throw Error(ErrorKind::ParseError, p.string() + ": wrong column count");
    out.rows.push_back(std::move(row));
  }
  return out;
}

std::vector<fs::path> indexed_files(const fs::path& dir, const std::string& stem) {
  std::vector<fs::path> out;
  const std::regex pat(stem + R"(_\d+\.csv)");
  for (const auto& e : fs::directory_iterator(dir))
    if (e.is_regular_file() && std::regex_match(e.path().filename().string(), pat)) out.push_back(e.path());
  std::sort(out.begin(), out.end());
  return out;
}

json read_json(const fs::path& p) {
  try {
    return json::parse(read_text(p));
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::ParseError, p.string() + ": " + e.what());
  }
}

void write_plot(const fs::path& dir, const std::string& name, const std::vector<std::pair<double, double>>& xy) {
  std::string s;
  for (auto [x, y] : xy) s += format_double(x) + " " + format_double(y) + "\n";
  write_text(dir / name, s);
}

template <class Traj>
void write_plotdata(const fs::path& dir, const Traj& traj) {
  const fs::path pd = dir / "plotdata";
  fs::create_directories(pd);
  std::vector<std::pair<double, double>> fm, mh, sg, nr;
  for (const auto& s : traj.snapshots) {
    fm.emplace_back(s.t, s.diag.front_measure);
    mh.emplace_back(s.t, s.diag.max_height);
    sg.emplace_back(s.t, s.diag.sup_grad);
    nr.emplace_back(s.t, s.diag.neumann_residual);
  }
  write_plot(pd, "front_measure.dat", fm);
  write_plot(pd, "max_height.dat", mh);
  write_plot(pd, "sup_grad.dat", sg);
  write_plot(pd, "neumann_residual.dat", nr);
}

}  // namespace

void write_radial_trajectory(const std::string& dir_s, const RadialTrajectory& traj, double front_slope) {
  const fs::path dir = dir_s;
  fs::create_directories(dir);
  ordered_json snaps = ordered_json::array();
  for (std::size_t k = 0; k < traj.snapshots.size(); ++k) {
    const auto& s = traj.snapshots[k];
    std::string text = "t,r,f\n";
    const std::string t = format_double(s.t);
    for (int i = 0; i < s.state.size(); ++i)
      text += t + "," + format_double(s.state.radius(i)) + "," + format_double(s.state.heights[i]) + "\n";
    write_text(dir / snap_name("snap", k), text);
    snaps.push_back(diag_json(k, s.diag, false));
  }
  ordered_json d = {{"kind", "radial"},
                    {"status", status_name(traj.status)},
                    {"front_slope", jnum(front_slope)},
                    {"stats", stats_json(traj.stats)},
                    {"snapshots", snaps}};
  write_text(dir / "diagnostics.json", d.dump(2) + "\n");
}

void write_planar_trajectory(const std::string& dir_s, const PlanarTrajectory& traj, double front_slope) {
  const fs::path dir = dir_s;
  fs::create_directories(dir);
  ordered_json snaps = ordered_json::array();
  for (std::size_t k = 0; k < traj.snapshots.size(); ++k) {
    const auto& s = traj.snapshots[k];
    const GridField2D& g = s.state.field;
    const std::string t = format_double(s.t);
    std::string text = "t,x,y,f\n";
    for (int i = 0; i < g.nx; ++i)
      for (int j = 0; j < g.ny; ++j)
        if (g.at(i, j) > 0.0)
          text += t + "," + format_double(g.x(i)) + "," + format_double(g.y(j)) + "," + format_double(g.at(i, j)) + "\n";
    write_text(dir / snap_name("snap", k), text);
    std::string fr = "t,x,y\n";
    for (const Vec2& m : s.state.markers) fr += t + "," + format_double(m.x) + "," + format_double(m.y) + "\n";
    write_text(dir / snap_name("front", k), fr);
    snaps.push_back(diag_json(k, s.diag, true));
  }
  ordered_json grid;
  if (!traj.snapshots.empty()) {
    const GridField2D& g = traj.snapshots.front().state.field;
    grid = {{"h", g.h}, {"nx", g.nx}, {"ny", g.ny}, {"ix0", g.ix0}, {"iy0", g.iy0}};
  }
  ordered_json d = {{"kind", "planar"},
                    {"status", status_name(traj.status)},
                    {"front_slope", jnum(front_slope)},
                    {"grid", grid},
                    {"stats", stats_json(traj.stats)},
                    {"snapshots", snaps}};
  write_text(dir / "diagnostics.json", d.dump(2) + "\n");
}

std::string trajectory_kind(const std::string& dir) {
  const json d = read_json(fs::path(dir) / "diagnostics.json");
  if (!d.contains("kind") || !d.at("kind").is_string())
    throw Error(ErrorKind::ParseError, "diagnostics.json has no kind");
  return d.at("kind").get<std::string>();
}

namespace {

RunStatus status_from(const json& d) {
  return d.at("status").get<std::string>() == "Extinct" ? RunStatus::Extinct : RunStatus::TimeCapReached;
}

}  // namespace

RadialTrajectory read_radial_trajectory(const std::string& dir_s) {
  const fs::path dir = dir_s;
  const json d = read_json(dir / "diagnostics.json");
  if (d.value("kind", "") != "radial") throw Error(ErrorKind::ParseError, dir_s + " does not hold a radial run");
  const double slope = from_jnum(d.at("front_slope"));
  RadialTrajectory traj;
  traj.status = status_from(d);
  traj.stats = stats_from(d.at("stats"));
  for (const fs::path& p : indexed_files(dir, "snap")) {
    CsvRows c = read_csv(p, "t,r,f");
    if (c.rows.size() < 3) throw Error(ErrorKind::ParseError, p.string() + ": too few rows");
    RadialState s;
    s.time = c.rows.front()[0];
    s.front_radius = c.rows.back()[1];
    for (const auto& r : c.rows) s.heights.push_back(r[2]);
    traj.snapshots.push_back({s.time, s, radial_diagnostics(s, slope)});
  }
  return traj;
}

PlanarTrajectory read_planar_trajectory(const std::string& dir_s, const PParams& params) {
  const fs::path dir = dir_s;
  const json d = read_json(dir / "diagnostics.json");
  if (d.value("kind", "") != "planar") throw Error(ErrorKind::ParseError, dir_s + " does not hold a planar run");
  const double slope = from_jnum(d.at("front_slope"));
  const json& gj = d.at("grid");
  GridField2D grid;
  grid.h = gj.at("h").get<double>();
  grid.nx = gj.at("nx").get<int>();
  grid.ny = gj.at("ny").get<int>();
  grid.ix0 = gj.at("ix0").get<int>();
  grid.iy0 = gj.at("iy0").get<int>();
  PlanarTrajectory traj;
  traj.status = status_from(d);
  traj.stats = stats_from(d.at("stats"));
  const auto snaps = indexed_files(dir, "snap");
  const auto fronts = indexed_files(dir, "front");
  if (snaps.size() != fronts.size()) throw Error(ErrorKind::ParseError, "snapshot and front files do not pair up");
  for (std::size_t k = 0; k < snaps.size(); ++k) {
    PlanarState s;
    s.field = grid;
    s.field.v.assign(static_cast<std::size_t>(grid.nx) * grid.ny, 0.0);
    CsvRows c = read_csv(snaps[k], "t,x,y,f");
    CsvRows f = read_csv(fronts[k], "t,x,y");
    if (f.rows.size() < 3) throw Error(ErrorKind::ParseError, fronts[k].string() + ": too few markers");
    s.time = f.rows.front()[0];
    for (const auto& r : c.rows) {
      const int i = static_cast<int>(std::lround(r[1] / grid.h)) - grid.ix0;
      const int j = static_cast<int>(std::lround(r[2] / grid.h)) - grid.iy0;
      if (!grid.in_range(i, j)) throw Error(ErrorKind::ParseError, snaps[k].string() + ": node outside the grid");
      s.field.at(i, j) = r[3];
    }
    for (const auto& r : f.rows) s.markers.push_back({r[1], r[2]});
    traj.snapshots.push_back({s.time, s, planar_diagnostics(s, params, slope)});
  }
  return traj;
}

void write_error_json(const std::string& dir_s, const Error& e) {
  const fs::path dir = dir_s;
  std::error_code ec;
  fs::create_directories(dir, ec);
  ordered_json j = {{"error", kind_name(e.kind())}, {"message", e.detail()}};
  j["time"] = e.time() ? jnum(*e.time()) : ordered_json(nullptr);
  std::ofstream out(dir / "error.json", std::ios::binary);
  out << j.dump(2) << "\n";
}

namespace {

ordered_json invariant_json(const InvariantReport& r) {
  ordered_json recs = ordered_json::array();
  for (const auto& x : r.records)
    recs.push_back({{"name", x.name},
                    {"worst", jnum(x.worst)},
                    {"tolerance", jnum(x.tolerance)},
                    {"time", jnum(x.time)},
                    {"location", x.location},
                    {"pass", x.pass}});
  return {{"records", recs}, {"pass", r.pass()}};
}

ordered_json certificate_json(const SubsolutionCertificate& c) {
  return {{"c", jnum(c.c)},
          {"bound", jnum(c.bound)},
          {"max_f0", jnum(c.max_f0)},
          {"grid_sup", jnum(c.grid_sup)},
          {"pad", jnum(c.pad)},
          {"exclusion_radius", jnum(c.exclusion_radius)}};
}

struct SuiteResult {
  ordered_json report;
  bool pass = true;
  bool inconclusive = false;
  std::string summary;
};

SuiteResult run_suite(const RunConfig& cfg, const fs::path& out) {
  SuiteResult res;
  ordered_json& rep = res.report;
  rep["suite"] = suite_name(cfg.suite);
  std::ostringstream sum;
  switch (cfg.suite) {
    case VerifySuite::Certify: {
      try {
        const SubsolutionCertificate c = certify_subsolution(cfg.radial.initial, cfg.radial.params, cfg.radial.N);
        rep["certificate"] = certificate_json(c);
        rep["pass"] = true;
        sum << "c=" << c.c << " bound=" << c.bound;
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::NotStrictlyNegative) throw;
        rep["error"] = kind_name(e.kind());
        rep["message"] = e.detail();
        rep["pass"] = false;
        res.pass = false;
        sum << e.what();
      }
      break;
    }
    case VerifySuite::ExtinctionBound: {
      ExtinctionReport r;
      try {
        r = extinction_bound(cfg.radial);
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::NotStrictlyNegative) throw;
        rep["error"] = kind_name(e.kind());
        rep["message"] = e.detail();
        rep["pass"] = false;
        res.pass = false;
        sum << e.what();
        break;
      }
      rep["T_observed"] = r.T_observed ? jnum(*r.T_observed) : ordered_json(nullptr);
      rep["bound"] = jnum(r.certificate.bound);
      rep["certificate"] = certificate_json(r.certificate);
      rep["status"] = status_name(r.status);
      rep["verdict"] = verdict_name(r.verdict);
      rep["pass"] = r.verdict == Verdict::Inconclusive ? ordered_json(nullptr) : ordered_json(r.verdict == Verdict::Pass);
      res.pass = r.verdict != Verdict::Fail;
      res.inconclusive = r.verdict == Verdict::Inconclusive;
      sum << "T=" << (r.T_observed ? *r.T_observed : NAN) << " bound=" << r.certificate.bound;
      break;
    }
    case VerifySuite::ComparisonPair: {
      const ComparisonReport r = comparison_pair(cfg.radial, cfg.pair, cfg.tolerances);
      ordered_json recs = ordered_json::array();
      for (const auto& x : r.records)
        recs.push_back({{"t", jnum(x.t)},
                        {"R_small", jnum(x.R_small)},
                        {"R_large", jnum(x.R_large)},
                        {"nested", x.nested},
                        {"ordering_violation", jnum(x.ordering_violation)},
                        {"gap", jnum(x.gap)}});
      rep["all_nested"] = r.all_nested;
      rep["max_ordering_violation"] = jnum(r.max_ordering_violation);
      rep["gap_monotonicity_defect"] = jnum(r.gap_monotonicity_defect);
      rep["pass"] = r.pass;
      rep["records"] = recs;
      res.pass = r.pass;
      sum << "ordering=" << r.max_ordering_violation << " gap_defect=" << r.gap_monotonicity_defect;
      break;
    }
    case VerifySuite::Scaling: {
      const ScalingReport r = scaling_test(cfg.radial, cfg.scaling, cfg.tolerances);
      rep["lambda"] = jnum(r.spec.lambda);
      rep["mode"] = scaling_mode_name(r.spec.mode);
      rep["deviation"] = jnum(r.deviation);
      rep["window_end"] = jnum(r.window_end);
      rep["compared_snapshots"] = r.compared_snapshots;
      rep["pass"] = r.pass;
      res.pass = r.pass;
      sum << "deviation=" << r.deviation;
      break;
    }
    case VerifySuite::EpsMonotonicity: {
      const EpsReport r = eps_monotonicity(cfg.radial, cfg.eps_list, cfg.tolerances);
      ordered_json pairs = ordered_json::array();
      for (const auto& p : r.pairs)
        pairs.push_back({{"eps_large", jnum(p.eps_large)},
                         {"eps_small", jnum(p.eps_small)},
                         {"ordering_defect", jnum(p.ordering_defect)},
                         {"sup_difference", jnum(p.sup_difference)}});
      rep["pairs"] = pairs;
      rep["differences_decreasing"] = r.differences_decreasing;
      rep["pass"] = r.pass;
      res.pass = r.pass;
      sum << r.pairs.size() << " pairs";
      break;
    }
    case VerifySuite::Invariants: {
      InvariantReport r;
      if (!cfg.trajectory_dir.empty()) {
        const std::string kind = trajectory_kind(cfg.trajectory_dir);
        if (kind == "planar") {
          r = invariant_report(read_planar_trajectory(cfg.trajectory_dir, cfg.planar_run.params), cfg.planar_run.params,
                               cfg.tolerances);
        } else {
          r = invariant_report(read_radial_trajectory(cfg.trajectory_dir), cfg.radial.params, cfg.tolerances);
        }
      } else if (cfg.planar) {
        const PlanarTrajectory tr = solve_planar(cfg.planar_run);
        write_planar_trajectory(out.string(), tr, cfg.planar_run.initial.front_slope);
        r = invariant_report(tr, cfg.planar_run.params, cfg.tolerances);
      } else {
        const RadialTrajectory tr = solve_radial(cfg.radial);
        write_radial_trajectory(out.string(), tr, cfg.radial.initial.front_slope);
        r = invariant_report(tr, cfg.radial.params, cfg.tolerances);
      }
      rep.update(invariant_json(r));
      res.pass = r.pass();
      int failed = 0;
      for (const auto& x : r.records) failed += !x.pass;
      sum << r.records.size() - failed << "/" << r.records.size() << " invariants hold";
      for (const auto& x : r.records)
        if (!x.pass) sum << "; " << x.name << " fails at t=" << x.time;
      break;
    }
  }
  res.summary = sum.str();
  return res;
}

std::vector<std::string> list_files(const fs::path& dir) {
  std::vector<std::string> out;
  for (const auto& e : fs::recursive_directory_iterator(dir))
    if (e.is_regular_file()) out.push_back(fs::relative(e.path(), dir).generic_string());
  std::sort(out.begin(), out.end());
  return out;
}

void write_manifest(const fs::path& dir, const RunConfig& cfg, double wall) {
  const std::string canon = materialized_json(cfg);
  // Where the files go does not change them, so the hash leaves output_dir out.
  RunConfig located = cfg;
  located.output_dir.clear();
  char hash[32];
  std::snprintf(hash, sizeof hash, "%016" PRIx64, fnv1a64(materialized_json(located)));
  ordered_json m = {{"artifact", "plap"},
                    {"version", kVersion},
                    {"config_hash", std::string("fnv1a64:") + hash},
                    {"config", ordered_json::parse(canon)},
                    {"wall_time_s", wall}};
  auto files = list_files(dir);
  files.erase(std::remove(files.begin(), files.end(), "manifest.json"), files.end());
  m["files"] = files;
  write_text(dir / "manifest.json", m.dump(2) + "\n");
}

}  // namespace

int run_and_emit(const RunConfig& cfg, std::ostream& log, bool quiet) {
  const fs::path out = cfg.output_dir;
  const auto t0 = std::chrono::steady_clock::now();
  int code = 0;
  std::string summary;
  try {
    fs::create_directories(out);
    clear_outputs(out);
    if (cfg.mode == RunMode::Radial) {
      const RadialTrajectory tr = solve_radial(cfg.radial);
      write_radial_trajectory(out.string(), tr, cfg.radial.initial.front_slope);
      if (cfg.emit_plot_data) write_plotdata(out, tr);
      const auto T = extinction_time(tr, cfg.radial.extinction_threshold);
      std::ostringstream s;
      s << "radial " << status_name(tr.status) << " t=" << (tr.snapshots.empty() ? 0.0 : tr.snapshots.back().t);
      if (T) s << " T=" << *T;
      s << " steps=" << tr.stats.steps << " snapshots=" << tr.snapshots.size();
      summary = s.str();
    } else if (cfg.mode == RunMode::Planar) {
      const PlanarTrajectory tr = solve_planar(cfg.planar_run);
      write_planar_trajectory(out.string(), tr, cfg.planar_run.initial.front_slope);
      if (cfg.emit_plot_data) write_plotdata(out, tr);
      const auto T = extinction_time(tr, cfg.planar_run.extinction_threshold);
      std::ostringstream s;
      s << "planar " << status_name(tr.status) << " t=" << (tr.snapshots.empty() ? 0.0 : tr.snapshots.back().t);
      if (T) s << " T=" << *T;
      s << " steps=" << tr.stats.steps << " snapshots=" << tr.snapshots.size();
      summary = s.str();
    } else {
      SuiteResult r = run_suite(cfg, out);
      write_text(out / "report.json", r.report.dump(2) + "\n");
      const char* label = r.inconclusive ? " INCONCLUSIVE " : r.pass ? " PASS " : " FAIL ";
      summary = std::string("verify:") + suite_name(cfg.suite) + label + r.summary;
      code = r.pass ? 0 : 2;
    }
  } catch (const Error& e) {
    write_error_json(out.string(), e);
    const bool config_side = e.kind() == ErrorKind::InitialNestingViolated || e.kind() == ErrorKind::SchemaError ||
                             e.kind() == ErrorKind::RangeError || e.kind() == ErrorKind::ParseError;
    code = config_side ? 4 : 3;
    summary = std::string("error ") + e.what();
  } catch (const std::exception& e) {
    write_error_json(out.string(), Error(ErrorKind::IoError, e.what()));
    code = 3;
    summary = std::string("error ") + e.what();
  }
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  try {
    write_manifest(out, cfg, wall);
  } catch (const std::exception& e) {
    if (code == 0) code = 3;
    summary += std::string("; manifest: ") + e.what();
  }
  if (!quiet || code != 0) log << "plap: " << summary << "\n";
  return code;
}

}  // namespace plap
