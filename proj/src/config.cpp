#include "plap/config.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace plap {

using nlohmann::json;
using nlohmann::ordered_json;

const char* suite_name(VerifySuite s) {
  switch (s) {
    case VerifySuite::ExtinctionBound: return "extinction_bound";
    case VerifySuite::ComparisonPair: return "comparison_pair";
    case VerifySuite::Scaling: return "scaling";
    case VerifySuite::EpsMonotonicity: return "eps_monotonicity";
    case VerifySuite::Invariants: return "invariants";
    case VerifySuite::Certify: return "certify";
  }
  return "?";
}

std::optional<VerifySuite> parse_suite(std::string_view name) {
  for (VerifySuite s : {VerifySuite::ExtinctionBound, VerifySuite::ComparisonPair, VerifySuite::Scaling,
                        VerifySuite::EpsMonotonicity, VerifySuite::Invariants, VerifySuite::Certify})
    if (name == suite_name(s)) return s;
  return std::nullopt;
}

std::size_t edit_distance(std::string_view a, std::string_view b) {
  std::vector<std::size_t> prev(b.size() + 1), cur(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j)
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1)});
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

std::uint64_t fnv1a64(std::string_view data) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

namespace {

struct KeyInfo {
  const char* name;
  const char* type;  // number, integer, boolean, string, array, object
  const char* help;
};

const std::vector<KeyInfo>& top_keys() {
  static const std::vector<KeyInfo> k = {
      {"mode", "string", "radial | planar | verify:<suite>"},
      {"p", "number", "exponent, > 2"},
      {"epsilon", "number", "regularization, >= 0"},
      {"n", "integer", "dimension (radial); planar runs use 2"},
      {"initial", "string", "parabolic_cap | cone | table | disk_cap | polygon_cap"},
      {"R0", "number", "initial radius"},
      {"front_slope", "number", "|Df| imposed at the front"},
      {"table_file", "string", "CSV with header r,f (initial = table)"},
      {"polygon", "array", "[[x, y], ...] convex vertices (initial = polygon_cap)"},
      {"N", "integer", "radial grid nodes"},
      {"marker_count", "integer", "initial planar markers"},
      {"grid_spacing", "number", "planar grid spacing h"},
      {"dt_policy", "string", "cfl | fixed"},
      {"cfl_sigma", "number", "fraction of the stability limit, in (0, 1]"},
      {"dt", "number", "step for dt_policy = fixed"},
      {"t_max", "number", "final time"},
      {"extinction_threshold", "number", "run stops once max f is at or below this"},
      {"snapshot_every", "integer", "steps between snapshots"},
      {"sample_times", "array", "extra snapshot times, increasing"},
      {"semi_implicit", "boolean", "radial interior update with implicit diffusion"},
      {"max_steps", "integer", "step limit"},
      {"output_dir", "string", "output directory"},
      {"emit_plot_data", "boolean", "write plotdata/*.dat"},
      {"pair", "object", "outer run of comparison_pair (R0, epsilon, initial, front_slope, table_file, N)"},
      {"lambda", "number", "scaling factor"},
      {"scaling_mode", "string", "eps_invariant | degenerate"},
      {"eps_list", "array", "strictly decreasing epsilons"},
      {"tolerances", "object", "verification thresholds"},
      {"trajectory_dir", "string", "earlier run output, for verify:invariants"},
  };
  return k;
}

const std::vector<KeyInfo>& pair_keys() {
  static const std::vector<KeyInfo> k = {
      {"R0", "number", "initial radius"},         {"epsilon", "number", "regularization"},
      {"initial", "string", "radial initial kind"}, {"front_slope", "number", "front |Df|"},
      {"table_file", "string", "CSV r,f"},        {"N", "integer", "radial grid nodes"},
  };
  return k;
}

const std::vector<KeyInfo>& tolerance_keys() {
  static const std::vector<KeyInfo> k = {
      {"grad_C", "number", "sup |Df| <= 1 + grad_C h"},
      {"concavity_C", "number", "second difference <= concavity_C h^2"},
      {"neumann_C", "number", "radial front residual <= neumann_C h"},
      {"planar_neumann_C", "number", "planar front residual <= planar_neumann_C h"},
      {"decay", "number", "largest allowed per-step height increase"},
      {"radial_snapshot_decay", "number", "largest allowed increase between radial snapshots"},
      {"nesting", "number", "marker outside the previous polygon, in units of h"},
      {"ordering", "number", "pointwise ordering defect"},
      {"gap_monotonicity", "number", "decrease of the comparison gap"},
      {"scaling", "number", "relative scaling deviation"},
  };
  return k;
}

[[noreturn]] void schema_error(const std::string& msg) { throw Error(ErrorKind::SchemaError, msg); }

std::string join(const std::string& prefix, const std::string& key) {
  return prefix.empty() ? key : prefix + "." + key;
}

void check_keys(const json& obj, const std::vector<KeyInfo>& allowed, const std::string& prefix) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    const std::string& k = it.key();
    if (std::any_of(allowed.begin(), allowed.end(), [&](const KeyInfo& a) { return k == a.name; })) continue;
    std::string best;
    std::size_t bd = 4;
    for (const auto& a : allowed) {
      std::size_t d = edit_distance(k, a.name);
      if (d < bd) {
        bd = d;
        best = a.name;
      }
    }
    std::string msg = "unknown key '" + join(prefix, k) + "'";
    if (!best.empty()) msg += " (did you mean '" + join(prefix, best) + "'?)";
    schema_error(msg);
  }
  for (const auto& a : allowed) {
    if (!obj.contains(a.name)) continue;
    const json& v = obj.at(a.name);
    const std::string t = a.type;
    bool ok = (t == "number" && v.is_number()) || (t == "integer" && v.is_number_integer()) ||
              (t == "boolean" && v.is_boolean()) || (t == "string" && v.is_string()) ||
              (t == "array" && v.is_array()) || (t == "object" && v.is_object());
    if (!ok) schema_error("key '" + join(prefix, a.name) + "' must be of type " + t);
  }
}

// Typed access with a default; presence and type were checked by check_keys.
double num(const json& o, const char* k, double def) { return o.contains(k) ? o.at(k).get<double>() : def; }
long integer(const json& o, const char* k, long def) { return o.contains(k) ? o.at(k).get<long>() : def; }
bool flag(const json& o, const char* k, bool def) { return o.contains(k) ? o.at(k).get<bool>() : def; }
std::string str(const json& o, const char* k, const std::string& def) {
  return o.contains(k) ? o.at(k).get<std::string>() : def;
}

std::vector<double> number_list(const json& o, const char* k, const std::string& prefix) {
  std::vector<double> out;
  if (!o.contains(k)) return out;
  for (const json& v : o.at(k)) {
    if (!v.is_number()) schema_error("key '" + join(prefix, k) + "' must hold numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

void require(const json& o, const char* k, const std::string& prefix) {
  if (!o.contains(k)) schema_error("missing key '" + join(prefix, k) + "'");
}

std::optional<InitialKind> parse_initial(const std::string& s) {
  if (s == "parabolic_cap") return InitialKind::ParabolicCap;
  if (s == "cone") return InitialKind::Cone;
  if (s == "table") return InitialKind::Table;
  if (s == "disk_cap") return InitialKind::DiskCap;
  if (s == "polygon_cap") return InitialKind::PolygonCap;
  return std::nullopt;
}

std::vector<std::pair<double, double>> read_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::IoError, "cannot open table file " + path);
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorKind::ParseError, "table file " + path + " is empty");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "r,f") throw Error(ErrorKind::ParseError, "table file " + path + " must start with the header r,f");
  std::vector<std::pair<double, double>> rows;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::istringstream ls(line);
    double r, f;
    char comma;
    if (!(ls >> r >> comma >> f) || comma != ',')
      throw Error(ErrorKind::ParseError, path + ":" + std::to_string(lineno) + ": expected r,f");
    rows.emplace_back(r, f);
  }
  return rows;
}

InitialSpec parse_initial_spec(const json& o, const std::string& prefix, const std::string& base_dir,
                               const InitialSpec* fallback) {
  InitialSpec spec = fallback ? *fallback : InitialSpec{};
  if (o.contains("initial")) {
    auto k = parse_initial(o.at("initial").get<std::string>());
    if (!k) schema_error("key '" + join(prefix, "initial") + "' has an unknown value '" +
                         o.at("initial").get<std::string>() + "'");
    spec.kind = *k;
    spec.table.clear();
    spec.polygon.clear();
  }
  spec.R0 = num(o, "R0", fallback ? fallback->R0 : 1.0);
  spec.front_slope = num(o, "front_slope", fallback ? fallback->front_slope : 1.0);
  if (spec.kind == InitialKind::Table && (o.contains("table_file") || spec.table.empty())) {
    require(o, "table_file", prefix);
    std::filesystem::path p = o.at("table_file").get<std::string>();
    if (p.is_relative()) p = std::filesystem::path(base_dir) / p;
    spec.table = read_table(p.string());
  }
  if (spec.kind == InitialKind::PolygonCap) {
    require(o, "polygon", prefix);
    for (const json& v : o.at("polygon")) {
      if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
        schema_error("key '" + join(prefix, "polygon") + "' must hold [x, y] pairs");
      spec.polygon.push_back({v[0].get<double>(), v[1].get<double>()});
    }
  }
  return spec;
}

ordered_json initial_json(const InitialSpec& s) {
  ordered_json j;
  j["initial"] = initial_kind_name(s.kind);
  j["R0"] = s.R0;
  j["front_slope"] = s.front_slope;
  if (s.kind == InitialKind::Table) {
    ordered_json t = ordered_json::array();
    for (auto [r, f] : s.table) t.push_back({r, f});
    j["table"] = t;
  }
  if (s.kind == InitialKind::PolygonCap) {
    ordered_json t = ordered_json::array();
    for (Vec2 v : s.polygon) t.push_back({v.x, v.y});
    j["polygon"] = t;
  }
  return j;
}

}  // namespace

RunConfig parse_config_text(const std::string& text, const std::string& base_dir) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::ParseError, e.what());
  }
  if (!root.is_object()) throw Error(ErrorKind::ParseError, "config must be a JSON object");
  check_keys(root, top_keys(), "");
  for (const char* k : {"mode", "p", "epsilon", "initial"}) require(root, k, "");

  RunConfig cfg;
  const std::string mode = root.at("mode").get<std::string>();
  if (mode == "radial") {
    cfg.mode = RunMode::Radial;
  } else if (mode == "planar") {
    cfg.mode = RunMode::Planar;
  } else if (mode.rfind("verify:", 0) == 0) {
    auto s = parse_suite(mode.substr(7));
    if (!s) schema_error("key 'mode' names an unknown verify suite '" + mode.substr(7) + "'");
    cfg.mode = RunMode::Verify;
    cfg.suite = *s;
  } else {
    schema_error("key 'mode' must be radial, planar or verify:<suite>");
  }

  InitialSpec init = parse_initial_spec(root, "", base_dir, nullptr);
  cfg.planar = init.kind == InitialKind::DiskCap || init.kind == InitialKind::PolygonCap;
  if (cfg.mode == RunMode::Radial && cfg.planar)
    schema_error("key 'initial' is planar data; use mode planar");
  if (cfg.mode == RunMode::Planar && !cfg.planar)
    schema_error("key 'initial' is radial data; mode planar needs disk_cap or polygon_cap");

  PParams params;
  params.p = root.at("p").get<double>();
  params.epsilon = root.at("epsilon").get<double>();
  params.n = static_cast<int>(integer(root, "n", cfg.planar ? 2 : 1));
  validate(params);

  const std::string policy = str(root, "dt_policy", "cfl");
  if (policy != "cfl" && policy != "fixed") schema_error("key 'dt_policy' must be cfl or fixed");
  if (policy == "fixed") require(root, "dt", "");

  RadialRunConfig& r = cfg.radial;
  r.params = params;
  r.initial = init;
  r.N = static_cast<int>(integer(root, "N", r.N));
  r.dt_policy.kind = policy == "fixed" ? DtPolicy::Kind::Fixed : DtPolicy::Kind::Cfl;
  r.dt_policy.sigma = num(root, "cfl_sigma", r.dt_policy.sigma);
  r.dt_policy.dt = num(root, "dt", 0.0);
  r.t_max = num(root, "t_max", r.t_max);
  r.extinction_threshold = num(root, "extinction_threshold", r.extinction_threshold);
  r.snapshot_every = static_cast<int>(integer(root, "snapshot_every", r.snapshot_every));
  r.sample_times = number_list(root, "sample_times", "");
  r.semi_implicit = flag(root, "semi_implicit", false);
  r.max_steps = integer(root, "max_steps", r.max_steps);

  PlanarRunConfig& q = cfg.planar_run;
  q.params = params;
  q.initial = init;
  q.marker_count = static_cast<int>(integer(root, "marker_count", q.marker_count));
  q.grid_spacing = num(root, "grid_spacing", q.grid_spacing);
  q.dt_policy.kind = r.dt_policy.kind;
  q.dt_policy.sigma = num(root, "cfl_sigma", q.dt_policy.sigma);
  q.dt_policy.dt = r.dt_policy.dt;
  q.t_max = r.t_max;
  q.extinction_threshold = num(root, "extinction_threshold", q.extinction_threshold);
  q.snapshot_every = r.snapshot_every;
  q.sample_times = r.sample_times;
  q.max_steps = integer(root, "max_steps", q.max_steps);

  if (cfg.planar) {
    validate(q);
    if (root.contains("semi_implicit") && r.semi_implicit)
      throw Error(ErrorKind::RangeError, "semi_implicit applies to radial runs only");
  } else {
    validate(r);
  }

  cfg.pair = r;
  if (root.contains("pair")) {
    const json& pj = root.at("pair");
    check_keys(pj, pair_keys(), "pair");
    cfg.pair.initial = parse_initial_spec(pj, "pair", base_dir, &r.initial);
    cfg.pair.params.epsilon = num(pj, "epsilon", params.epsilon);
    cfg.pair.N = static_cast<int>(integer(pj, "N", r.N));
    validate(cfg.pair.params);
    validate(cfg.pair);
  }
  cfg.scaling.lambda = num(root, "lambda", 2.0);
  if (!(cfg.scaling.lambda > 0.0) || !std::isfinite(cfg.scaling.lambda))
    throw Error(ErrorKind::RangeError, "lambda must be positive");
  const std::string sm = str(root, "scaling_mode", "eps_invariant");
  if (sm == "eps_invariant") {
    cfg.scaling.mode = ScalingMode::EpsInvariant;
  } else if (sm == "degenerate") {
    cfg.scaling.mode = ScalingMode::Degenerate;
  } else {
    schema_error("key 'scaling_mode' must be eps_invariant or degenerate");
  }
  cfg.eps_list = number_list(root, "eps_list", "");
  for (std::size_t k = 0; k < cfg.eps_list.size(); ++k)
    if (!(cfg.eps_list[k] > 0.0) || (k > 0 && !(cfg.eps_list[k] < cfg.eps_list[k - 1])))
      throw Error(ErrorKind::RangeError, "eps_list must be positive and strictly decreasing");
  if (root.contains("tolerances")) {
    const json& tj = root.at("tolerances");
    check_keys(tj, tolerance_keys(), "tolerances");
    VerifyTolerances& t = cfg.tolerances;
    t.grad_C = num(tj, "grad_C", t.grad_C);
    t.concavity_C = num(tj, "concavity_C", t.concavity_C);
    t.neumann_C = num(tj, "neumann_C", t.neumann_C);
    t.planar_neumann_C = num(tj, "planar_neumann_C", t.planar_neumann_C);
    t.decay = num(tj, "decay", t.decay);
    t.radial_snapshot_decay = num(tj, "radial_snapshot_decay", t.radial_snapshot_decay);
    t.nesting = num(tj, "nesting", t.nesting);
    t.ordering = num(tj, "ordering", t.ordering);
    t.gap_monotonicity = num(tj, "gap_monotonicity", t.gap_monotonicity);
    t.scaling = num(tj, "scaling", t.scaling);
  }
  cfg.trajectory_dir = str(root, "trajectory_dir", "");
  if (!cfg.trajectory_dir.empty()) {
    std::filesystem::path p = cfg.trajectory_dir;
    if (p.is_relative()) p = std::filesystem::path(base_dir) / p;
    if (!std::filesystem::is_directory(p))
      throw Error(ErrorKind::IoError, "trajectory_dir " + p.string() + " does not exist");
    cfg.trajectory_dir = p.string();
  }
  cfg.output_dir = str(root, "output_dir", cfg.output_dir);
  cfg.emit_plot_data = flag(root, "emit_plot_data", false);

  if (cfg.mode == RunMode::Verify) {
    if (cfg.suite == VerifySuite::EpsMonotonicity) require(root, "eps_list", "");
    if (cfg.suite == VerifySuite::ComparisonPair) require(root, "pair", "");
    const bool radial_only = cfg.suite != VerifySuite::Invariants;
    if (radial_only && cfg.planar)
      schema_error(std::string("verify:") + suite_name(cfg.suite) + " needs radial initial data");
  }
  return cfg;
}

RunConfig parse_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::IoError, "cannot open config " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  std::string base = std::filesystem::path(path).parent_path().string();
  return parse_config_text(ss.str(), base.empty() ? "." : base);
}

std::string materialized_json(const RunConfig& cfg) {
  ordered_json j;
  std::string mode = cfg.mode == RunMode::Radial ? "radial" : cfg.mode == RunMode::Planar ? "planar" : "verify:";
  if (cfg.mode == RunMode::Verify) mode += suite_name(cfg.suite);
  j["mode"] = mode;
  const PParams& pp = cfg.radial.params;
  j["p"] = pp.p;
  j["epsilon"] = pp.epsilon;
  j["n"] = pp.n;
  const ordered_json init = initial_json(cfg.planar ? cfg.planar_run.initial : cfg.radial.initial);
  for (auto& [k, v] : init.items()) j[k] = v;
  const DtPolicy& dp = cfg.planar ? cfg.planar_run.dt_policy : cfg.radial.dt_policy;
  j["dt_policy"] = dp.kind == DtPolicy::Kind::Cfl ? "cfl" : "fixed";
  j["cfl_sigma"] = dp.sigma;
  j["dt"] = dp.dt;
  if (cfg.planar) {
    const PlanarRunConfig& q = cfg.planar_run;
    j["marker_count"] = q.marker_count;
    j["grid_spacing"] = q.grid_spacing;
    j["t_max"] = q.t_max;
    j["extinction_threshold"] = q.extinction_threshold;
    j["snapshot_every"] = q.snapshot_every;
    j["sample_times"] = q.sample_times;
    j["max_steps"] = q.max_steps;
  } else {
    const RadialRunConfig& r = cfg.radial;
    j["N"] = r.N;
    j["t_max"] = r.t_max;
    j["extinction_threshold"] = r.extinction_threshold;
    j["snapshot_every"] = r.snapshot_every;
    j["sample_times"] = r.sample_times;
    j["semi_implicit"] = r.semi_implicit;
    j["max_steps"] = r.max_steps;
  }
  if (cfg.mode == RunMode::Verify) {
    switch (cfg.suite) {
      case VerifySuite::ComparisonPair: {
        ordered_json pj = initial_json(cfg.pair.initial);
        pj["epsilon"] = cfg.pair.params.epsilon;
        pj["N"] = cfg.pair.N;
        j["pair"] = pj;
        break;
      }
      case VerifySuite::Scaling:
        j["lambda"] = cfg.scaling.lambda;
        j["scaling_mode"] = scaling_mode_name(cfg.scaling.mode);
        break;
      case VerifySuite::EpsMonotonicity:
        j["eps_list"] = cfg.eps_list;
        break;
      case VerifySuite::Invariants:
        j["trajectory_dir"] = cfg.trajectory_dir;
        break;
      default:
        break;
    }
    const VerifyTolerances& t = cfg.tolerances;
    j["tolerances"] = {{"grad_C", t.grad_C},
                       {"concavity_C", t.concavity_C},
                       {"neumann_C", t.neumann_C},
                       {"planar_neumann_C", t.planar_neumann_C},
                       {"decay", t.decay},
                       {"radial_snapshot_decay", t.radial_snapshot_decay},
                       {"nesting", t.nesting},
                       {"ordering", t.ordering},
                       {"gap_monotonicity", t.gap_monotonicity},
                       {"scaling", t.scaling}};
  }
  j["output_dir"] = cfg.output_dir;
  j["emit_plot_data"] = cfg.emit_plot_data;
  return j.dump(2);
}

std::string config_schema_json() {
  auto props = [](const std::vector<KeyInfo>& keys) {
    ordered_json p;
    for (const auto& k : keys) p[k.name] = {{"type", k.type}, {"description", k.help}};
    return p;
  };
  ordered_json s;
  s["$schema"] = "https://json-schema.org/draft/2020-12/schema";
  s["title"] = "plap run configuration";
  s["type"] = "object";
  s["additionalProperties"] = false;
  s["required"] = {"mode", "p", "epsilon", "initial"};
  ordered_json p = props(top_keys());
  p["mode"]["pattern"] = "^(radial|planar|verify:(extinction_bound|comparison_pair|scaling|eps_monotonicity|invariants|certify))$";
  p["p"]["exclusiveMinimum"] = 2;
  p["epsilon"]["minimum"] = 0;
  p["n"]["minimum"] = 1;
  p["n"]["default"] = 1;
  p["initial"]["enum"] = {"parabolic_cap", "cone", "table", "disk_cap", "polygon_cap"};
  p["R0"]["default"] = 1.0;
  p["front_slope"]["default"] = 1.0;
  p["N"]["default"] = RadialRunConfig{}.N;
  p["marker_count"]["default"] = PlanarRunConfig{}.marker_count;
  p["marker_count"]["minimum"] = 16;
  p["grid_spacing"]["default"] = PlanarRunConfig{}.grid_spacing;
  p["dt_policy"]["enum"] = {"cfl", "fixed"};
  p["dt_policy"]["default"] = "cfl";
  p["cfl_sigma"]["description"] = "fraction of the stability limit, in (0, 1]; default 0.4 radial, 0.9 planar";
  p["t_max"]["default"] = RadialRunConfig{}.t_max;
  p["extinction_threshold"]["description"] = "run stops once max f is at or below this; default 1e-4 radial, 0.04 planar";
  p["snapshot_every"]["default"] = RadialRunConfig{}.snapshot_every;
  p["sample_times"]["items"] = {{"type", "number"}};
  p["semi_implicit"]["default"] = false;
  p["output_dir"]["default"] = "out";
  p["emit_plot_data"]["default"] = false;
  p["polygon"]["items"] = {{"type", "array"}, {"items", {{"type", "number"}}}, {"minItems", 2}, {"maxItems", 2}};
  p["pair"]["additionalProperties"] = false;
  p["pair"]["properties"] = props(pair_keys());
  p["lambda"]["default"] = 2.0;
  p["scaling_mode"]["enum"] = {"eps_invariant", "degenerate"};
  p["scaling_mode"]["default"] = "eps_invariant";
  p["eps_list"]["items"] = {{"type", "number"}, {"exclusiveMinimum", 0}};
  p["tolerances"]["additionalProperties"] = false;
  ordered_json tp = props(tolerance_keys());
  const VerifyTolerances d;
  tp["grad_C"]["default"] = d.grad_C;
  tp["concavity_C"]["default"] = d.concavity_C;
  tp["neumann_C"]["default"] = d.neumann_C;
  tp["planar_neumann_C"]["default"] = d.planar_neumann_C;
  tp["decay"]["default"] = d.decay;
  tp["radial_snapshot_decay"]["default"] = d.radial_snapshot_decay;
  tp["nesting"]["default"] = d.nesting;
  tp["ordering"]["default"] = d.ordering;
  tp["gap_monotonicity"]["default"] = d.gap_monotonicity;
  tp["scaling"]["default"] = d.scaling;
  p["tolerances"]["properties"] = tp;
  s["properties"] = p;
  return s.dump(2);
}

}  // namespace plap
