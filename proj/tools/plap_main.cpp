#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "plap/config.hpp"
#include "plap/output.hpp"

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw plap::Error(plap::ErrorKind::IoError, "cannot open config " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string base_dir(const std::string& path) {
  const std::string b = std::filesystem::path(path).parent_path().string();
  return b.empty() ? "." : b;
}

// `plap verify <suite>` replaces whatever mode the file names.
std::string with_mode(const std::string& text, const std::string& mode) {
  nlohmann::ordered_json j;
  try {
    j = nlohmann::ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw plap::Error(plap::ErrorKind::ParseError, e.what());
  }
  if (!j.is_object()) throw plap::Error(plap::ErrorKind::ParseError, "config must be a JSON object");
  j["mode"] = mode;
  return j.dump();
}

int config_failure(const plap::Error& e, const std::string& out_dir) {
  plap::write_error_json(out_dir, e);
  std::cerr << "plap: config error: " << e.what() << "\n";
  return 4;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"plap: one-phase p-Laplacian free-boundary simulator and verification harness"};
  app.require_subcommand(1);

  std::string run_path, out_dir;
  bool quiet = false;
  auto* run = app.add_subcommand("run", "run the configuration in a JSON file");
  run->add_option("config", run_path, "config.json")->required();
  run->add_option("--out", out_dir, "output directory (overrides output_dir)");
  run->add_flag("--quiet", quiet, "print only on failure");

  std::string suite, verify_path, verify_out;
  auto* verify = app.add_subcommand("verify", "run one verification suite");
  verify->add_option("suite", suite, "extinction_bound | comparison_pair | scaling | eps_monotonicity | invariants | certify")
      ->required();
  verify->add_option("config", verify_path, "config.json")->required();
  verify->add_option("--out", verify_out, "output directory (overrides output_dir)");
  verify->add_flag("--quiet", quiet, "print only on failure");

  auto* schema = app.add_subcommand("schema", "print the JSON schema of the config format");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 4;
  }

  if (schema->parsed()) {
    std::cout << plap::config_schema_json() << "\n";
    return 0;
  }

  const bool is_verify = verify->parsed();
  const std::string& path = is_verify ? verify_path : run_path;
  const std::string& out_override = is_verify ? verify_out : out_dir;
  plap::RunConfig cfg;
  try {
    if (is_verify) {
      if (!plap::parse_suite(suite))
        throw plap::Error(plap::ErrorKind::SchemaError, "unknown verify suite '" + suite + "'");
      cfg = plap::parse_config_text(with_mode(slurp(path), "verify:" + suite), base_dir(path));
    } else {
      cfg = plap::parse_config(path);
    }
  } catch (const plap::Error& e) {
    return config_failure(e, out_override.empty() ? "out" : out_override);
  }
  if (!out_override.empty()) cfg.output_dir = out_override;
  return plap::run_and_emit(cfg, std::cout, quiet);
}
