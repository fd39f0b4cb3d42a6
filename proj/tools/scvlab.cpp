#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "scv/suites.hpp"

namespace {

const char* kCommands[] = {"solve-dbar", "cauchy", "psh",     "hull", "operator",
                           "hormander",  "ot",     "lp",      "weights", "all"};

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"scvlab: certificate suites for weighted dbar solvers and extension estimates"};
  std::string command;
  std::string config_path;
  std::string out_dir;
  int res = -1;
  long long seed = -1;

  app.add_option("command", command, "suite to run")
      ->required()
      ->check(CLI::IsMember(std::vector<std::string>(std::begin(kCommands), std::end(kCommands))));
  app.add_option("--config", config_path, "JSON run configuration");
  app.add_option("--out", out_dir, "output directory");
  app.add_option("--res", res, "override grid resolution");
  app.add_option("--seed", seed, "override RNG seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  scv::RunConfig cfg;
  if (!config_path.empty()) {
    std::ifstream f(config_path);
    if (!f) {
      std::cerr << "error: cannot open config " << config_path << "\n";
      return 2;
    }
    nlohmann::json j;
    try {
      f >> j;
      cfg = scv::RunConfig::from_json(j);
    } catch (const std::exception& e) {
      std::cerr << "error: malformed config: " << e.what() << "\n";
      return 2;
    }
  }
  cfg.command = command;
  if (res > 0) cfg.resolution = res;
  if (seed >= 0) cfg.seed = static_cast<uint64_t>(seed);
  if (!out_dir.empty()) cfg.out_dir = out_dir;

  try {
    return scv::run(cfg);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
