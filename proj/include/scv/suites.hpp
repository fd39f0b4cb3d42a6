#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "scv/certificate.hpp"

namespace scv {

struct RunConfig {
  std::string command = "all";
  nlohmann::json domain;               // DomainSpec JSON; empty = per-suite default
  std::string weight = "z_abs2_1";     // phi
  std::string psi;                     // optional auxiliary weight
  int resolution = 0;                  // 0 = per-suite default
  uint64_t seed = 20140221;
  std::string out_dir = "out";
  nlohmann::json tolerances = nlohmann::json::object();

  static RunConfig from_json(const nlohmann::json& j);
};

struct SuiteResult {
  std::vector<Certificate> certificates;
  // CSV sweeps: file name -> full text (header + LF rows)
  std::vector<std::pair<std::string, std::string>> csv_files;
};

SuiteResult run_suite(const std::string& name, const RunConfig& config);

// Executes the configured command, writes certificates.json and CSV sweeps
// under out_dir, prints one summary line per certificate. Returns 0 when all
// certificates pass, 1 otherwise.
int run(const RunConfig& config);

std::string render_certificates(const std::vector<Certificate>& certs);

} // namespace scv
