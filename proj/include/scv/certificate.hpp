#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace scv {

// Machine-checked record of one inequality on one configuration.
// pass <=> margin >= -tolerance, margin = rhs - lhs.
struct Certificate {
  std::string check;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::string witness;
  nlohmann::ordered_json params = nlohmann::ordered_json::object();

  static Certificate make(std::string check, double lhs, double rhs, double tolerance,
                          std::string witness = "",
                          nlohmann::ordered_json params = nlohmann::ordered_json::object());

  nlohmann::ordered_json to_json() const;
  std::string summary_line() const;
};

bool all_pass(const std::vector<Certificate>& certs);

nlohmann::ordered_json certificates_to_json(const std::vector<Certificate>& certs);

} // namespace scv
