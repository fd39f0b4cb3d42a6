#include "scv/certificate.hpp"

#include <cstdio>

namespace scv {

Certificate Certificate::make(std::string check, double lhs, double rhs, double tolerance,
                              std::string witness, nlohmann::ordered_json params) {
  Certificate c;
  c.check = std::move(check);
  c.lhs = lhs;
  c.rhs = rhs;
  c.margin = rhs - lhs;
  c.tolerance = tolerance;
  c.pass = c.margin >= -tolerance;
  c.witness = std::move(witness);
  c.params = std::move(params);
  return c;
}

nlohmann::ordered_json Certificate::to_json() const {
  nlohmann::ordered_json j;
  j["check"] = check;
  j["lhs"] = lhs;
  j["rhs"] = rhs;
  j["margin"] = margin;
  j["tolerance"] = tolerance;
  j["pass"] = pass;
  j["witness"] = witness;
  j["params"] = params;
  return j;
}

std::string Certificate::summary_line() const {
  char buf[160];
  std::snprintf(buf, sizeof(buf), "%-52s %s  margin=%.17g", check.c_str(),
                pass ? "PASS" : "FAIL", margin);
  return std::string(buf);
}

bool all_pass(const std::vector<Certificate>& certs) {
  for (const auto& c : certs)
    if (!c.pass) return false;
  return true;
}

nlohmann::ordered_json certificates_to_json(const std::vector<Certificate>& certs) {
  auto arr = nlohmann::ordered_json::array();
  for (const auto& c : certs) arr.push_back(c.to_json());
  return arr;
}

} // namespace scv
