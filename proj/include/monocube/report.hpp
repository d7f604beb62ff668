#pragma once

#include <string>

#include <json.hpp>

namespace monocube {

// One verification record: inputs, computed quantities, bound, margin, pass/fail.
struct VerificationReport {
  std::string check;
  nlohmann::json inputs = nlohmann::json::object();
  nlohmann::json quantities = nlohmann::json::object();
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;
  bool pass = false;

  nlohmann::json to_json() const {
    return {{"check", check}, {"inputs", inputs},   {"quantities", quantities},
            {"lhs", lhs},     {"rhs", rhs},         {"margin", margin},
            {"pass", pass}};
  }
};

}  // namespace monocube
