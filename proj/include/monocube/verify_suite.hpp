#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "monocube/report.hpp"

namespace monocube {

struct SuiteOptions {
  unsigned n_max = 4;          // exhaustive enumeration bound
  int random_trials = 0;       // 0 -> per-criterion defaults
  std::uint64_t seed = 1;
  bool quick = false;          // reduced sample counts for smoke runs
};

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  std::vector<VerificationReport> reports;
};

// Runs one acceptance criterion (1..12) at the pinned tolerances.
CriterionResult run_criterion(int id, const SuiteOptions& opt = {});

// All criteria in order.
std::vector<CriterionResult> run_all_criteria(const SuiteOptions& opt = {});

}  // namespace monocube
