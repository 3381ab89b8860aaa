#pragma once

// The acceptance suite: twelve criteria with runtime budgets, each a bundle
// of checks against closed forms, brute-force oracles or known values.

#include <string>
#include <vector>

#include "dynatomic/config.hpp"

namespace dynatomic {

struct CriterionResult {
  int id = 0;
  std::string title;
  /// Wall-clock seconds and the allowed maximum.
  double seconds = 0;
  double budget = 0;
  /// One line per quantity measured, e.g. "worst relative error 3.1e-14".
  std::vector<std::string> measurements;
  /// Empty iff every check passed.
  std::vector<std::string> failures;

  bool pass() const { return failures.empty() && seconds < budget; }
};

constexpr int criterion_count = 12;

/// Runs criterion `id` in 1..criterion_count; exceptions become failures.
CriterionResult run_criterion(int id, const Config& cfg = {});

/// Runs the given criteria in order, all of them when `ids` is empty.
std::vector<CriterionResult> run_acceptance(const Config& cfg = {}, const std::vector<int>& ids = {});

}  // namespace dynatomic
