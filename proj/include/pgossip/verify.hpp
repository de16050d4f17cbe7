#pragma once

#include <string>
#include <vector>

namespace pgossip {

enum class VerifyScope { spectra, charpoly, failure_matrix, simulator, all };

/// Outcome of one cross-check: the worst discrepancy seen over all cases
/// against the tolerance it must stay under.
struct SuiteReport {
  std::string name;
  double worst = 0.0;
  double tolerance = 0.0;
  long cases = 0;
  bool passed = true;
};

struct VerifyReport {
  std::vector<SuiteReport> suites;

  bool passed() const {
    for (const auto& s : suites) {
      if (!s.passed) return false;
    }
    return true;
  }
};

/// Runs the closed-form vs oracle cross-checks for the given scope on
/// matrix orders 3..n_max. Random inputs come from a fixed seed.
VerifyReport verify(VerifyScope scope, int n_max);

}  // namespace pgossip
