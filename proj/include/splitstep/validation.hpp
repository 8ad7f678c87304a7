#pragma once

#include <functional>
#include <string>
#include <vector>

namespace splitstep {

struct CheckResult {
  std::string name;
  bool passed = false;
  /// One-line summary of measured values against their bounds.
  std::string detail;
  /// Extra lines reported with the result; they do not affect the verdict.
  std::vector<std::string> notes;
};

struct ValidationCheck {
  std::string name;
  std::function<CheckResult()> run;
};

/// The desk-scale oracle comparison suite, in a fixed order.
const std::vector<ValidationCheck>& validation_suite();

/// Runs every check; exceptions become failed results.
std::vector<CheckResult> run_validation(const std::function<void(const CheckResult&)>& on_result = {});

}  // namespace splitstep
