#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace cmt::check {

struct CheckOptions {
  std::uint64_t trials = 100'000;  // per simulated (prior, alpha) cell
  std::uint64_t seed = 42;
  /// Observable JSON to validate in the "fixture" group; the built-in
  /// door observable is used when absent.
  std::optional<std::string> fixture_text;
};

struct GroupResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct CheckReport {
  std::vector<GroupResult> groups;
  bool passed() const {
    for (const auto& g : groups)
      if (!g.passed) return false;
    return true;
  }
};

/// Groups: fixture, axioms, causality, verdicts, equal_probability, bayes_vs_simulation.
CheckReport run_check(const CheckOptions& options);

}  // namespace cmt::check
