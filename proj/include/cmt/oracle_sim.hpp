#pragma once

#include "cmt/problems.hpp"
#include "cmt/scalar.hpp"
#include "cmt/session.hpp"
#include "cmt/state_space.hpp"

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace cmt::sim {

/// One generative engine for both stories: draw the true state (car door /
/// spared prisoner) from `prior`, then let the host / emperor name a party
/// that is neither `chosen` nor the true state, tossing an alpha-coin when
/// both remaining parties qualify.
struct SimConfig {
  problems::Triple prior{Rational(1, 3), Rational(1, 3), Rational(1, 3)};
  Rational alpha{1, 2};
  std::uint64_t trials = 1'000'000;
  std::uint64_t seed = 0;
  unsigned workers = 1;
  problems::Labels labels{"A1", "A2", "A3"};
  std::size_t chosen = 0;
};

struct SimReport {
  problems::Labels labels;
  std::array<std::string, 3> utterances{"1", "2", "3"};
  std::size_t chosen = 0;
  std::uint64_t trials = 0;
  std::array<std::array<std::uint64_t, 3>, 3> counts{};  // [true state][utterance]
  std::uint64_t named_chosen = 0;  // host opened the picked door / emperor named the asker
  std::uint64_t named_true = 0;    // host revealed the car / emperor named the spared one

  std::size_t utterance_index(std::string_view utterance) const;
  std::uint64_t utterance_count(std::string_view utterance) const;
  double utterance_frequency(std::string_view utterance) const;
  /// Empirical P(true = state index | utterance); NaN when never observed.
  double conditional_frequency(std::size_t state, std::string_view utterance) const;

  friend bool operator==(const SimReport&, const SimReport&) = default;
};

/// Deterministic in `config`: trials are split into fixed blocks with their
/// own derived seeds, so the report does not depend on `workers`.
SimReport simulate(const SimConfig& config);

/// z = (freq − p) / sqrt(p(1−p)/n) per state, conditioning on `utterance`.
/// When p is 0 or 1 the score is 0 on an exact match and ±inf otherwise.
std::vector<double> compare(const SimReport& report, const MixedState<Rational>& analytic, std::string_view utterance);

/// Same score for the unconditional utterance frequencies.
std::vector<double> compare_marginal(const SimReport& report, const OutcomeDistribution<Rational>& analytic);

}  // namespace cmt::sim
