#pragma once

#include "cmt/observable.hpp"
#include "cmt/scalar.hpp"
#include "cmt/state_space.hpp"

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace cmt::problems {

/// How probability enters the problem: not at all (maximum likelihood), via
/// a prior on where the car / pardon is (Bayes), or via the observer's own
/// dice over which door / prisoner to call "A1" (equal probability).
enum class Variant { Fisher, Bayes, EqualProbability };
enum class ProblemKind { MontyHall, ThreePrisoners };
enum class VerdictKind {
  Switch,
  Stay,
  Indifferent,
  HappinessIncreases,
  HappinessInvariant,
  HappinessDecreases,
  NotWellPosed,
};

using Triple = std::array<Rational, 3>;
using Labels = std::array<std::string, 3>;

std::string_view to_string(Variant v);
std::string_view to_string(ProblemKind p);
std::string_view to_string(VerdictKind k);
Variant parse_variant(std::string_view text);
ProblemKind parse_problem(std::string_view text);
VerdictKind parse_verdict_kind(std::string_view text);

/// You pick a door, the host opens another one with a goat behind it.
/// When the car is behind the picked door the host opens the first of the
/// two remaining doors (label order) with probability alpha.
struct MontyHallSpec {
  Labels doors{"A1", "A2", "A3"};
  std::string picked = "A1";
  std::string opened = "A3";
  std::optional<Triple> prior;
  Rational alpha{1, 2};
  Variant variant = Variant::Fisher;
};

/// The asker requests the name of one of the other two who will be executed.
/// When the asker is the one spared, the emperor names the first of the other
/// two (label order) with probability alpha.
struct PrisonersSpec {
  Labels prisoners{"A1", "A2", "A3"};
  std::string asker = "A1";
  std::string named_executed = "A3";
  std::optional<Triple> prior;
  Rational alpha{1, 2};
  Variant variant = Variant::Fisher;
};

using ProblemSpec = std::variant<MontyHallSpec, PrisonersSpec>;

struct Verdict {
  ProblemKind problem = ProblemKind::MontyHall;
  Variant variant = Variant::Fisher;
  VerdictKind kind = VerdictKind::NotWellPosed;
  std::vector<std::string> labels;                          // the state space, in order
  std::optional<std::vector<Rational>> prior;               // ν_0 actually used (Bayes / equal probability)
  std::optional<std::vector<Rational>> posterior;           // ν_post
  std::optional<std::vector<std::string>> inferred_state;   // Fisher maximizers

  friend bool operator==(const Verdict&, const Verdict&) = default;
};

/// States ω_m = "car behind door m" / "prisoner m is spared"; outcomes are
/// "1","2","3" = "door / prisoner m is named". Columns: at a point other
/// than the picked one the only openable door is certain; at the picked
/// point the two others get alpha and 1-alpha.
Observable<Rational> build_observable(const MontyHallSpec& spec);
Observable<Rational> build_observable(const PrisonersSpec& spec);

/// Outcome label for naming the given door / prisoner.
std::string utterance_for(const Labels& labels, std::string_view named);

Verdict fisher_verdict(const MontyHallSpec& spec);
Verdict fisher_verdict(const PrisonersSpec& spec);
Verdict bayes_verdict(const MontyHallSpec& spec);
Verdict bayes_verdict(const PrisonersSpec& spec);
Verdict equal_probability_verdict(const MontyHallSpec& spec);
Verdict equal_probability_verdict(const PrisonersSpec& spec);

/// Dispatches on the spec's variant.
Verdict solve(const ProblemSpec& spec);

}  // namespace cmt::problems
