#include "cmt/problems.hpp"

#include "cmt/error.hpp"
#include "cmt/inference.hpp"
#include "cmt/symmetry.hpp"

#include <algorithm>

namespace cmt::problems {
namespace {

// Both stories share one shape: an observer singles out one of three
// labelled parties and then learns that a different party is "out".
struct Setup {
  ProblemKind problem;
  Labels labels;
  std::size_t chosen;   // picked door / asker
  std::size_t named;    // opened door / named prisoner
  std::optional<Triple> prior;
  Rational alpha;
  Variant variant;
};

std::size_t index_in(const Labels& labels, std::string_view label, std::string_view role) {
  auto it = std::find(labels.begin(), labels.end(), label);
  if (it == labels.end())
    throw Error(ErrorCode::InvalidSpec, std::string(role) + " '" + std::string(label) + "' is not one of the labels");
  return static_cast<std::size_t>(it - labels.begin());
}

void validate(const Setup& s) {
  if (s.chosen == s.named) throw Error(ErrorCode::InvalidSpec, "the named party must differ from the chosen one");
  if (s.alpha <= 0 || s.alpha >= 1) throw Error(ErrorCode::InvalidAlpha, "alpha must lie strictly between 0 and 1");
  if (s.prior) {
    Rational total = 0;
    for (const auto& p : *s.prior) {
      if (p < 0) throw Error(ErrorCode::InvalidPrior, "prior has a negative entry");
      total += p;
    }
    if (total != 1) throw Error(ErrorCode::InvalidPrior, "prior does not sum to 1");
  }
}

Setup setup_of(const MontyHallSpec& spec) {
  StateSpace::make({spec.doors.begin(), spec.doors.end()});
  Setup s{ProblemKind::MontyHall, spec.doors, index_in(spec.doors, spec.picked, "picked door"),
          index_in(spec.doors, spec.opened, "opened door"), spec.prior, spec.alpha, spec.variant};
  validate(s);
  return s;
}

Setup setup_of(const PrisonersSpec& spec) {
  StateSpace::make({spec.prisoners.begin(), spec.prisoners.end()});
  Setup s{ProblemKind::ThreePrisoners, spec.prisoners, index_in(spec.prisoners, spec.asker, "asker"),
          index_in(spec.prisoners, spec.named_executed, "named prisoner"), spec.prior, spec.alpha, spec.variant};
  validate(s);
  return s;
}

std::size_t remaining(std::size_t a, std::size_t b) { return 3 - a - b; }

std::string outcome_label(std::size_t i) { return std::to_string(i + 1); }

Observable<Rational> observable_of(const Setup& s) {
  const auto space = StateSpace::make({s.labels.begin(), s.labels.end()});
  Matrix<Rational> effects = Matrix<Rational>::Zero(3, 3);
  for (std::size_t w = 0; w < 3; ++w) {
    if (w == s.chosen) {
      std::size_t first = 3, second = 3;
      for (std::size_t x = 0; x < 3; ++x) {
        if (x == s.chosen) continue;
        (first == 3 ? first : second) = x;
      }
      effects(static_cast<Eigen::Index>(first), static_cast<Eigen::Index>(w)) = s.alpha;
      effects(static_cast<Eigen::Index>(second), static_cast<Eigen::Index>(w)) = Rational(1) - s.alpha;
    } else {
      effects(static_cast<Eigen::Index>(remaining(s.chosen, w)), static_cast<Eigen::Index>(w)) = 1;
    }
  }
  return Observable<Rational>::make(space, {outcome_label(0), outcome_label(1), outcome_label(2)}, std::move(effects));
}

std::vector<Rational> to_vector(const Vector<Rational>& v) { return {v.begin(), v.end()}; }

Verdict base_verdict(const Setup& s) {
  Verdict v;
  v.problem = s.problem;
  v.variant = s.variant;
  v.labels.assign(s.labels.begin(), s.labels.end());
  return v;
}

Verdict fisher_of(const Setup& s) {
  if (s.variant != Variant::Fisher) throw Error(ErrorCode::VariantMismatch, "spec is not a Fisher variant");
  if (s.prior) throw Error(ErrorCode::PriorSuppliedForFisher, "maximum likelihood takes no prior");
  const auto obs = observable_of(s);
  const auto mle = fisher_mle(obs, Event{outcome_label(s.named)});
  Verdict v = base_verdict(s);
  v.inferred_state = mle.maximizers;
  if (s.problem == ProblemKind::ThreePrisoners) {
    // the state can be inferred, but "is the asker happier" compares two
    // probabilities that do not exist without a prior
    v.kind = VerdictKind::NotWellPosed;
    return v;
  }
  const auto& other = s.labels[remaining(s.chosen, s.named)];
  const auto& chosen = s.labels[s.chosen];
  if (mle.maximizers == std::vector<std::string>{other})
    v.kind = VerdictKind::Switch;
  else if (mle.maximizers == std::vector<std::string>{chosen})
    v.kind = VerdictKind::Stay;
  else
    v.kind = VerdictKind::Indifferent;
  return v;
}

Verdict bayes_with_prior(const Setup& s, const MixedState<Rational>& prior) {
  const auto obs = observable_of(s);
  const auto result = bayes_posterior(obs, prior, Event{outcome_label(s.named)});
  const auto& post = result.posterior.weights();
  Verdict v = base_verdict(s);
  v.prior = to_vector(prior.weights());
  v.posterior = to_vector(post);
  const auto chosen = static_cast<Eigen::Index>(s.chosen);
  if (s.problem == ProblemKind::MontyHall) {
    const auto other = static_cast<Eigen::Index>(remaining(s.chosen, s.named));
    if (post[chosen] < post[other])
      v.kind = VerdictKind::Switch;
    else if (post[chosen] == post[other])
      v.kind = VerdictKind::Indifferent;
    else
      v.kind = VerdictKind::Stay;
  } else {
    const auto& before = prior.weights()[chosen];
    if (before < post[chosen])
      v.kind = VerdictKind::HappinessIncreases;
    else if (before == post[chosen])
      v.kind = VerdictKind::HappinessInvariant;
    else
      v.kind = VerdictKind::HappinessDecreases;
  }
  return v;
}

Verdict bayes_of(const Setup& s) {
  if (s.variant != Variant::Bayes) throw Error(ErrorCode::VariantMismatch, "spec is not a Bayes variant");
  if (!s.prior) throw Error(ErrorCode::MissingPrior, "the Bayes variant needs a prior");
  const auto space = StateSpace::make({s.labels.begin(), s.labels.end()});
  Vector<Rational> w(3);
  w << (*s.prior)[0], (*s.prior)[1], (*s.prior)[2];
  return bayes_with_prior(s, MixedState<Rational>::from_weights(space, std::move(w)));
}

Verdict equal_probability_of(const Setup& s) {
  if (s.variant != Variant::EqualProbability)
    throw Error(ErrorCode::VariantMismatch, "spec is not an equal-probability variant");
  if (s.prior)
    throw Error(ErrorCode::PriorSuppliedForEqualProbability, "the equal-probability variant derives its own prior");
  // the observer's fair die over which party plays the role of ω_1 turns the
  // unknown point into the statistical measurement with prior ν_e
  const auto obs = observable_of(s);
  const auto n = static_cast<Eigen::Index>(obs.space().size());
  const auto family = WeightedObservableFamily<Rational>::cyclic(
      obs, Vector<Rational>::Constant(n, Rational(1) / Rational(static_cast<long>(n))));
  return bayes_with_prior(s, equal_probability_reduction(family));
}

Verdict dispatch(const Setup& s) {
  switch (s.variant) {
    case Variant::Fisher: return fisher_of(s);
    case Variant::Bayes: return bayes_of(s);
    case Variant::EqualProbability: return equal_probability_of(s);
  }
  throw Error(ErrorCode::InvalidSpec, "unknown variant");
}

}  // namespace

std::string_view to_string(Variant v) {
  switch (v) {
    case Variant::Fisher: return "fisher";
    case Variant::Bayes: return "bayes";
    case Variant::EqualProbability: return "equal_probability";
  }
  return "?";
}

std::string_view to_string(ProblemKind p) {
  return p == ProblemKind::MontyHall ? "monty_hall" : "three_prisoners";
}

std::string_view to_string(VerdictKind k) {
  switch (k) {
    case VerdictKind::Switch: return "SWITCH";
    case VerdictKind::Stay: return "STAY";
    case VerdictKind::Indifferent: return "INDIFFERENT";
    case VerdictKind::HappinessIncreases: return "HAPPINESS_INCREASES";
    case VerdictKind::HappinessInvariant: return "HAPPINESS_INVARIANT";
    case VerdictKind::HappinessDecreases: return "HAPPINESS_DECREASES";
    case VerdictKind::NotWellPosed: return "NOT_WELL_POSED";
  }
  return "?";
}

Variant parse_variant(std::string_view text) {
  for (auto v : {Variant::Fisher, Variant::Bayes, Variant::EqualProbability})
    if (to_string(v) == text) return v;
  throw Error(ErrorCode::InvalidSpec, "unknown variant '" + std::string(text) + "'");
}

ProblemKind parse_problem(std::string_view text) {
  for (auto p : {ProblemKind::MontyHall, ProblemKind::ThreePrisoners})
    if (to_string(p) == text) return p;
  throw Error(ErrorCode::InvalidSpec, "unknown problem '" + std::string(text) + "'");
}

VerdictKind parse_verdict_kind(std::string_view text) {
  for (auto k : {VerdictKind::Switch, VerdictKind::Stay, VerdictKind::Indifferent, VerdictKind::HappinessIncreases,
                 VerdictKind::HappinessInvariant, VerdictKind::HappinessDecreases, VerdictKind::NotWellPosed})
    if (to_string(k) == text) return k;
  throw Error(ErrorCode::ParseError, "unknown verdict kind '" + std::string(text) + "'");
}

Observable<Rational> build_observable(const MontyHallSpec& spec) { return observable_of(setup_of(spec)); }
Observable<Rational> build_observable(const PrisonersSpec& spec) { return observable_of(setup_of(spec)); }

std::string utterance_for(const Labels& labels, std::string_view named) {
  return outcome_label(index_in(labels, named, "named party"));
}

Verdict fisher_verdict(const MontyHallSpec& spec) { return fisher_of(setup_of(spec)); }
Verdict fisher_verdict(const PrisonersSpec& spec) { return fisher_of(setup_of(spec)); }
Verdict bayes_verdict(const MontyHallSpec& spec) { return bayes_of(setup_of(spec)); }
Verdict bayes_verdict(const PrisonersSpec& spec) { return bayes_of(setup_of(spec)); }
Verdict equal_probability_verdict(const MontyHallSpec& spec) { return equal_probability_of(setup_of(spec)); }
Verdict equal_probability_verdict(const PrisonersSpec& spec) { return equal_probability_of(setup_of(spec)); }

Verdict solve(const ProblemSpec& spec) {
  return std::visit([](const auto& s) { return dispatch(setup_of(s)); }, spec);
}

}  // namespace cmt::problems
