#pragma once

#include "cmt/error.hpp"
#include "cmt/observable.hpp"
#include "cmt/scalar.hpp"
#include "cmt/session.hpp"
#include "cmt/state_space.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace cmt {

template <class Scalar>
struct FisherResult {
  std::vector<std::string> maximizers;  // in state-space order; ties are all kept
  Scalar max_likelihood;

  friend bool operator==(const FisherResult&, const FisherResult&) = default;
};

template <class Scalar>
struct BayesResult {
  MixedState<Scalar> posterior;
  Scalar evidence;  // ⟨ν_0, F(Ξ)⟩

  friend bool operator==(const BayesResult& a, const BayesResult& b) {
    return a.posterior == b.posterior && a.evidence == b.evidence;
  }
};

/// Probability that the measured value lies in `event` when the state is δ_point.
template <class Scalar>
Scalar pure_probability(const Observable<Scalar>& obs, std::string_view point, const Event& event) {
  return obs.effect(event, point);
}

/// ν_0(F(Ξ)): probability of `event` when the state is only known through `prior`.
template <class Scalar>
Scalar statistical_probability(const Observable<Scalar>& obs, const MixedState<Scalar>& prior, const Event& event) {
  require_same_space(prior.space(), obs.space(), "statistical_probability");
  return prior.pair(obs.effect_function(event));
}

/// Maximum likelihood: every point maximising [F(Ξ)](ω).
template <class Scalar>
FisherResult<Scalar> fisher_mle(const Observable<Scalar>& obs, const Event& event) {
  const Vector<Scalar> likelihood = obs.effect_function(event);
  const Scalar best = likelihood.maxCoeff();
  if (best <= Scalar(0))
    throw Error(ErrorCode::ZeroLikelihoodEverywhere, "the event has probability 0 in every state");
  FisherResult<Scalar> result{{}, best};
  for (Eigen::Index w = 0; w < likelihood.size(); ++w)
    if (likelihood[w] == best) result.maximizers.push_back(obs.space().label(static_cast<std::size_t>(w)));
  return result;
}

/// Bayes update ν_post(ω) = [F(Ξ)](ω) ν_0(ω) / ⟨ν_0, F(Ξ)⟩.
template <class Scalar>
BayesResult<Scalar> bayes_posterior(const Observable<Scalar>& obs, const MixedState<Scalar>& prior, const Event& event) {
  require_same_space(prior.space(), obs.space(), "bayes_posterior");
  const Vector<Scalar> likelihood = obs.effect_function(event);
  const Scalar evidence = prior.pair(likelihood);
  if (evidence == Scalar(0)) throw Error(ErrorCode::ZeroEvidence, "the observed event has prior probability 0");
  Vector<Scalar> posterior = likelihood.cwiseProduct(prior.weights()) / evidence;
  return {MixedState<Scalar>::from_weights(obs.space(), std::move(posterior)), evidence};
}

/// Compares M(O, S[δ_hidden1](ν)) with M(O, S[δ_hidden2](ν)) through two
/// fresh sessions. Statistical measurements never depend on the hidden
/// state, so this holds for every valid input; it fails only by throwing.
template <class Scalar>
bool statistical_indistinguishability_check(const Observable<Scalar>& obs, const MixedState<Scalar>& prior,
                                            std::string_view hidden1, std::string_view hidden2) {
  require_same_space(prior.space(), obs.space(), "indistinguishability check");
  auto first = new_session<Scalar>(obs, UnknownWithPrior<Scalar>{prior, std::string(hidden1)});
  auto second = new_session<Scalar>(obs, UnknownWithPrior<Scalar>{prior, std::string(hidden2)});
  return first.outcome_distribution() == second.outcome_distribution();
}

}  // namespace cmt
