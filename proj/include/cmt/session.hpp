#pragma once

#include "cmt/error.hpp"
#include "cmt/observable.hpp"
#include "cmt/scalar.hpp"
#include "cmt/state_space.hpp"

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace cmt {

/// The state is δ_ω and the observer knows it: M(O, S[δ_ω]).
struct KnownPoint {
  StateSpace space;
  std::string label;
};

/// The state is some δ_ω nobody knows: M(O, S[*]).
struct Unknown {};

/// The state is unknown but distributed as `prior`: M(O, S[*](ν)).
/// `hidden` optionally annotates which δ_ω the system is actually in; it
/// never influences the outcome distribution.
template <class Scalar>
struct UnknownWithPrior {
  MixedState<Scalar> prior;
  std::optional<std::string> hidden;
};

template <class Scalar>
using StateSpec = std::variant<KnownPoint, Unknown, UnknownWithPrior<Scalar>>;

/// Outcome probabilities indexed like Observable::outcomes().
template <class Scalar>
struct OutcomeDistribution {
  std::vector<std::string> outcomes;
  Vector<Scalar> probabilities;

  Scalar operator[](std::string_view outcome) const {
    for (std::size_t i = 0; i < outcomes.size(); ++i)
      if (outcomes[i] == outcome) return probabilities[static_cast<Eigen::Index>(i)];
    throw Error(ErrorCode::UnknownOutcome, "no outcome '" + std::string(outcome) + "'");
  }

  friend bool operator==(const OutcomeDistribution& a, const OutcomeDistribution& b) {
    return a.outcomes == b.outcomes && exactly_equal(a.probabilities, b.probabilities);
  }
};

/// One measurement of an observable against a state specification. Only
/// one measurement is permitted: the session yields its distribution once
/// and refuses every later request. Move-only, single owner.
template <class Scalar>
class MeasurementSession {
 public:
  MeasurementSession(Observable<Scalar> obs, StateSpec<Scalar> spec) : obs_(std::move(obs)), spec_(std::move(spec)) {
    std::visit(
        [this](const auto& s) {
          using T = std::decay_t<decltype(s)>;
          if constexpr (std::is_same_v<T, KnownPoint>) {
            require_same_space(s.space, obs_.space(), "known point");
            obs_.space().index_of(s.label);
          } else if constexpr (std::is_same_v<T, UnknownWithPrior<Scalar>>) {
            require_same_space(s.prior.space(), obs_.space(), "prior");
            if (s.hidden && !obs_.space().contains(*s.hidden))
              throw Error(ErrorCode::SpaceMismatch, "hidden state '" + *s.hidden + "' is not a point of the space");
          }
        },
        spec_);
  }

  MeasurementSession(const MeasurementSession&) = delete;
  MeasurementSession& operator=(const MeasurementSession&) = delete;
  MeasurementSession(MeasurementSession&&) noexcept = default;
  MeasurementSession& operator=(MeasurementSession&&) noexcept = default;

  const Observable<Scalar>& observable() const { return obs_; }
  const StateSpec<Scalar>& state_spec() const { return spec_; }
  bool consumed() const { return consumed_; }

  /// Outcome probabilities: the effect column at a known point, or the effects averaged over the prior.
  /// An Unknown session raises StateUnknown and stays unconsumed.
  OutcomeDistribution<Scalar> outcome_distribution() {
    if (consumed_) throw Error(ErrorCode::SessionConsumed, "this measurement has already been taken");
    Vector<Scalar> probs = std::visit(
        [this](const auto& s) -> Vector<Scalar> {
          using T = std::decay_t<decltype(s)>;
          if constexpr (std::is_same_v<T, KnownPoint>) {
            return obs_.effects().col(static_cast<Eigen::Index>(obs_.space().index_of(s.label)));
          } else if constexpr (std::is_same_v<T, Unknown>) {
            throw Error(ErrorCode::StateUnknown, "no distribution over the state is available");
          } else {
            return obs_.effects() * s.prior.weights();
          }
        },
        spec_);
    consumed_ = true;
    return {obs_.outcomes(), std::move(probs)};
  }

 private:
  Observable<Scalar> obs_;
  StateSpec<Scalar> spec_;
  bool consumed_ = false;
};

template <class Scalar>
MeasurementSession<Scalar> new_session(Observable<Scalar> obs, StateSpec<Scalar> spec) {
  return MeasurementSession<Scalar>(std::move(obs), std::move(spec));
}

template <class Scalar>
OutcomeDistribution<Scalar> outcome_distribution(MeasurementSession<Scalar>& session) {
  return session.outcome_distribution();
}

}  // namespace cmt
