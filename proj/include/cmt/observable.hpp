#pragma once

#include "cmt/error.hpp"
#include "cmt/scalar.hpp"
#include "cmt/state_space.hpp"

#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace cmt {

/// A set of outcome labels. The event field is always the full power set of
/// the outcomes, so any subset is a valid event.
using Event = std::set<std::string, std::less<>>;

/// Observable (X, 2^X, F) on a finite state space.
///
/// Only the singleton effects F({x}) are stored, as an outcome-by-point
/// matrix; F(Ξ) for a larger event is the sum of its rows. Construction
/// checks that every entry is non-negative and every column sums to one,
/// which gives 0 ≤ F(Ξ) ≤ I, F(∅) = 0, F(X) = I and finite additivity.
template <class Scalar>
class Observable {
 public:
  static Observable make(StateSpace space, std::vector<std::string> outcomes, Matrix<Scalar> effects) {
    if (outcomes.empty()) throw Error(ErrorCode::EmptyOutcomes, "an observable needs at least one outcome");
    detail::LabelIndex index(std::move(outcomes), ErrorCode::DuplicateOutcome);
    if (static_cast<std::size_t>(effects.rows()) != index.size() ||
        static_cast<std::size_t>(effects.cols()) != space.size())
      throw Error(ErrorCode::DimensionMismatch,
                  "effect matrix is " + std::to_string(effects.rows()) + "x" + std::to_string(effects.cols()) +
                      ", expected " + std::to_string(index.size()) + "x" + std::to_string(space.size()));
    for (Eigen::Index x = 0; x < effects.rows(); ++x)
      for (Eigen::Index w = 0; w < effects.cols(); ++w)
        if (effects(x, w) < Scalar(0))
          throw Error(ErrorCode::NegativeEffect, "[F({" + index[static_cast<std::size_t>(x)] + "})](" +
                                                     space.label(static_cast<std::size_t>(w)) + ") is negative");
    for (Eigen::Index w = 0; w < effects.cols(); ++w) {
      const Scalar total = effects.col(w).sum();
      if (total != Scalar(1))
        throw Error(ErrorCode::ColumnNotNormalized,
                    "effects at point '" + space.label(static_cast<std::size_t>(w)) + "' sum to " + describe(total));
    }
    return Observable(std::move(space), std::move(index), std::move(effects));
  }

  const StateSpace& space() const { return space_; }
  const std::vector<std::string>& outcomes() const { return outcomes_.labels(); }
  std::size_t outcome_count() const { return outcomes_.size(); }

  /// Row x, column ω holds [F({x})](ω).
  const Matrix<Scalar>& effects() const { return effects_; }

  std::size_t outcome_index(std::string_view outcome) const {
    if (auto i = outcomes_.find(outcome)) return *i;
    throw Error(ErrorCode::UnknownOutcome, "no outcome '" + std::string(outcome) + "'");
  }

  Event all_outcomes() const { return Event(outcomes().begin(), outcomes().end()); }

  /// F(Ξ) as a function on Ω.
  Vector<Scalar> effect_function(const Event& event) const {
    Vector<Scalar> f = Vector<Scalar>::Zero(effects_.cols());
    for (const auto& x : event) f += effects_.row(static_cast<Eigen::Index>(outcome_index(x))).transpose();
    return f;
  }

  /// [F(Ξ)](ω).
  Scalar effect(const Event& event, std::string_view point) const {
    const auto w = static_cast<Eigen::Index>(space_.index_of(point));
    Scalar total(0);
    for (const auto& x : event) total += effects_(static_cast<Eigen::Index>(outcome_index(x)), w);
    return total;
  }

  /// Every event in the field 2^X, in bitmask order.
  std::vector<Event> events() const {
    const auto n = outcomes_.size();
    if (n > 20) throw Error(ErrorCode::IndexOutOfRange, "power set of more than 20 outcomes requested");
    std::vector<Event> all;
    all.reserve(std::size_t{1} << n);
    for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
      Event e;
      for (std::size_t i = 0; i < n; ++i)
        if (mask & (std::size_t{1} << i)) e.insert(outcomes_[i]);
      all.push_back(std::move(e));
    }
    return all;
  }

  friend bool operator==(const Observable& a, const Observable& b) {
    return a.space_ == b.space_ && a.outcomes() == b.outcomes() && exactly_equal(a.effects_, b.effects_);
  }

 private:
  Observable(StateSpace space, detail::LabelIndex outcomes, Matrix<Scalar> effects)
      : space_(std::move(space)), outcomes_(std::move(outcomes)), effects_(std::move(effects)) {}

  static std::string describe(const Scalar& s) {
    if constexpr (std::is_same_v<Scalar, Rational>)
      return to_string(s);
    else
      return std::to_string(to_double(s));
  }

  StateSpace space_;
  detail::LabelIndex outcomes_;
  Matrix<Scalar> effects_;
};

template <class Scalar>
Observable<Scalar> make_observable(StateSpace space, std::vector<std::string> outcomes, Matrix<Scalar> effects) {
  return Observable<Scalar>::make(std::move(space), std::move(outcomes), std::move(effects));
}

template <class Scalar>
Scalar effect(const Observable<Scalar>& obs, const Event& event, std::string_view point) {
  return obs.effect(event, point);
}

/// Deterministic observable: outcome i is certain at point i. Outcomes carry
/// the point labels.
template <class Scalar = Rational>
Observable<Scalar> identity_observable(const StateSpace& space) {
  const auto n = static_cast<Eigen::Index>(space.size());
  return Observable<Scalar>::make(space, space.labels(), Matrix<Scalar>::Identity(n, n));
}

}  // namespace cmt
