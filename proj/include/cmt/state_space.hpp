#pragma once

#include "cmt/error.hpp"
#include "cmt/scalar.hpp"

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace cmt {

namespace detail {

/// Ordered list of distinct labels with a reverse index.
class LabelIndex {
 public:
  LabelIndex() = default;

  LabelIndex(std::vector<std::string> labels, ErrorCode duplicate_code) : labels_(std::move(labels)) {
    for (std::size_t i = 0; i < labels_.size(); ++i) {
      if (!index_.emplace(labels_[i], i).second)
        throw Error(duplicate_code, "label '" + labels_[i] + "' appears more than once");
    }
  }

  std::size_t size() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& operator[](std::size_t i) const { return labels_.at(i); }

  std::optional<std::size_t> find(std::string_view label) const {
    auto it = index_.find(label);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

 private:
  std::vector<std::string> labels_;
  std::map<std::string, std::size_t, std::less<>> index_;
};

}  // namespace detail

/// A finite spectrum ω_1..ω_n. Each point doubles as the pure state
/// concentrated on it, so labels are the only identity a state needs.
///
/// Copies share the underlying label table; equality compares labels.
class StateSpace {
 public:
  static StateSpace make(std::vector<std::string> labels) {
    if (labels.empty()) throw Error(ErrorCode::EmptySpace, "a state space needs at least one point");
    return StateSpace(std::make_shared<const detail::LabelIndex>(std::move(labels), ErrorCode::DuplicateLabel));
  }

  std::size_t size() const { return points_->size(); }
  const std::vector<std::string>& labels() const { return points_->labels(); }
  const std::string& label(std::size_t i) const { return (*points_)[i]; }
  bool contains(std::string_view label) const { return points_->find(label).has_value(); }
  std::optional<std::size_t> find(std::string_view label) const { return points_->find(label); }

  std::size_t index_of(std::string_view label) const {
    if (auto i = points_->find(label)) return *i;
    throw Error(ErrorCode::UnknownLabel, "no point '" + std::string(label) + "' in state space");
  }

  friend bool operator==(const StateSpace& a, const StateSpace& b) {
    return a.points_ == b.points_ || a.labels() == b.labels();
  }

 private:
  explicit StateSpace(std::shared_ptr<const detail::LabelIndex> points) : points_(std::move(points)) {}

  std::shared_ptr<const detail::LabelIndex> points_;
};

inline StateSpace make_state_space(std::vector<std::string> labels) {
  return StateSpace::make(std::move(labels));
}

inline void require_same_space(const StateSpace& a, const StateSpace& b, std::string_view what) {
  if (!(a == b)) throw Error(ErrorCode::SpaceMismatch, std::string(what) + ": state spaces differ");
}

/// Probability vector over a StateSpace. Weights are non-negative and sum to
/// exactly one; a point mass is the pure state δ_ω.
template <class Scalar>
class MixedState {
 public:
  static MixedState from_weights(StateSpace space, Vector<Scalar> weights) {
    if (static_cast<std::size_t>(weights.size()) != space.size())
      throw Error(ErrorCode::DimensionMismatch, "weight vector length " + std::to_string(weights.size()) +
                                                    " does not match " + std::to_string(space.size()) + " points");
    for (Eigen::Index i = 0; i < weights.size(); ++i) {
      if (weights[i] < Scalar(0))
        throw Error(ErrorCode::NegativeWeight, "weight at '" + space.label(static_cast<std::size_t>(i)) + "' is negative");
    }
    if (weights.sum() != Scalar(1)) throw Error(ErrorCode::NotNormalized, "weights do not sum to 1");
    return MixedState(std::move(space), std::move(weights));
  }

  static MixedState point_mass(StateSpace space, std::string_view label) {
    const auto i = space.index_of(label);
    Vector<Scalar> w = Vector<Scalar>::Zero(static_cast<Eigen::Index>(space.size()));
    w[static_cast<Eigen::Index>(i)] = Scalar(1);
    return MixedState(std::move(space), std::move(w));
  }

  static MixedState uniform(StateSpace space) {
    const auto n = static_cast<Eigen::Index>(space.size());
    Vector<Scalar> w = Vector<Scalar>::Constant(n, Scalar(1) / Scalar(static_cast<long>(n)));
    return MixedState(std::move(space), std::move(w));
  }

  const StateSpace& space() const { return space_; }
  const Vector<Scalar>& weights() const { return weights_; }
  Scalar weight(std::string_view label) const { return weights_[static_cast<Eigen::Index>(space_.index_of(label))]; }

  /// Single point carrying all the mass, if any.
  std::optional<std::size_t> pure_point() const {
    for (Eigen::Index i = 0; i < weights_.size(); ++i)
      if (weights_[i] == Scalar(1)) return static_cast<std::size_t>(i);
    return std::nullopt;
  }

  /// The pairing ⟨ρ, f⟩ = Σ_ω ρ(ω) f(ω).
  template <class Derived>
  Scalar pair(const Eigen::MatrixBase<Derived>& f) const {
    if (f.size() != weights_.size()) throw Error(ErrorCode::DimensionMismatch, "function length does not match state");
    return weights_.dot(f);
  }

  friend bool operator==(const MixedState& a, const MixedState& b) {
    return a.space_ == b.space_ && exactly_equal(a.weights_, b.weights_);
  }

 private:
  MixedState(StateSpace space, Vector<Scalar> weights) : space_(std::move(space)), weights_(std::move(weights)) {}

  StateSpace space_;
  Vector<Scalar> weights_;
};

template <class Scalar = Rational>
MixedState<Scalar> point_mass(const StateSpace& space, std::string_view label) {
  return MixedState<Scalar>::point_mass(space, label);
}

}  // namespace cmt
