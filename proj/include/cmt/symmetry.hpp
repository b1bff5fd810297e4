#pragma once

#include "cmt/error.hpp"
#include "cmt/inference.hpp"
#include "cmt/observable.hpp"
#include "cmt/scalar.hpp"
#include "cmt/state_space.hpp"

#include <numeric>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace cmt {

/// Permutation φ of the points of a state space, as index → index.
class Bijection {
 public:
  static Bijection make(StateSpace space, std::vector<std::size_t> mapping) {
    if (mapping.size() != space.size())
      throw Error(ErrorCode::NotBijection, "mapping has " + std::to_string(mapping.size()) + " entries for " +
                                               std::to_string(space.size()) + " points");
    std::vector<bool> hit(mapping.size(), false);
    for (auto target : mapping) {
      if (target >= mapping.size() || hit[target]) throw Error(ErrorCode::NotBijection, "mapping is not a permutation");
      hit[target] = true;
    }
    return Bijection(std::move(space), std::move(mapping));
  }

  static Bijection identity(StateSpace space) {
    std::vector<std::size_t> m(space.size());
    std::iota(m.begin(), m.end(), std::size_t{0});
    return Bijection(std::move(space), std::move(m));
  }

  const StateSpace& space() const { return space_; }
  const std::vector<std::size_t>& mapping() const { return mapping_; }
  std::size_t operator()(std::size_t point) const { return mapping_.at(point); }

  /// (this ∘ inner)(ω) = this(inner(ω)).
  Bijection after(const Bijection& inner) const {
    require_same_space(space_, inner.space_, "bijection composition");
    std::vector<std::size_t> m(mapping_.size());
    for (std::size_t i = 0; i < m.size(); ++i) m[i] = mapping_[inner.mapping_[i]];
    return Bijection(space_, std::move(m));
  }

  /// φ^k, with φ^0 the identity.
  Bijection power(std::size_t k) const {
    Bijection result = identity(space_);
    for (std::size_t i = 0; i < k; ++i) result = after(result);
    return result;
  }

  friend bool operator==(const Bijection& a, const Bijection& b) {
    return a.space_ == b.space_ && a.mapping_ == b.mapping_;
  }

 private:
  Bijection(StateSpace space, std::vector<std::size_t> mapping) : space_(std::move(space)), mapping_(std::move(mapping)) {}

  StateSpace space_;
  std::vector<std::size_t> mapping_;
};

/// φ_1(ω_j) = ω_{j+1}, wrapping ω_n to ω_1.
inline Bijection cyclic_shift(const StateSpace& space) {
  std::vector<std::size_t> m(space.size());
  for (std::size_t j = 0; j < m.size(); ++j) m[j] = (j + 1) % m.size();
  return Bijection::make(space, std::move(m));
}

/// Precompose an observable with a bijection: [F'(Ξ)](ω) = [F(Ξ)](φ(ω)).
template <class Scalar>
Observable<Scalar> precompose(const Observable<Scalar>& base, const Bijection& phi) {
  require_same_space(base.space(), phi.space(), "precompose");
  Matrix<Scalar> effects(base.effects().rows(), base.effects().cols());
  for (std::size_t w = 0; w < phi.mapping().size(); ++w)
    effects.col(static_cast<Eigen::Index>(w)) = base.effects().col(static_cast<Eigen::Index>(phi(w)));
  return Observable<Scalar>::make(base.space(), base.outcomes(), std::move(effects));
}

/// O_k: the base observable read through φ_{k-1} = φ^(k-1), for 1 ≤ k ≤ n.
template <class Scalar>
Observable<Scalar> orbit_observable(const Observable<Scalar>& base, const Bijection& phi, std::size_t k) {
  const auto n = base.space().size();
  if (k < 1 || k > n)
    throw Error(ErrorCode::IndexOutOfRange, "orbit index " + std::to_string(k) + " outside 1.." + std::to_string(n));
  return precompose(base, phi.power(k - 1));
}

/// Observables O_1..O_n chosen at random with probabilities p_1..p_n before
/// measuring a fixed state. Member k reads the base through `shifts[k-1]`.
template <class Scalar>
class WeightedObservableFamily {
 public:
  /// The cyclic construction: shifts are φ_1^0..φ_1^(n-1), n = |Ω|.
  static WeightedObservableFamily cyclic(Observable<Scalar> base, Vector<Scalar> weights) {
    const auto phi = cyclic_shift(base.space());
    std::vector<Bijection> shifts;
    for (std::size_t k = 0; k < base.space().size(); ++k) shifts.push_back(phi.power(k));
    return from_bijections(std::move(base), std::move(shifts), std::move(weights));
  }

  /// Any finite list of bijections with matching weights. Only the cyclic
  /// family with uniform weights is guaranteed to be state independent.
  static WeightedObservableFamily from_bijections(Observable<Scalar> base, std::vector<Bijection> shifts,
                                                  Vector<Scalar> weights) {
    if (shifts.empty()) throw Error(ErrorCode::InvalidWeights, "a family needs at least one member");
    if (static_cast<std::size_t>(weights.size()) != shifts.size())
      throw Error(ErrorCode::InvalidWeights, std::to_string(weights.size()) + " weights for " +
                                                 std::to_string(shifts.size()) + " members");
    if ((weights.array() < Scalar(0)).any()) throw Error(ErrorCode::InvalidWeights, "negative weight");
    if (weights.sum() != Scalar(1)) throw Error(ErrorCode::InvalidWeights, "weights do not sum to 1");
    for (const auto& s : shifts) require_same_space(s.space(), base.space(), "family member");
    return WeightedObservableFamily(std::move(base), std::move(shifts), std::move(weights));
  }

  const Observable<Scalar>& base() const { return base_; }
  const std::vector<Bijection>& shifts() const { return shifts_; }
  const Vector<Scalar>& weights() const { return weights_; }
  std::size_t size() const { return shifts_.size(); }

  /// O_k, 1-based.
  Observable<Scalar> member(std::size_t k) const {
    if (k < 1 || k > shifts_.size())
      throw Error(ErrorCode::IndexOutOfRange, "member " + std::to_string(k) + " outside 1.." + std::to_string(shifts_.size()));
    return precompose(base_, shifts_[k - 1]);
  }

  /// Σ_k p_k δ_{φ_{k-1}(ω_m)}: the state the mixture measurement feeds to O_1.
  MixedState<Scalar> mixing_state(std::string_view point) const {
    const auto m = base_.space().index_of(point);
    Vector<Scalar> w = Vector<Scalar>::Zero(static_cast<Eigen::Index>(base_.space().size()));
    for (std::size_t k = 0; k < shifts_.size(); ++k) w[static_cast<Eigen::Index>(shifts_[k](m))] += weights_[static_cast<Eigen::Index>(k)];
    return MixedState<Scalar>::from_weights(base_.space(), std::move(w));
  }

 private:
  WeightedObservableFamily(Observable<Scalar> base, std::vector<Bijection> shifts, Vector<Scalar> weights)
      : base_(std::move(base)), shifts_(std::move(shifts)), weights_(std::move(weights)) {}

  Observable<Scalar> base_;
  std::vector<Bijection> shifts_;
  Vector<Scalar> weights_;
};

/// Σ_k p_k [F_k(Ξ)](ω_m): probability that dice-then-measure on δ_point lands in Ξ.
template <class Scalar>
Scalar mixture_probability(const WeightedObservableFamily<Scalar>& family, std::string_view point, const Event& event) {
  const auto& base = family.base();
  const auto m = base.space().index_of(point);
  const Vector<Scalar> f = base.effect_function(event);
  Scalar total(0);
  for (std::size_t k = 0; k < family.size(); ++k)
    total += family.weights()[static_cast<Eigen::Index>(k)] * f[static_cast<Eigen::Index>(family.shifts()[k](m))];
  return total;
}

/// Decided by brute force: the singleton probabilities must agree at every
/// point (larger events follow by additivity).
template <class Scalar>
bool is_state_independent(const WeightedObservableFamily<Scalar>& family) {
  const auto& space = family.base().space();
  for (const auto& x : family.base().outcomes()) {
    const Event single{x};
    const Scalar first = mixture_probability(family, space.label(0), single);
    for (std::size_t m = 1; m < space.size(); ++m)
      if (mixture_probability(family, space.label(m), single) != first) return false;
  }
  return true;
}

/// With p_k = 1/n the mixing state is the same ν_e for every ω_m, and the
/// mixture measurement is the statistical measurement M(O_1, S[*](ν_e)).
template <class Scalar>
MixedState<Scalar> equal_probability_reduction(const WeightedObservableFamily<Scalar>& family) {
  const Scalar uniform = Scalar(1) / Scalar(static_cast<long>(family.size()));
  for (Eigen::Index k = 0; k < family.weights().size(); ++k)
    if (family.weights()[k] != uniform) throw Error(ErrorCode::NotUniformWeights, "weights are not all 1/n");
  const auto& space = family.base().space();
  MixedState<Scalar> nu_e = family.mixing_state(space.label(0));
  for (std::size_t m = 1; m < space.size(); ++m)
    if (!(family.mixing_state(space.label(m)) == nu_e))
      throw Error(ErrorCode::StateDependent, "mixing state at '" + space.label(m) + "' differs from the one at '" +
                                                 space.label(0) + "'");
  return nu_e;
}

}  // namespace cmt
