#pragma once

#include "cmt/observable.hpp"
#include "cmt/scalar.hpp"
#include "cmt/state_space.hpp"

namespace cmt::testing {

inline StateSpace doors() { return StateSpace::make({"A1", "A2", "A3"}); }

/// The host's observable for "you picked A1": rows are outcomes 1, 2, 3
/// ("door m has a goat"), columns the car positions.
inline Observable<Rational> door_observable() {
  Matrix<Rational> m(3, 3);
  m << Rational(0), Rational(0), Rational(0),
       Rational(1, 2), Rational(0), Rational(1),
       Rational(1, 2), Rational(1), Rational(0);
  return Observable<Rational>::make(doors(), {"1", "2", "3"}, m);
}

inline Vector<Rational> rationals(std::initializer_list<Rational> values) {
  Vector<Rational> v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (const auto& x : values) v[i++] = x;
  return v;
}

inline MixedState<Rational> state(const StateSpace& space, std::initializer_list<Rational> values) {
  return MixedState<Rational>::from_weights(space, rationals(values));
}

}  // namespace cmt::testing
