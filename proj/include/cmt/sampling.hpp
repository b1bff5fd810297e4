#pragma once

#include "cmt/causality.hpp"
#include "cmt/observable.hpp"
#include "cmt/scalar.hpp"
#include "cmt/state_space.hpp"

#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace cmt::sampling {

// Random exact models for property checks. Every distribution is built from
// small non-negative integers normalised by their sum, so zeros (and hence
// ties and vanishing likelihoods) show up regularly.

template <class Rng>
std::size_t uniform_size(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

template <class Rng>
Vector<Rational> random_distribution(Rng& rng, std::size_t n, int max_count = 6) {
  std::uniform_int_distribution<int> draw(0, max_count);
  Vector<Rational> v(static_cast<Eigen::Index>(n));
  Rational total = 0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    v[i] = draw(rng);
    total += v[i];
  }
  if (total == 0) {
    v[static_cast<Eigen::Index>(uniform_size(rng, 0, n - 1))] = 1;
    total = 1;
  }
  return v / total;
}

inline StateSpace labelled_space(const std::string& prefix, std::size_t n) {
  std::vector<std::string> labels;
  for (std::size_t i = 1; i <= n; ++i) labels.push_back(prefix + std::to_string(i));
  return StateSpace::make(std::move(labels));
}

template <class Rng>
MixedState<Rational> random_state(Rng& rng, const StateSpace& space) {
  return MixedState<Rational>::from_weights(space, random_distribution(rng, space.size()));
}

template <class Rng>
Observable<Rational> random_observable(Rng& rng, const StateSpace& space, std::size_t outcomes) {
  Matrix<Rational> effects(static_cast<Eigen::Index>(outcomes), static_cast<Eigen::Index>(space.size()));
  for (Eigen::Index w = 0; w < effects.cols(); ++w) effects.col(w) = random_distribution(rng, outcomes);
  std::vector<std::string> labels;
  for (std::size_t x = 1; x <= outcomes; ++x) labels.push_back(std::to_string(x));
  return Observable<Rational>::make(space, std::move(labels), std::move(effects));
}

/// Random observable with 1..max_points points and 1..max_outcomes outcomes.
template <class Rng>
Observable<Rational> random_small_observable(Rng& rng, std::size_t max_points = 5, std::size_t max_outcomes = 5) {
  const auto space = labelled_space("w", uniform_size(rng, 1, max_points));
  return random_observable(rng, space, uniform_size(rng, 1, max_outcomes));
}

/// Row-stochastic |up| × |down| matrix.
template <class Rng>
Matrix<Rational> random_markov_matrix(Rng& rng, std::size_t up, std::size_t down) {
  Matrix<Rational> m(static_cast<Eigen::Index>(up), static_cast<Eigen::Index>(down));
  for (Eigen::Index r = 0; r < m.rows(); ++r) m.row(r) = random_distribution(rng, down).transpose();
  return m;
}

/// Chain t0 → t1 → … → t{depth} with random space sizes in 1..max_points.
template <class Rng>
CausalFamily<Rational> random_chain(Rng& rng, std::size_t depth, std::size_t max_points = 4) {
  std::vector<std::pair<std::string, StateSpace>> nodes;
  std::map<std::string, std::string> parent;
  std::map<std::string, Matrix<Rational>> ops;
  for (std::size_t t = 0; t <= depth; ++t) {
    const std::string id = "t" + std::to_string(t);
    nodes.emplace_back(id, labelled_space(id + ":", uniform_size(rng, 1, max_points)));
    if (t > 0) {
      const std::string prev = "t" + std::to_string(t - 1);
      parent[id] = prev;
      ops[id] = random_markov_matrix(rng, nodes[t - 1].second.size(), nodes[t].second.size());
    }
  }
  return CausalFamily<Rational>::make(CausalTree::make(std::move(nodes), std::move(parent)), ops);
}

}  // namespace cmt::sampling
