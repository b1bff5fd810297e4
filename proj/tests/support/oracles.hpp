#pragma once

// Reference computations for the tests. They work on plain nested vectors
// with explicit loops and never call into the inference, causality or
// symmetry code they are used to check.

#include "cmt/scalar.hpp"

#include <cstddef>
#include <vector>

namespace cmt::testing {

using Table = std::vector<std::vector<Rational>>;

inline Table to_table(const Matrix<Rational>& m) {
  Table t(static_cast<std::size_t>(m.rows()), std::vector<Rational>(static_cast<std::size_t>(m.cols())));
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) t[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] = m(r, c);
  return t;
}

inline std::vector<Rational> to_list(const Vector<Rational>& v) { return {v.begin(), v.end()}; }

/// Joint probability table P(ω, x) = prior(ω) · effect[x][ω].
inline Table joint_table(const Table& effects, const std::vector<Rational>& prior) {
  Table joint(prior.size(), std::vector<Rational>(effects.size()));
  for (std::size_t w = 0; w < prior.size(); ++w)
    for (std::size_t x = 0; x < effects.size(); ++x) joint[w][x] = prior[w] * effects[x][w];
  return joint;
}

/// P(x ∈ event) summed over the joint table.
inline Rational enumerate_event_probability(const Table& effects, const std::vector<Rational>& prior,
                                            const std::vector<std::size_t>& event) {
  const auto joint = joint_table(effects, prior);
  Rational total = 0;
  for (const auto& row : joint)
    for (auto x : event) total += row[x];
  return total;
}

/// P(ω | x ∈ event) by conditioning the joint table; empty when the event has
/// probability zero.
inline std::vector<Rational> enumerate_conditional(const Table& effects, const std::vector<Rational>& prior,
                                                   const std::vector<std::size_t>& event) {
  const auto joint = joint_table(effects, prior);
  std::vector<Rational> cond(prior.size());
  Rational total = 0;
  for (std::size_t w = 0; w < prior.size(); ++w) {
    for (auto x : event) cond[w] += joint[w][x];
    total += cond[w];
  }
  if (total == 0) return {};
  for (auto& c : cond) c /= total;
  return cond;
}

/// Door story, enumerated directly: the car is behind door `car` with
/// probability prior[car]; with the picked door `picked`, the host opens
/// door `said` with this probability.
inline Rational host_law(std::size_t picked, std::size_t car, std::size_t said, const Rational& alpha) {
  if (said == picked || said == car) return 0;
  if (car != picked) return 1;
  const std::size_t first = picked == 0 ? 1 : 0;
  return said == first ? alpha : Rational(1) - alpha;
}

/// P(car = · | host opened `opened`) by enumerating (car, utterance) pairs.
inline std::vector<Rational> story_posterior(const std::vector<Rational>& prior, std::size_t picked,
                                             std::size_t opened, const Rational& alpha) {
  std::vector<Rational> joint(3);
  Rational total = 0;
  for (std::size_t car = 0; car < 3; ++car)
    for (std::size_t said = 0; said < 3; ++said)
      if (said == opened) {
        joint[car] += prior[car] * host_law(picked, car, said, alpha);
        total += prior[car] * host_law(picked, car, said, alpha);
      }
  for (auto& j : joint) j /= total;
  return joint;
}

inline Table multiply(const Table& a, const Table& b) {
  Table out(a.size(), std::vector<Rational>(b.empty() ? 0 : b[0].size()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < out[i].size(); ++j)
      for (std::size_t k = 0; k < b.size(); ++k) out[i][j] += a[i][k] * b[k][j];
  return out;
}

/// Probability that "throw the k-die, then measure O_k at point m" lands in
/// the event, by walking every (k, outcome) pair. `shifts[k][w]` is
/// φ_{k}(w) as an index.
inline Rational enumerate_mixture(const Table& effects, const std::vector<std::vector<std::size_t>>& shifts,
                                  const std::vector<Rational>& weights, std::size_t m,
                                  const std::vector<std::size_t>& event) {
  Rational total = 0;
  for (std::size_t k = 0; k < shifts.size(); ++k)
    for (std::size_t x = 0; x < effects.size(); ++x) {
      bool in_event = false;
      for (auto e : event) in_event = in_event || e == x;
      if (in_event) total += weights[k] * effects[x][shifts[k][m]];
    }
  return total;
}

}  // namespace cmt::testing
