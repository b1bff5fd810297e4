#include "cmt/causality.hpp"
#include "cmt/inference.hpp"
#include "cmt/sampling.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

#include <doctest.h>

#include <functional>
#include <random>

using namespace cmt;
using namespace cmt::testing;

namespace {

ErrorCode error_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return ErrorCode::ParseError;
}

Matrix<Rational> half_split() {
  Matrix<Rational> m(2, 2);
  m << Rational(1, 2), Rational(1, 2), Rational(0), Rational(1);
  return m;
}

// t0 -> t1 -> t2, all on the two-point space {a, b}
CausalFamily<Rational> two_step_chain(const Matrix<Rational>& first, const Matrix<Rational>& second) {
  const auto s = make_state_space({"a", "b"});
  auto tree = CausalTree::make({{"t0", s}, {"t1", s}, {"t2", s}}, {{"t1", "t0"}, {"t2", "t1"}});
  return make_causal_family<Rational>(std::move(tree), {{"t1", first}, {"t2", second}});
}

}  // namespace

TEST_CASE("causal trees") {
  const auto s = make_state_space({"a"});
  const auto tree = CausalTree::make({{"r", s}, {"x", s}, {"y", s}, {"z", s}}, {{"x", "r"}, {"y", "r"}, {"z", "x"}});
  CHECK(tree.root() == "r");
  CHECK(tree.precedes("r", "z"));
  CHECK(tree.precedes("x", "z"));
  CHECK(tree.precedes("y", "y"));
  CHECK_FALSE(tree.precedes("y", "z"));
  CHECK_FALSE(tree.precedes("z", "x"));
  CHECK(*tree.path("r", "z") == std::vector<std::string>{"r", "x", "z"});

  CHECK(error_of([&] { CausalTree::make({{"a", s}, {"b", s}}, {}); }) == ErrorCode::InvalidTree);
  CHECK(error_of([&] { CausalTree::make({{"a", s}, {"b", s}, {"c", s}}, {{"b", "c"}, {"c", "b"}}); }) ==
        ErrorCode::InvalidTree);
  CHECK(error_of([&] { CausalTree::make({{"a", s}, {"b", s}}, {{"b", "q"}}); }) == ErrorCode::InvalidTree);
  CHECK(error_of([&] { CausalTree::make({{"a", s}, {"a", s}}, {}); }) == ErrorCode::InvalidTree);
}

TEST_CASE("make_causal_family") {
  const auto s = make_state_space({"a", "b"});
  auto chain = [&] { return CausalTree::make({{"t0", s}, {"t1", s}}, {{"t1", "t0"}}); };

  const auto id = make_causal_family<Rational>(chain(), {{"t1", Matrix<Rational>::Identity(2, 2)}});
  CHECK(exactly_equal(id.compose("t0", "t1").matrix(), Matrix<Rational>::Identity(2, 2)));

  CHECK_NOTHROW(make_causal_family<Rational>(chain(), {{"t1", half_split()}}));

  Matrix<Rational> bad = half_split();
  bad(0, 0) = 1;
  CHECK(error_of([&] { make_causal_family<Rational>(chain(), {{"t1", bad}}); }) == ErrorCode::NotMarkov);
  bad = half_split();
  bad(0, 0) = Rational(3, 2);
  bad(0, 1) = Rational(-1, 2);
  CHECK(error_of([&] { make_causal_family<Rational>(chain(), {{"t1", bad}}); }) == ErrorCode::NotMarkov);
  CHECK(error_of([&] { make_causal_family<Rational>(chain(), {{"t1", Matrix<Rational>::Identity(3, 3)}}); }) ==
        ErrorCode::DimensionMismatch);
  CHECK(error_of([&] { make_causal_family<Rational>(chain(), {}); }) == ErrorCode::MissingOperator);
  CHECK(error_of([&] { make_causal_family<Rational>(chain(), {{"t0", half_split()}, {"t1", half_split()}}); }) ==
        ErrorCode::InvalidTree);
}

TEST_CASE("compose") {
  const auto family = two_step_chain(half_split(), half_split());
  CHECK(exactly_equal(family.compose("t1", "t1").matrix(), Matrix<Rational>::Identity(2, 2)));

  // product oracle: rows (1/4, 3/4) and (0, 1)
  const auto product = multiply(to_table(half_split()), to_table(half_split()));
  CHECK(product == Table{{Rational(1, 4), Rational(3, 4)}, {Rational(0), Rational(1)}});
  CHECK(to_table(compose(family, "t0", "t2").matrix()) == product);

  CHECK(error_of([&] { family.compose("t2", "t0"); }) == ErrorCode::NotComparable);
}

TEST_CASE("dual_apply") {
  const auto s = make_state_space({"a", "b"});
  const auto op = MarkovOperator<Rational>::make(s, s, half_split());
  const auto rho = state(s, {Rational(2, 7), Rational(5, 7)});
  CHECK(dual_apply(MarkovOperator<Rational>::identity(s), rho) == rho);
  CHECK(exactly_equal(dual_apply(op, point_mass(s, "a")).weights(), rationals({Rational(1, 2), Rational(1, 2)})));
  CHECK(dual_apply(op, rho).weights().sum() == 1);
  CHECK(error_of([&] { dual_apply(op, point_mass(make_state_space({"a"}), "a")); }) == ErrorCode::DimensionMismatch);
}

TEST_CASE("is_deterministic") {
  const auto s = make_state_space({"a", "b", "c"});
  Matrix<Rational> perm = Matrix<Rational>::Zero(3, 3);
  perm(0, 2) = perm(1, 0) = perm(2, 1) = 1;
  CHECK(is_deterministic(MarkovOperator<Rational>::make(s, s, perm)));
  CHECK(is_deterministic(MarkovOperator<Rational>::identity(s)));
  const auto two = make_state_space({"a", "b"});
  CHECK_FALSE(is_deterministic(MarkovOperator<Rational>::make(two, two, half_split())));
  // a point map that is not onto is still deterministic
  Matrix<Rational> collapse(3, 2);
  collapse << 1, 0, 1, 0, 0, 1;
  CHECK(is_deterministic(MarkovOperator<Rational>::make(s, two, collapse)));
}

TEST_CASE("deterministic iff the dual maps every pure state to a pure state") {
  std::mt19937_64 rng(4);
  for (int i = 0; i < 200; ++i) {
    const auto up = sampling::labelled_space("u", sampling::uniform_size(rng, 1, 4));
    const auto down = sampling::labelled_space("d", sampling::uniform_size(rng, 1, 4));
    const auto op = MarkovOperator<Rational>::make(up, down, sampling::random_markov_matrix(rng, up.size(), down.size()));
    bool all_pure = true;
    for (const auto& p : up.labels()) all_pure = all_pure && dual_apply(op, point_mass(up, p)).pure_point().has_value();
    CHECK(is_deterministic(op) == all_pure);
  }
}

TEST_CASE("random chains: composition law, pairing, Markov closure") {
  std::mt19937_64 rng(2024);
  for (int i = 0; i < 100; ++i) {
    const auto family = sampling::random_chain(rng, sampling::uniform_size(rng, 1, 4));
    const auto& nodes = family.tree().nodes();
    for (std::size_t a = 0; a < nodes.size(); ++a)
      for (std::size_t b = a; b < nodes.size(); ++b) {
        const auto ab = family.compose(nodes[a], nodes[b]);
        // Markov closure: products stay non-negative with unit row sums
        CHECK((ab.matrix().array() >= Rational(0)).all());
        for (Eigen::Index r = 0; r < ab.matrix().rows(); ++r) CHECK(ab.matrix().row(r).sum() == 1);
        for (std::size_t c = b; c < nodes.size(); ++c)
          CHECK(to_table(family.compose(nodes[a], nodes[c]).matrix()) ==
                multiply(to_table(ab.matrix()), to_table(family.compose(nodes[b], nodes[c]).matrix())));
        const auto rho = sampling::random_state(rng, ab.upstream());
        Vector<Rational> f = sampling::random_distribution(rng, ab.downstream().size()) * Rational(5, 2);
        f[0] -= Rational(1, 3);
        CHECK(dual_apply(ab, rho).pair(f) == rho.pair(ab.apply(f)));
      }
  }
}

TEST_CASE("Heisenberg and Schrödinger pictures agree") {
  std::mt19937_64 rng(9);
  for (int i = 0; i < 100; ++i) {
    const auto up = sampling::labelled_space("u", sampling::uniform_size(rng, 1, 4));
    const auto down = sampling::labelled_space("d", sampling::uniform_size(rng, 1, 4));
    const auto op = MarkovOperator<Rational>::make(up, down, sampling::random_markov_matrix(rng, up.size(), down.size()));
    const auto obs = sampling::random_observable(rng, down, sampling::uniform_size(rng, 1, 4));
    const auto rho = sampling::random_state(rng, up);
    const auto pulled = pull_back(obs, op);
    for (const auto& event : obs.events())
      CHECK(statistical_probability(pulled, rho, event) == statistical_probability(obs, dual_apply(op, rho), event));
  }
}

TEST_CASE("two-stage worked example: a shuffle before the host speaks") {
  // t0: where the car is put; t1: after a stagehand moves it to a neighbour
  // with probability 1/2. The host observes the t1 configuration.
  const auto s = doors();
  Matrix<Rational> shuffle(3, 3);
  shuffle << Rational(1, 2), Rational(1, 2), 0, 0, Rational(1, 2), Rational(1, 2), Rational(1, 2), 0, Rational(1, 2);
  const auto family = make_causal_family<Rational>(CausalTree::make({{"t0", s}, {"t1", s}}, {{"t1", "t0"}}),
                                                   {{"t1", shuffle}});
  const auto op = family.compose("t0", "t1");
  CHECK_FALSE(is_deterministic(op));
  const auto at_t0 = point_mass(s, "A1");
  const auto seen = pull_back(door_observable(), op);
  // car at A1 moves to A2 half the time: the host then surely says 3
  CHECK(statistical_probability(seen, at_t0, {"3"}) == Rational(1, 2) * Rational(1, 2) + Rational(1, 2));
  CHECK(statistical_probability(door_observable(), dual_apply(op, at_t0), {"3"}) == Rational(3, 4));
}
