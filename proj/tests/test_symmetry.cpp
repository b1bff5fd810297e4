#include "cmt/inference.hpp"
#include "cmt/sampling.hpp"
#include "cmt/symmetry.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

using namespace cmt;
using namespace cmt::testing;

namespace {

template <class F>
ErrorCode error_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return ErrorCode::ParseError;
}

std::vector<std::vector<std::size_t>> shift_table(const WeightedObservableFamily<Rational>& family) {
  std::vector<std::vector<std::size_t>> out;
  for (const auto& s : family.shifts()) out.push_back(s.mapping());
  return out;
}

std::vector<std::size_t> indices_of(const Observable<Rational>& obs, const Event& e) {
  std::vector<std::size_t> out;
  for (const auto& x : e) out.push_back(obs.outcome_index(x));
  return out;
}

}  // namespace

TEST_CASE("cyclic_shift") {
  const auto phi = cyclic_shift(doors());
  CHECK(phi.mapping() == std::vector<std::size_t>{1, 2, 0});
  CHECK(phi.power(3).mapping() == Bijection::identity(doors()).mapping());
  CHECK(phi.power(2).mapping() == std::vector<std::size_t>{2, 0, 1});
  CHECK(cyclic_shift(make_state_space({"x"})).mapping() == std::vector<std::size_t>{0});

  CHECK(error_of([] { Bijection::make(doors(), {0, 0, 1}); }) == ErrorCode::NotBijection);
  CHECK(error_of([] { Bijection::make(doors(), {0, 1}); }) == ErrorCode::NotBijection);
  CHECK(error_of([] { Bijection::make(doors(), {0, 1, 3}); }) == ErrorCode::NotBijection);
}

TEST_CASE("orbit_observable") {
  const auto base = door_observable();
  const auto phi = cyclic_shift(doors());
  CHECK(orbit_observable(base, phi, 1) == base);

  Matrix<Rational> shifted(3, 3);
  shifted << 0, 0, 0, 0, 1, Rational(1, 2), 1, 0, Rational(1, 2);
  CHECK(exactly_equal(orbit_observable(base, phi, 2).effects(), shifted));
  CHECK(orbit_observable(base, phi, 3) == precompose(base, phi.power(2)));

  CHECK(error_of([&] { orbit_observable(base, phi, 0); }) == ErrorCode::IndexOutOfRange);
  CHECK(error_of([&] { orbit_observable(base, phi, 4); }) == ErrorCode::IndexOutOfRange);
}

TEST_CASE("mixture probabilities on the door observable") {
  const auto base = door_observable();

  SUBCASE("uniform weights: 1/2 for {3} from every door") {
    const auto family = WeightedObservableFamily<Rational>::cyclic(base, rationals({Rational(1, 3), Rational(1, 3), Rational(1, 3)}));
    const auto doors_space = doors();
    for (const auto& p : doors_space.labels()) {
      CHECK(mixture_probability(family, p, {"3"}) == Rational(1, 2));
      CHECK(enumerate_mixture(to_table(base.effects()), shift_table(family), to_list(family.weights()),
                              doors().index_of(p), {2}) == Rational(1, 2));
    }
    CHECK(is_state_independent(family));
    CHECK(equal_probability_reduction(family) == MixedState<Rational>::uniform(doors()));
  }

  SUBCASE("weights (1/2, 1/2, 0) depend on the state") {
    const auto family = WeightedObservableFamily<Rational>::cyclic(base, rationals({Rational(1, 2), Rational(1, 2), 0}));
    const auto table = to_table(base.effects());
    CHECK(enumerate_mixture(table, shift_table(family), to_list(family.weights()), 0, {2}) == Rational(3, 4));
    CHECK(enumerate_mixture(table, shift_table(family), to_list(family.weights()), 1, {2}) == Rational(1, 2));
    CHECK(mixture_probability(family, "A1", {"3"}) == Rational(3, 4));
    CHECK(mixture_probability(family, "A2", {"3"}) == Rational(1, 2));
    CHECK_FALSE(is_state_independent(family));
    CHECK(error_of([&] { equal_probability_reduction(family); }) == ErrorCode::NotUniformWeights);
  }

  SUBCASE("bad weights") {
    CHECK(error_of([&] { WeightedObservableFamily<Rational>::cyclic(base, rationals({Rational(1, 2), Rational(1, 2)})); }) ==
          ErrorCode::InvalidWeights);
    CHECK(error_of([&] { WeightedObservableFamily<Rational>::cyclic(base, rationals({1, 1, -1})); }) ==
          ErrorCode::InvalidWeights);
    CHECK(error_of([&] { WeightedObservableFamily<Rational>::cyclic(base, rationals({Rational(1, 2), 0, 0})); }) ==
          ErrorCode::InvalidWeights);
  }
}

TEST_CASE("members and mixing states") {
  const auto family = WeightedObservableFamily<Rational>::cyclic(door_observable(), rationals({Rational(1, 2), Rational(1, 2), 0}));
  CHECK(family.member(2) == orbit_observable(door_observable(), cyclic_shift(doors()), 2));
  CHECK(error_of([&] { family.member(0); }) == ErrorCode::IndexOutOfRange);
  CHECK(exactly_equal(family.mixing_state("A3").weights(), rationals({Rational(1, 2), 0, Rational(1, 2)})));
}

TEST_CASE("single point space") {
  const auto space = make_state_space({"only"});
  const auto obs = make_observable<Rational>(space, {"a", "b"}, rationals({Rational(1, 4), Rational(3, 4)}));
  const auto family = WeightedObservableFamily<Rational>::cyclic(obs, rationals({1}));
  CHECK(is_state_independent(family));
  CHECK(equal_probability_reduction(family) == point_mass(space, "only"));
  CHECK(mixture_probability(family, "only", {"b"}) == Rational(3, 4));
}

TEST_CASE("uniform cyclic mixtures equal the statistical measurement on the uniform state") {
  std::mt19937_64 rng(99);
  for (int i = 0; i < 150; ++i) {
    const auto base = sampling::random_small_observable(rng);
    const auto n = base.space().size();
    const auto family = WeightedObservableFamily<Rational>::cyclic(
        base, Vector<Rational>::Constant(static_cast<Eigen::Index>(n), Rational(1) / Rational(static_cast<long>(n))));
    const auto nu_e = equal_probability_reduction(family);
    CHECK(nu_e == MixedState<Rational>::uniform(base.space()));
    CHECK(is_state_independent(family));
    const auto table = to_table(base.effects());
    for (const auto& event : base.events())
      for (std::size_t m = 0; m < n; ++m) {
        const auto p = mixture_probability(family, base.space().label(m), event);
        CHECK(p == statistical_probability(base, nu_e, event));
        CHECK(p == enumerate_mixture(table, shift_table(family), to_list(family.weights()), m, indices_of(base, event)));
      }
  }
}

TEST_CASE("arbitrary weighted families agree with the enumeration") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 150; ++i) {
    const auto base = sampling::random_small_observable(rng, 4, 4);
    const auto n = base.space().size();
    const auto weights = sampling::random_distribution(rng, n);
    const auto family = WeightedObservableFamily<Rational>::cyclic(base, weights);
    const auto table = to_table(base.effects());
    bool independent = true;
    for (const auto& event : base.events()) {
      const auto first = mixture_probability(family, base.space().label(0), event);
      for (std::size_t m = 0; m < n; ++m) {
        const auto p = mixture_probability(family, base.space().label(m), event);
        CHECK(p == enumerate_mixture(table, shift_table(family), to_list(weights), m, indices_of(base, event)));
        CHECK(p == statistical_probability(base, family.mixing_state(base.space().label(m)), event));
        independent = independent && p == first;
      }
    }
    CHECK(is_state_independent(family) == independent);
  }
}

TEST_CASE("from_bijections: a family of all permutations") {
  const auto base = door_observable();
  std::vector<std::size_t> perm{0, 1, 2};
  std::vector<Bijection> shifts;
  do shifts.push_back(Bijection::make(doors(), perm));
  while (std::next_permutation(perm.begin(), perm.end()));
  const auto family = WeightedObservableFamily<Rational>::from_bijections(
      base, shifts, Vector<Rational>::Constant(6, Rational(1, 6)));
  CHECK(is_state_independent(family));
  CHECK(equal_probability_reduction(family) == MixedState<Rational>::uniform(doors()));

  // two of the six only: not transitive, so the mixing state moves with ω
  const auto pair = WeightedObservableFamily<Rational>::from_bijections(
      base, {shifts[0], shifts[1]}, rationals({Rational(1, 2), Rational(1, 2)}));
  CHECK(error_of([&] { equal_probability_reduction(pair); }) == ErrorCode::StateDependent);
}
