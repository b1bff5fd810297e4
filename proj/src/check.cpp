#include "cmt/check.hpp"

#include "cmt/causality.hpp"
#include "cmt/inference.hpp"
#include "cmt/json_io.hpp"
#include "cmt/oracle_sim.hpp"
#include "cmt/problems.hpp"
#include "cmt/sampling.hpp"
#include "cmt/symmetry.hpp"

#include <cmath>
#include <functional>
#include <random>
#include <sstream>

namespace cmt::check {
namespace {

struct Failure {
  std::string what;
};

void expect(bool ok, const std::string& what) {
  if (!ok) throw Failure{what};
}

// normalization, additivity over disjoint pairs, monotonicity over nested pairs
void check_observable_axioms(const Observable<Rational>& obs) {
  const auto events = obs.events();
  const auto& space = obs.space();
  for (const auto& point : space.labels()) {
    expect(obs.effect({}, point) == 0, "F(empty) != 0 at " + point);
    expect(obs.effect(obs.all_outcomes(), point) == 1, "F(X) != 1 at " + point);
  }
  for (std::size_t a = 0; a < events.size(); ++a) {
    const auto fa = obs.effect_function(events[a]);
    expect((fa.array() >= Rational(0)).all() && (fa.array() <= Rational(1)).all(), "effect outside [0,1]");
    for (std::size_t b = 0; b < events.size(); ++b) {
      const auto fb = obs.effect_function(events[b]);
      if ((a & b) == 0) {
        expect(exactly_equal(obs.effect_function(events[a | b]), fa + fb), "additivity fails");
      }
      if ((a & b) == a) {
        expect((fa.array() <= fb.array()).all(), "monotonicity fails");
      }
    }
  }
}

std::string run_fixture(const CheckOptions& o) {
  Observable<Rational> obs = problems::build_observable(problems::MontyHallSpec{});
  if (o.fixture_text) obs = io::observable_from_json(io::json::parse(*o.fixture_text));
  check_observable_axioms(obs);
  return std::to_string(obs.outcome_count()) + " outcomes on " + std::to_string(obs.space().size()) + " points";
}

std::string run_axioms(const CheckOptions& o) {
  std::mt19937_64 rng(o.seed);
  constexpr int kCount = 200;
  for (int i = 0; i < kCount; ++i) check_observable_axioms(sampling::random_small_observable(rng));
  return std::to_string(kCount) + " random observables";
}

std::string run_causality(const CheckOptions& o) {
  std::mt19937_64 rng(o.seed + 1);
  constexpr int kCount = 50;
  for (int i = 0; i < kCount; ++i) {
    const auto family = sampling::random_chain(rng, sampling::uniform_size(rng, 1, 4));
    const auto& nodes = family.tree().nodes();
    for (std::size_t a = 0; a < nodes.size(); ++a)
      for (std::size_t b = a; b < nodes.size(); ++b)
        for (std::size_t c = b; c < nodes.size(); ++c)
          expect(family.compose(nodes[a], nodes[b]).then(family.compose(nodes[b], nodes[c])) ==
                     family.compose(nodes[a], nodes[c]),
                 "composition law fails");
    const auto op = family.compose(nodes.front(), nodes.back());
    const auto rho = sampling::random_state(rng, op.upstream());
    const Vector<Rational> f = sampling::random_distribution(rng, op.downstream().size()) * Rational(7, 3);
    expect(dual_apply(op, rho).pair(f) == rho.pair(op.apply(f)), "pairing identity fails");
  }
  return std::to_string(kCount) + " random chains";
}

std::string run_verdicts(const CheckOptions&) {
  using namespace problems;
  MontyHallSpec monty;
  PrisonersSpec prisoners;
  auto v = fisher_verdict(monty);
  expect(v.kind == VerdictKind::Switch && v.inferred_state == std::vector<std::string>{"A2"}, "Fisher Monty Hall");
  v = fisher_verdict(prisoners);
  expect(v.kind == VerdictKind::NotWellPosed, "Fisher prisoners");
  monty.variant = prisoners.variant = Variant::EqualProbability;
  v = equal_probability_verdict(monty);
  expect(v.kind == VerdictKind::Switch &&
             v.posterior == std::vector<Rational>{Rational(1, 3), Rational(2, 3), Rational(0)},
         "equal-probability Monty Hall");
  v = equal_probability_verdict(prisoners);
  expect(v.kind == VerdictKind::HappinessInvariant && (*v.prior)[0] == Rational(1, 3) &&
             (*v.posterior)[0] == Rational(1, 3),
         "equal-probability prisoners");
  return "fisher, equal_probability";
}

std::string run_equal_probability(const CheckOptions& o) {
  std::mt19937_64 rng(o.seed + 2);
  constexpr int kCount = 100;
  for (int i = 0; i < kCount; ++i) {
    const auto obs = sampling::random_small_observable(rng);
    const auto n = static_cast<Eigen::Index>(obs.space().size());
    const auto family =
        WeightedObservableFamily<Rational>::cyclic(obs, Vector<Rational>::Constant(n, Rational(1) / Rational(n)));
    expect(is_state_independent(family), "uniform cyclic family is state dependent");
    const auto nu_e = equal_probability_reduction(family);
    for (const auto& event : obs.events())
      for (const auto& point : obs.space().labels())
        expect(mixture_probability(family, point, event) == statistical_probability(obs, nu_e, event),
               "mixture differs from the nu_e statistical measurement");
  }
  const auto obs = problems::build_observable(problems::MontyHallSpec{});
  Vector<Rational> skew(3);
  skew << Rational(1, 2), Rational(1, 2), Rational(0);
  expect(!is_state_independent(WeightedObservableFamily<Rational>::cyclic(obs, skew)),
         "weights (1/2,1/2,0) should be state dependent");
  return std::to_string(kCount) + " random families + skewed witness";
}

std::string run_simulation(const CheckOptions& o) {
  const std::vector<problems::Triple> priors{{Rational(1, 3), Rational(1, 3), Rational(1, 3)},
                                             {Rational(1, 2), Rational(1, 4), Rational(1, 4)},
                                             {Rational(1, 2), Rational(1, 3), Rational(1, 6)}};
  const std::vector<Rational> alphas{Rational(1, 4), Rational(1, 2), Rational(3, 4)};
  double worst = 0;
  std::uint64_t cell = 0;
  for (const auto& prior : priors) {
    for (const auto& alpha : alphas) {
      problems::MontyHallSpec spec;
      spec.alpha = alpha;
      const auto obs = problems::build_observable(spec);
      Vector<Rational> w(3);
      w << prior[0], prior[1], prior[2];
      const auto nu = MixedState<Rational>::from_weights(obs.space(), w);
      sim::SimConfig cfg;
      cfg.prior = prior;
      cfg.alpha = alpha;
      cfg.trials = o.trials;
      cfg.seed = o.seed + 1000 * ++cell;
      const auto report = sim::simulate(cfg);
      expect(report.named_chosen == 0 && report.named_true == 0, "simulation produced an invalid utterance");
      for (const auto& u : obs.outcomes()) {
        if (report.utterance_count(u) < 30) continue;
        for (double z : sim::compare(report, bayes_posterior(obs, nu, Event{u}).posterior, u)) {
          expect(std::abs(z) < 5, "conditional frequency off by |z| >= 5");
          worst = std::max(worst, std::abs(z));
        }
      }
      auto session = new_session<Rational>(obs, UnknownWithPrior<Rational>{nu, std::nullopt});
      for (double z : sim::compare_marginal(report, session.outcome_distribution())) {
        expect(std::abs(z) < 5, "marginal frequency off by |z| >= 5");
        worst = std::max(worst, std::abs(z));
      }
    }
  }
  std::ostringstream out;
  out << "9 cells x " << o.trials << " trials, max |z| = " << worst;
  return out.str();
}

}  // namespace

CheckReport run_check(const CheckOptions& options) {
  const std::vector<std::pair<std::string, std::function<std::string(const CheckOptions&)>>> groups{
      {"fixture", run_fixture},           {"axioms", run_axioms},     {"causality", run_causality},
      {"verdicts", run_verdicts}, {"equal_probability", run_equal_probability}, {"bayes_vs_simulation", run_simulation},
  };
  CheckReport report;
  for (const auto& [name, fn] : groups) {
    GroupResult g{name, false, {}};
    try {
      g.detail = fn(options);
      g.passed = true;
    } catch (const Failure& f) {
      g.detail = f.what;
    } catch (const std::exception& e) {
      g.detail = e.what();
    }
    report.groups.push_back(std::move(g));
  }
  return report;
}

}  // namespace cmt::check
