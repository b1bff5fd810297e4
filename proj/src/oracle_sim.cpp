#include "cmt/oracle_sim.hpp"

#include "cmt/error.hpp"

#include <atomic>
#include <cmath>
#include <limits>
#include <random>
#include <thread>

namespace cmt::sim {
namespace {

constexpr std::uint64_t kBlockSize = std::uint64_t{1} << 16;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

double unit_interval(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

struct Tally {
  std::array<std::array<std::uint64_t, 3>, 3> counts{};
  std::uint64_t named_chosen = 0;
  std::uint64_t named_true = 0;
};

void validate(const SimConfig& c) {
  if (c.trials < 1) throw Error(ErrorCode::InvalidConfig, "trials must be at least 1");
  if (c.alpha <= 0 || c.alpha >= 1) throw Error(ErrorCode::InvalidAlpha, "alpha must lie strictly between 0 and 1");
  if (c.chosen > 2) throw Error(ErrorCode::InvalidConfig, "chosen index must be 0, 1 or 2");
  Rational total = 0;
  for (const auto& p : c.prior) {
    if (p < 0) throw Error(ErrorCode::InvalidPrior, "prior has a negative entry");
    total += p;
  }
  if (total != 1) throw Error(ErrorCode::InvalidPrior, "prior does not sum to 1");
}

}  // namespace

std::size_t SimReport::utterance_index(std::string_view utterance) const {
  for (std::size_t u = 0; u < 3; ++u)
    if (utterances[u] == utterance) return u;
  throw Error(ErrorCode::UnknownOutcome, "no utterance '" + std::string(utterance) + "'");
}

std::uint64_t SimReport::utterance_count(std::string_view utterance) const {
  const auto u = utterance_index(utterance);
  return counts[0][u] + counts[1][u] + counts[2][u];
}

double SimReport::utterance_frequency(std::string_view utterance) const {
  return static_cast<double>(utterance_count(utterance)) / static_cast<double>(trials);
}

double SimReport::conditional_frequency(std::size_t state, std::string_view utterance) const {
  const auto n = utterance_count(utterance);
  if (n == 0) return std::numeric_limits<double>::quiet_NaN();
  return static_cast<double>(counts.at(state)[utterance_index(utterance)]) / static_cast<double>(n);
}

SimReport simulate(const SimConfig& config) {
  validate(config);
  const double c0 = to_double(config.prior[0]);
  const double c1 = to_double(config.prior[0] + config.prior[1]);
  const double alpha = to_double(config.alpha);
  const std::size_t chosen = config.chosen;
  std::size_t first_other = chosen == 0 ? 1 : 0;
  std::size_t second_other = 3 - chosen - first_other;

  const std::uint64_t blocks = (config.trials + kBlockSize - 1) / kBlockSize;
  std::vector<Tally> tallies(blocks);

  auto run_block = [&](std::uint64_t b) {
    std::mt19937_64 rng(splitmix64(config.seed ^ splitmix64(b)));
    const std::uint64_t begin = b * kBlockSize;
    const std::uint64_t end = std::min(config.trials, begin + kBlockSize);
    Tally& t = tallies[b];
    for (std::uint64_t i = begin; i < end; ++i) {
      const double u = unit_interval(rng);
      const std::size_t truth = u < c0 ? 0 : (u < c1 ? 1 : 2);
      std::size_t said;
      if (truth == chosen)
        said = unit_interval(rng) < alpha ? first_other : second_other;
      else
        said = 3 - chosen - truth;
      ++t.counts[truth][said];
      if (said == chosen) ++t.named_chosen;
      if (said == truth) ++t.named_true;
    }
  };

  const unsigned workers = std::max(1u, std::min<unsigned>(config.workers, static_cast<unsigned>(blocks)));
  if (workers == 1) {
    for (std::uint64_t b = 0; b < blocks; ++b) run_block(b);
  } else {
    std::atomic<std::uint64_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (std::uint64_t b = next++; b < blocks; b = next++) run_block(b);
      });
    for (auto& th : pool) th.join();
  }

  SimReport report;
  report.labels = config.labels;
  report.chosen = config.chosen;
  report.trials = config.trials;
  for (const auto& t : tallies) {
    for (std::size_t s = 0; s < 3; ++s)
      for (std::size_t u = 0; u < 3; ++u) report.counts[s][u] += t.counts[s][u];
    report.named_chosen += t.named_chosen;
    report.named_true += t.named_true;
  }
  return report;
}

namespace {

double z_score(double freq, double p, double n) {
  if (p <= 0.0 || p >= 1.0) {
    if (freq == p) return 0.0;
    return freq > p ? std::numeric_limits<double>::infinity() : -std::numeric_limits<double>::infinity();
  }
  return (freq - p) / std::sqrt(p * (1.0 - p) / n);
}

}  // namespace

std::vector<double> compare(const SimReport& report, const MixedState<Rational>& analytic, std::string_view utterance) {
  if (analytic.space().size() != 3) throw Error(ErrorCode::DimensionMismatch, "analytic state must have 3 points");
  const auto n = report.utterance_count(utterance);
  if (n == 0) throw Error(ErrorCode::NoConditioningEvents, "utterance '" + std::string(utterance) + "' never occurred");
  std::vector<double> z;
  for (std::size_t s = 0; s < 3; ++s)
    z.push_back(z_score(report.conditional_frequency(s, utterance), to_double(analytic.weights()[static_cast<Eigen::Index>(s)]),
                        static_cast<double>(n)));
  return z;
}

std::vector<double> compare_marginal(const SimReport& report, const OutcomeDistribution<Rational>& analytic) {
  std::vector<double> z;
  for (std::size_t i = 0; i < analytic.outcomes.size(); ++i)
    z.push_back(z_score(report.utterance_frequency(analytic.outcomes[i]),
                        to_double(analytic.probabilities[static_cast<Eigen::Index>(i)]), static_cast<double>(report.trials)));
  return z;
}

}  // namespace cmt::sim
