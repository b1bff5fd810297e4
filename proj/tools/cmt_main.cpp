// cmt: command-line front end for the classical measurement library.
//
// Exit codes: 0 success, 1 check failure, 2 invalid input, 3 degenerate
// inference (zero evidence / zero likelihood everywhere).

#include "cmt/check.hpp"
#include "cmt/error.hpp"
#include "cmt/inference.hpp"
#include "cmt/json_io.hpp"
#include "cmt/oracle_sim.hpp"
#include "cmt/problems.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

namespace {

using cmt::Error;
using cmt::ErrorCode;
using cmt::Rational;
using cmt::io::json;

constexpr int kExitCheckFailed = 1;
constexpr int kExitInvalid = 2;
constexpr int kExitDegenerate = 3;

std::string read_input(const std::string& path) {
  std::ostringstream buf;
  if (path == "-") {
    buf << std::cin.rdbuf();
  } else {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::ParseError, "cannot open '" + path + "'");
    buf << in.rdbuf();
  }
  return buf.str();
}

json parse_json(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw Error(ErrorCode::ParseError, "input is not valid JSON");
  return j;
}

cmt::Event parse_event(const std::string& text) {
  cmt::Event event;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto comma = text.find(',', pos);
    if (comma == std::string::npos) comma = text.size();
    auto item = text.substr(pos, comma - pos);
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    if (!item.empty()) event.insert(item);
    pos = comma + 1;
  }
  return event;
}

int report_error(const std::string& code, const std::string& message, int exit_code) {
  std::cout << json{{"error", {{"code", code}, {"message", message}}}}.dump(2) << "\n";
  std::cerr << "cmt: " << message << "\n";
  return exit_code;
}

std::string human_list(const std::vector<std::string>& labels, const std::vector<Rational>& values) {
  std::ostringstream out;
  for (std::size_t i = 0; i < labels.size(); ++i)
    out << "  " << std::left << std::setw(8) << labels[i] << cmt::to_human(values[i]) << "\n";
  return out.str();
}

void print_verdict(const cmt::problems::Verdict& v, bool human) {
  if (!human) {
    std::cout << cmt::io::verdict_to_json(v).dump(2) << "\n";
    return;
  }
  std::cout << to_string(v.problem) << " (" << to_string(v.variant) << "): " << to_string(v.kind) << "\n";
  if (v.inferred_state) {
    std::cout << "inferred state:";
    for (const auto& s : *v.inferred_state) std::cout << " " << s;
    std::cout << "\n";
  }
  if (v.prior) std::cout << "prior:\n" << human_list(v.labels, *v.prior);
  if (v.posterior) std::cout << "posterior:\n" << human_list(v.labels, *v.posterior);
}

struct SolveFlags {
  std::string input, problem, variant, picked, opened, asker, named, labels, prior, alpha;
  bool human = false;
};

cmt::problems::ProblemSpec spec_from_flags(const SolveFlags& f) {
  json j;
  if (!f.input.empty()) j = parse_json(read_input(f.input));
  else j = json::object();
  if (!f.problem.empty()) j["problem"] = f.problem;
  if (!f.variant.empty()) j["variant"] = f.variant;
  if (!j.contains("problem")) throw Error(ErrorCode::InvalidSpec, "--problem is required");
  if (!j.contains("variant")) throw Error(ErrorCode::InvalidSpec, "--variant is required");
  if (!f.picked.empty()) j["picked"] = f.picked;
  if (!f.opened.empty()) j["opened"] = f.opened;
  if (!f.asker.empty()) j["asker"] = f.asker;
  if (!f.named.empty()) j["named"] = f.named;
  if (!f.labels.empty()) {
    std::vector<std::string> labels;
    std::stringstream ss(f.labels);
    for (std::string s; std::getline(ss, s, ',');) labels.push_back(s);
    j["labels"] = labels;
  }
  if (!f.prior.empty()) j["prior"] = cmt::io::to_json(cmt::io::parse_rational_list(f.prior));
  if (!f.alpha.empty()) j["alpha"] = cmt::io::to_json(cmt::io::parse_rational_flag(f.alpha));
  return cmt::io::problem_spec_from_json(j);
}

struct GenericFlags {
  std::string observable, event, prior;
  bool human = false;
};

int run_fisher(const GenericFlags& f) {
  const auto obs = cmt::io::observable_from_json(parse_json(read_input(f.observable)));
  const auto result = cmt::fisher_mle(obs, parse_event(f.event));
  if (f.human) {
    std::cout << "max likelihood " << cmt::to_human(result.max_likelihood) << " at:";
    for (const auto& m : result.maximizers) std::cout << " " << m;
    std::cout << "\n";
  } else {
    std::cout << cmt::io::fisher_to_json(result).dump(2) << "\n";
  }
  return 0;
}

int run_bayes(const GenericFlags& f) {
  const auto obs = cmt::io::observable_from_json(parse_json(read_input(f.observable)));
  const auto weights = cmt::io::parse_rational_list(f.prior);
  cmt::Vector<Rational> w(static_cast<Eigen::Index>(weights.size()));
  for (std::size_t i = 0; i < weights.size(); ++i) w[static_cast<Eigen::Index>(i)] = weights[i];
  const auto prior = cmt::MixedState<Rational>::from_weights(obs.space(), std::move(w));
  const auto result = cmt::bayes_posterior(obs, prior, parse_event(f.event));
  if (f.human) {
    const auto& p = result.posterior.weights();
    std::cout << "evidence " << cmt::to_human(result.evidence) << "\nposterior:\n"
              << human_list(obs.space().labels(), {p.begin(), p.end()});
  } else {
    std::cout << cmt::io::bayes_to_json(result).dump(2) << "\n";
  }
  return 0;
}

struct SimFlags {
  std::string prior = "1/3,1/3,1/3", alpha = "1/2", picked = "A1", labels = "A1,A2,A3", utterance, csv;
  std::uint64_t trials = 1'000'000, seed = 0;
  unsigned workers = 1;
  bool human = false;
};

int run_simulate(const SimFlags& f) {
  cmt::sim::SimConfig cfg;
  const auto prior = cmt::io::parse_rational_list(f.prior);
  if (prior.size() != 3) throw Error(ErrorCode::InvalidPrior, "prior must have three entries");
  cfg.prior = {prior[0], prior[1], prior[2]};
  cfg.alpha = cmt::io::parse_rational_flag(f.alpha);
  cfg.trials = f.trials;
  cfg.seed = f.seed;
  cfg.workers = f.workers;
  {
    std::stringstream ss(f.labels);
    std::vector<std::string> labels;
    for (std::string s; std::getline(ss, s, ',');) labels.push_back(s);
    if (labels.size() != 3) throw Error(ErrorCode::InvalidSpec, "exactly three labels are required");
    cfg.labels = {labels[0], labels[1], labels[2]};
  }
  cfg.chosen = static_cast<std::size_t>(
      std::find(cfg.labels.begin(), cfg.labels.end(), f.picked) - cfg.labels.begin());
  if (cfg.chosen > 2) throw Error(ErrorCode::InvalidSpec, "picked label '" + f.picked + "' is not one of the labels");

  const auto report = cmt::sim::simulate(cfg);

  // score every observed utterance (or just the requested one) against the
  // exact posterior of the same story
  cmt::problems::MontyHallSpec spec;
  spec.doors = cfg.labels;
  spec.picked = f.picked;
  spec.opened = cfg.labels[cfg.chosen == 2 ? 1 : 2];
  spec.alpha = cfg.alpha;
  const auto obs = cmt::problems::build_observable(spec);
  cmt::Vector<Rational> w(3);
  w << cfg.prior[0], cfg.prior[1], cfg.prior[2];
  const auto nu = cmt::MixedState<Rational>::from_weights(obs.space(), w);
  std::vector<std::pair<std::string, std::vector<double>>> z;
  for (const auto& u : report.utterances) {
    if (!f.utterance.empty() && u != f.utterance) continue;
    if (report.utterance_count(u) == 0) {
      if (!f.utterance.empty()) throw Error(ErrorCode::NoConditioningEvents, "utterance '" + u + "' never occurred");
      continue;
    }
    z.emplace_back(u, cmt::sim::compare(report, cmt::bayes_posterior(obs, nu, cmt::Event{u}).posterior, u));
  }
  if (!f.csv.empty()) {
    std::ofstream out(f.csv);
    if (!out) throw Error(ErrorCode::ParseError, "cannot write '" + f.csv + "'");
    out << cmt::io::sim_report_to_csv(report);
  }
  if (f.human) {
    std::cout << report.trials << " trials, picked " << f.picked << "\n";
    for (const auto& [u, scores] : z) {
      std::cout << "given utterance " << u << " (" << report.utterance_count(u) << " times):\n";
      for (std::size_t s = 0; s < 3; ++s)
        std::cout << "  " << std::left << std::setw(8) << report.labels[s] << std::fixed << std::setprecision(4)
                  << report.conditional_frequency(s, u) << "  z=" << std::setprecision(2) << scores[s] << "\n";
    }
  } else {
    std::cout << cmt::io::sim_report_to_json(report, z).dump(2) << "\n";
  }
  return 0;
}

int run_check(std::uint64_t trials, std::uint64_t seed, const std::string& fixture) {
  cmt::check::CheckOptions opts;
  opts.trials = trials;
  opts.seed = seed;
  if (!fixture.empty()) {
    try {
      opts.fixture_text = read_input(fixture);
    } catch (const Error& e) {
      opts.fixture_text = "";  // unreadable fixture fails its group
    }
  }
  const auto report = cmt::check::run_check(opts);
  for (const auto& g : report.groups)
    std::cout << (g.passed ? "PASS " : "FAIL ") << g.name << ": " << g.detail << "\n";
  return report.passed() ? 0 : kExitCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Classical measurement theory: Fisher and Bayes inference, Monty Hall and three prisoners"};
  app.require_subcommand(1);

  SolveFlags solve;
  auto* solve_cmd = app.add_subcommand("solve", "Solve a Monty Hall / three prisoners problem");
  solve_cmd->add_option("--input", solve.input, "Problem JSON file ('-' for stdin)");
  solve_cmd->add_option("--problem", solve.problem, "monty_hall | three_prisoners");
  solve_cmd->add_option("--variant", solve.variant, "fisher | bayes | equal_probability");
  solve_cmd->add_option("--picked", solve.picked, "Door you pick (Monty Hall)");
  solve_cmd->add_option("--opened", solve.opened, "Door the host opens (Monty Hall)");
  solve_cmd->add_option("--asker", solve.asker, "Prisoner who asks (three prisoners)");
  solve_cmd->add_option("--named", solve.named, "Prisoner named for execution (three prisoners)");
  solve_cmd->add_option("--labels", solve.labels, "Three comma-separated labels (default A1,A2,A3)");
  solve_cmd->add_option("--prior", solve.prior, "Prior, e.g. 1/2,1/4,1/4 or [[1,2],[1,4],[1,4]]");
  solve_cmd->add_option("--alpha", solve.alpha, "Tie-break probability, e.g. 1/2 or [1,2]");
  solve_cmd->add_flag("--human", solve.human, "Readable output instead of JSON");

  GenericFlags fisher;
  auto* fisher_cmd = app.add_subcommand("fisher", "Maximum-likelihood state for an observed event");
  fisher_cmd->add_option("--observable", fisher.observable, "Observable JSON file ('-' for stdin)")->required();
  fisher_cmd->add_option("--event", fisher.event, "Comma-separated outcomes")->required();
  fisher_cmd->add_flag("--human", fisher.human, "Readable output instead of JSON");

  GenericFlags bayes;
  auto* bayes_cmd = app.add_subcommand("bayes", "Posterior state after an observed event");
  bayes_cmd->add_option("--observable", bayes.observable, "Observable JSON file ('-' for stdin)")->required();
  bayes_cmd->add_option("--event", bayes.event, "Comma-separated outcomes")->required();
  bayes_cmd->add_option("--prior", bayes.prior, "Prior over the state space")->required();
  bayes_cmd->add_flag("--human", bayes.human, "Readable output instead of JSON");

  SimFlags sim;
  auto* sim_cmd = app.add_subcommand("simulate", "Monte Carlo run of the host / emperor story");
  sim_cmd->add_option("--prior", sim.prior, "Prior over the three states");
  sim_cmd->add_option("--alpha", sim.alpha, "Tie-break probability");
  sim_cmd->add_option("--trials", sim.trials, "Number of trials")->check(CLI::PositiveNumber);
  sim_cmd->add_option("--seed", sim.seed, "RNG seed");
  sim_cmd->add_option("--workers", sim.workers, "Worker threads (results do not depend on this)");
  sim_cmd->add_option("--labels", sim.labels, "Three comma-separated labels");
  sim_cmd->add_option("--picked", sim.picked, "Picked door / asking prisoner");
  sim_cmd->add_option("--utterance", sim.utterance, "Only score this utterance (1, 2 or 3)");
  sim_cmd->add_option("--csv", sim.csv, "Also write the counts table as CSV");
  sim_cmd->add_flag("--human", sim.human, "Readable output instead of JSON");

  std::uint64_t check_trials = 100'000, check_seed = 42;
  std::string fixture;
  auto* check_cmd = app.add_subcommand("check", "Run the invariant suite");
  check_cmd->add_option("--trials", check_trials, "Simulation trials per cell")->check(CLI::PositiveNumber);
  check_cmd->add_option("--seed", check_seed, "Seed for random models and simulation");
  check_cmd->add_option("--fixture", fixture, "Observable JSON to validate");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return report_error("UsageError", e.what(), kExitInvalid);
  }

  try {
    if (*solve_cmd) {
      print_verdict(cmt::problems::solve(spec_from_flags(solve)), solve.human);
      return 0;
    }
    if (*fisher_cmd) return run_fisher(fisher);
    if (*bayes_cmd) return run_bayes(bayes);
    if (*sim_cmd) return run_simulate(sim);
    if (*check_cmd) return run_check(check_trials, check_seed, fixture);
  } catch (const Error& e) {
    return report_error(std::string(cmt::to_string(e.code())), e.what(),
                        cmt::is_degenerate_inference(e.code()) ? kExitDegenerate : kExitInvalid);
  } catch (const std::exception& e) {
    return report_error("ParseError", e.what(), kExitInvalid);
  }
  return kExitInvalid;
}
