#pragma once

#include "cmt/causality.hpp"
#include "cmt/inference.hpp"
#include "cmt/observable.hpp"
#include "cmt/oracle_sim.hpp"
#include "cmt/problems.hpp"
#include "cmt/scalar.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace cmt::io {

using nlohmann::json;

// Rationals travel as [numerator, denominator]. Readers also take integers,
// JSON decimals (converted from their shortest decimal form), and strings in
// any form parse_rational accepts. Malformed input throws Error(ParseError).

json to_json(const Rational& value);
Rational rational_from_json(const json& j);
json to_json(const std::vector<Rational>& values);
std::vector<Rational> rationals_from_json(const json& j);

/// `1/2,1/4,1/4` or a JSON array such as `[[1,2],[1,4],[1,4]]`.
std::vector<Rational> parse_rational_list(std::string_view text);
/// `1/3`, `0.5` or `[1,3]`.
Rational parse_rational_flag(std::string_view text);

/// {"space": [...], "outcomes": [...], "effects": [[r, ...], ...]} with one
/// row per outcome. A flat row-major list of |X|·|Ω| rationals is accepted too.
json observable_to_json(const Observable<Rational>& obs);
Observable<Rational> observable_from_json(const json& j);

/// {"nodes": [{"id", "space"}], "edges": [{"from", "to", "matrix"}]}.
json causal_family_to_json(const CausalFamily<Rational>& family);
CausalFamily<Rational> causal_family_from_json(const json& j);

/// {"problem", "variant", "labels"?, "picked"/"asker", "opened"/"named", "prior"?, "alpha"?}.
json problem_spec_to_json(const problems::ProblemSpec& spec);
problems::ProblemSpec problem_spec_from_json(const json& j);

json verdict_to_json(const problems::Verdict& verdict);
problems::Verdict verdict_from_json(const json& j);

json fisher_to_json(const FisherResult<Rational>& result);
json bayes_to_json(const BayesResult<Rational>& result);

/// Optional z-score table keyed by utterance.
json sim_report_to_json(const sim::SimReport& report,
                        const std::vector<std::pair<std::string, std::vector<double>>>& z_scores = {});
/// truth,utterance,count rows.
std::string sim_report_to_csv(const sim::SimReport& report);

}  // namespace cmt::io
