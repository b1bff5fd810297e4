#include "cmt/json_io.hpp"

#include "cmt/error.hpp"

#include <charconv>
#include <cmath>
#include <limits>

namespace cmt::io {
namespace {

[[noreturn]] void parse_fail(const std::string& what) { throw Error(ErrorCode::ParseError, what); }

json integer_to_json(const Integer& v) {
  if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max())
    return v.convert_to<std::int64_t>();
  return v.str();
}

Integer integer_from_json(const json& j) {
  if (j.is_number_integer()) {
    if (j.is_number_unsigned()) return Integer(j.get<std::uint64_t>());
    return Integer(j.get<std::int64_t>());
  }
  if (j.is_string()) {
    Rational r = parse_rational(j.get<std::string>());
    if (denominator_of(r) != 1) parse_fail("expected an integer, got " + j.dump());
    return numerator_of(r);
  }
  parse_fail("expected an integer, got " + j.dump());
}

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) parse_fail(std::string("missing field '") + key + "'");
  return j.at(key);
}

std::vector<std::string> strings_from_json(const json& j, const char* what) {
  if (!j.is_array()) parse_fail(std::string(what) + " must be an array of strings");
  std::vector<std::string> out;
  for (const auto& e : j) {
    if (!e.is_string()) parse_fail(std::string(what) + " must be an array of strings");
    out.push_back(e.get<std::string>());
  }
  return out;
}

std::string string_field(const json& j, const char* key) {
  const auto& v = field(j, key);
  if (!v.is_string()) parse_fail(std::string("field '") + key + "' must be a string");
  return v.get<std::string>();
}

problems::Labels labels_from(const json& j) {
  if (!j.contains("labels")) return {"A1", "A2", "A3"};
  auto v = strings_from_json(j.at("labels"), "labels");
  if (v.size() != 3) parse_fail("exactly three labels are required");
  return {v[0], v[1], v[2]};
}

std::optional<problems::Triple> prior_from(const json& j) {
  if (!j.contains("prior") || j.at("prior").is_null()) return std::nullopt;
  auto v = rationals_from_json(j.at("prior"));
  if (v.size() != 3) throw Error(ErrorCode::InvalidPrior, "prior must have three entries");
  return problems::Triple{v[0], v[1], v[2]};
}

std::optional<std::vector<Rational>> optional_rationals(const json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return rationals_from_json(j.at(key));
}

}  // namespace

json to_json(const Rational& value) {
  return json::array({integer_to_json(numerator_of(value)), integer_to_json(denominator_of(value))});
}

Rational rational_from_json(const json& j) {
  if (j.is_array()) {
    if (j.size() != 2) parse_fail("rational pair must have two entries: " + j.dump());
    Integer den = integer_from_json(j[1]);
    if (den == 0) parse_fail("zero denominator: " + j.dump());
    return Rational(integer_from_json(j[0]), den);
  }
  if (j.is_number_integer()) return Rational(integer_from_json(j));
  if (j.is_number_float()) {
    const double d = j.get<double>();
    if (!std::isfinite(d)) parse_fail("non-finite number");
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, d);
    return parse_rational(std::string_view(buf, static_cast<std::size_t>(res.ptr - buf)));
  }
  if (j.is_string()) return parse_rational(j.get<std::string>());
  parse_fail("not a rational: " + j.dump());
}

json to_json(const std::vector<Rational>& values) {
  json out = json::array();
  for (const auto& v : values) out.push_back(to_json(v));
  return out;
}

std::vector<Rational> rationals_from_json(const json& j) {
  if (!j.is_array()) parse_fail("expected an array of rationals, got " + j.dump());
  std::vector<Rational> out;
  for (const auto& e : j) out.push_back(rational_from_json(e));
  return out;
}

std::vector<Rational> parse_rational_list(std::string_view text) {
  auto start = text.find_first_not_of(" \t");
  if (start != std::string_view::npos && text[start] == '[') {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) parse_fail("invalid JSON list: " + std::string(text));
    return rationals_from_json(j);
  }
  std::vector<Rational> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto comma = text.find(',', pos);
    if (comma == std::string_view::npos) comma = text.size();
    out.push_back(parse_rational(text.substr(pos, comma - pos)));
    pos = comma + 1;
  }
  return out;
}

Rational parse_rational_flag(std::string_view text) {
  auto start = text.find_first_not_of(" \t");
  if (start != std::string_view::npos && text[start] == '[') {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) parse_fail("invalid JSON rational: " + std::string(text));
    return rational_from_json(j);
  }
  return parse_rational(text);
}

json observable_to_json(const Observable<Rational>& obs) {
  json rows = json::array();
  for (Eigen::Index x = 0; x < obs.effects().rows(); ++x) {
    json row = json::array();
    for (Eigen::Index w = 0; w < obs.effects().cols(); ++w) row.push_back(to_json(obs.effects()(x, w)));
    rows.push_back(std::move(row));
  }
  return {{"space", obs.space().labels()}, {"outcomes", obs.outcomes()}, {"effects", rows}};
}

Observable<Rational> observable_from_json(const json& j) {
  auto space = StateSpace::make(strings_from_json(field(j, "space"), "space"));
  auto outcomes = strings_from_json(field(j, "outcomes"), "outcomes");
  const auto& effects = field(j, "effects");
  if (!effects.is_array()) parse_fail("effects must be an array");
  const auto rows = static_cast<Eigen::Index>(outcomes.size());
  const auto cols = static_cast<Eigen::Index>(space.size());
  Matrix<Rational> m(rows, cols);
  // nested: one array per outcome; flat: |X|·|Ω| rationals. The lengths
  // decide, except for a single point where a nested row is a 1-element array.
  bool nested = effects.size() == outcomes.size();
  if (cols == 1) nested = !effects.empty() && effects[0].is_array() && effects[0].size() == 1;
  if (nested) {
    if (effects.size() != outcomes.size())
      throw Error(ErrorCode::DimensionMismatch, "effects has " + std::to_string(effects.size()) + " rows for " +
                                                    std::to_string(outcomes.size()) + " outcomes");
    for (Eigen::Index x = 0; x < rows; ++x) {
      auto row = rationals_from_json(effects[static_cast<std::size_t>(x)]);
      if (static_cast<Eigen::Index>(row.size()) != cols)
        throw Error(ErrorCode::DimensionMismatch, "effects row " + std::to_string(x) + " has the wrong length");
      for (Eigen::Index w = 0; w < cols; ++w) m(x, w) = row[static_cast<std::size_t>(w)];
    }
  } else {
    auto flat = rationals_from_json(effects);
    if (static_cast<Eigen::Index>(flat.size()) != rows * cols)
      throw Error(ErrorCode::DimensionMismatch, "flat effects list has " + std::to_string(flat.size()) + " entries, expected " +
                                                    std::to_string(rows * cols));
    for (Eigen::Index x = 0; x < rows; ++x)
      for (Eigen::Index w = 0; w < cols; ++w) m(x, w) = flat[static_cast<std::size_t>(x * cols + w)];
  }
  return Observable<Rational>::make(std::move(space), std::move(outcomes), std::move(m));
}

json causal_family_to_json(const CausalFamily<Rational>& family) {
  const auto& tree = family.tree();
  json nodes = json::array();
  for (const auto& id : tree.nodes()) nodes.push_back({{"id", id}, {"space", tree.space(id).labels()}});
  json edges = json::array();
  for (const auto& child : tree.edge_children()) {
    const auto& m = family.edge(child).matrix();
    json rows = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      json row = json::array();
      for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(to_json(m(r, c)));
      rows.push_back(std::move(row));
    }
    edges.push_back({{"from", *tree.parent(child)}, {"to", child}, {"matrix", rows}});
  }
  return {{"nodes", nodes}, {"edges", edges}};
}

CausalFamily<Rational> causal_family_from_json(const json& j) {
  std::vector<std::pair<std::string, StateSpace>> nodes;
  const auto& jn = field(j, "nodes");
  if (!jn.is_array()) parse_fail("nodes must be an array");
  for (const auto& n : jn)
    nodes.emplace_back(string_field(n, "id"), StateSpace::make(strings_from_json(field(n, "space"), "space")));
  std::map<std::string, std::string> parent;
  std::map<std::string, Matrix<Rational>> ops;
  const auto& je = j.contains("edges") ? j.at("edges") : json::array();
  if (!je.is_array()) parse_fail("edges must be an array");
  for (const auto& e : je) {
    const auto from = string_field(e, "from");
    const auto to = string_field(e, "to");
    if (!parent.emplace(to, from).second) throw Error(ErrorCode::InvalidTree, "node '" + to + "' has two parents");
    const auto& rows = field(e, "matrix");
    if (!rows.is_array()) parse_fail("matrix must be an array of rows");
    const auto r = static_cast<Eigen::Index>(rows.size());
    const auto c = r == 0 ? Eigen::Index{0} : static_cast<Eigen::Index>(rows[0].size());
    Matrix<Rational> m(r, c);
    for (Eigen::Index i = 0; i < r; ++i) {
      auto row = rationals_from_json(rows[static_cast<std::size_t>(i)]);
      if (static_cast<Eigen::Index>(row.size()) != c) throw Error(ErrorCode::DimensionMismatch, "ragged matrix rows");
      for (Eigen::Index k = 0; k < c; ++k) m(i, k) = row[static_cast<std::size_t>(k)];
    }
    ops.emplace(to, std::move(m));
  }
  return CausalFamily<Rational>::make(CausalTree::make(std::move(nodes), std::move(parent)), ops);
}

json problem_spec_to_json(const problems::ProblemSpec& spec) {
  return std::visit(
      [](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        json j;
        if constexpr (std::is_same_v<T, problems::MontyHallSpec>) {
          j = {{"problem", "monty_hall"}, {"labels", s.doors}, {"picked", s.picked}, {"opened", s.opened}};
        } else {
          j = {{"problem", "three_prisoners"}, {"labels", s.prisoners}, {"asker", s.asker}, {"named", s.named_executed}};
        }
        j["variant"] = problems::to_string(s.variant);
        j["alpha"] = to_json(s.alpha);
        if (s.prior) j["prior"] = to_json(std::vector<Rational>(s.prior->begin(), s.prior->end()));
        return j;
      },
      spec);
}

problems::ProblemSpec problem_spec_from_json(const json& j) {
  if (!j.is_object()) parse_fail("problem spec must be a JSON object");
  const auto kind = problems::parse_problem(string_field(j, "problem"));
  const auto variant = problems::parse_variant(string_field(j, "variant"));
  const auto labels = labels_from(j);
  const Rational alpha = j.contains("alpha") ? rational_from_json(j.at("alpha")) : Rational(1, 2);
  auto pick = [&](const char* a, const char* b, const char* fallback) {
    if (j.contains(a)) return string_field(j, a);
    if (j.contains(b)) return string_field(j, b);
    return std::string(fallback);
  };
  if (kind == problems::ProblemKind::MontyHall) {
    problems::MontyHallSpec s;
    s.doors = labels;
    s.picked = pick("picked", "asker", "A1");
    s.opened = pick("opened", "named", "A3");
    s.prior = prior_from(j);
    s.alpha = alpha;
    s.variant = variant;
    return s;
  }
  problems::PrisonersSpec s;
  s.prisoners = labels;
  s.asker = pick("asker", "picked", "A1");
  s.named_executed = pick("named", "opened", "A3");
  s.prior = prior_from(j);
  s.alpha = alpha;
  s.variant = variant;
  return s;
}

json verdict_to_json(const problems::Verdict& v) {
  json j = {{"problem", problems::to_string(v.problem)},
            {"variant", problems::to_string(v.variant)},
            {"kind", problems::to_string(v.kind)},
            {"labels", v.labels}};
  if (v.prior) j["prior"] = to_json(*v.prior);
  if (v.posterior) j["posterior"] = to_json(*v.posterior);
  if (v.inferred_state) j["inferred_state"] = *v.inferred_state;
  return j;
}

problems::Verdict verdict_from_json(const json& j) {
  problems::Verdict v;
  v.problem = problems::parse_problem(string_field(j, "problem"));
  v.variant = problems::parse_variant(string_field(j, "variant"));
  v.kind = problems::parse_verdict_kind(string_field(j, "kind"));
  v.labels = strings_from_json(field(j, "labels"), "labels");
  v.prior = optional_rationals(j, "prior");
  v.posterior = optional_rationals(j, "posterior");
  if (j.contains("inferred_state")) v.inferred_state = strings_from_json(j.at("inferred_state"), "inferred_state");
  return v;
}

json fisher_to_json(const FisherResult<Rational>& r) {
  return {{"maximizers", r.maximizers}, {"max_likelihood", to_json(r.max_likelihood)}};
}

json bayes_to_json(const BayesResult<Rational>& r) {
  const auto& w = r.posterior.weights();
  return {{"labels", r.posterior.space().labels()},
          {"posterior", to_json(std::vector<Rational>(w.begin(), w.end()))},
          {"evidence", to_json(r.evidence)}};
}

json sim_report_to_json(const sim::SimReport& report,
                        const std::vector<std::pair<std::string, std::vector<double>>>& z_scores) {
  json counts = json::array();
  for (const auto& row : report.counts) counts.push_back(row);
  json conditional = json::object();
  json marginal = json::object();
  for (const auto& u : report.utterances) {
    marginal[u] = report.utterance_frequency(u);
    if (report.utterance_count(u) == 0) {
      conditional[u] = nullptr;
      continue;
    }
    json freqs = json::array();
    for (std::size_t s = 0; s < 3; ++s) freqs.push_back(report.conditional_frequency(s, u));
    conditional[u] = freqs;
  }
  json j = {{"labels", report.labels},
            {"utterances", report.utterances},
            {"chosen", report.labels[report.chosen]},
            {"trials", report.trials},
            {"counts", counts},
            {"utterance_frequencies", marginal},
            {"conditional_frequencies", conditional},
            {"validity", {{"named_chosen", report.named_chosen}, {"named_true", report.named_true}}}};
  if (!z_scores.empty()) {
    json z = json::object();
    for (const auto& [u, scores] : z_scores) z[u] = scores;
    j["z_scores"] = z;
  }
  return j;
}

std::string sim_report_to_csv(const sim::SimReport& report) {
  std::string out = "truth,utterance,count\n";
  for (std::size_t s = 0; s < 3; ++s)
    for (std::size_t u = 0; u < 3; ++u)
      out += report.labels[s] + "," + report.utterances[u] + "," + std::to_string(report.counts[s][u]) + "\n";
  return out;
}

}  // namespace cmt::io
