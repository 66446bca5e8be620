#include "tourney/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include "tourney/football.hpp"
#include "tourney/oracle.hpp"
#include "tourney/ratings.hpp"
#include "tourney/seqorder.hpp"
#include "tourney/sst.hpp"
#include "tourney/transport.hpp"

namespace tourney::cli {
namespace {

CommandResult failure(ErrorCode code, std::string message) {
  CommandResult r;
  r.ok = false;
  r.error = code;
  r.message = std::move(message);
  return r;
}

const Json& require(const Json& input, const char* key) {
  if (!input.is_object() || !input.contains(key)) {
    throw Error(ErrorCode::kValidation, std::string("missing field '") + key + "'");
  }
  return input.at(key);
}

std::vector<double> parse_vector(const Json& value, const char* what) {
  if (!value.is_array()) {
    throw Error(ErrorCode::kParse, std::string(what) + " must be an array of numbers");
  }
  std::vector<double> out;
  out.reserve(value.size());
  for (const Json& v : value) {
    if (!v.is_number()) {
      throw Error(ErrorCode::kParse, std::string(what) + " must be an array of numbers");
    }
    out.push_back(v.get<double>());
  }
  return out;
}

SquareMatrix parse_matrix(const Json& value, const char* what) {
  if (!value.is_array()) {
    throw Error(ErrorCode::kParse, std::string(what) + " must be an array of rows");
  }
  std::vector<std::vector<double>> rows;
  for (const Json& row : value) rows.push_back(parse_vector(row, what));
  return SquareMatrix::from_rows(rows);
}

template <typename T>
T optional_field(const Json& input, const char* key, T fallback) {
  if (!input.contains(key)) return fallback;
  const Json& v = input.at(key);
  if (!v.is_number()) {
    throw Error(ErrorCode::kParse, std::string("field '") + key + "' must be a number");
  }
  return v.get<T>();
}

// Team order <-> sorted order. position[t] is team t's index in the sorted
// sequence.
struct TeamOrder {
  explicit TeamOrder(const SortedVector& sorted) : position(sorted.size()) {
    for (std::size_t k = 0; k < sorted.size(); ++k) position[sorted.order()[k]] = k;
  }

  Json vector(std::span<const double> sorted_values) const {
    Json out = Json::array();
    for (std::size_t t = 0; t < position.size(); ++t) out.push_back(sorted_values[position[t]]);
    return out;
  }

  Json matrix(const SquareMatrix& sorted_matrix) const {
    Json out = Json::array();
    for (std::size_t t = 0; t < position.size(); ++t) {
      Json row = Json::array();
      for (std::size_t u = 0; u < position.size(); ++u) {
        row.push_back(sorted_matrix(position[t], position[u]));
      }
      out.push_back(std::move(row));
    }
    return out;
  }

  std::vector<std::size_t> position;
};

Json matrix_json(const SquareMatrix& m) {
  Json out = Json::array();
  for (std::size_t i = 0; i < m.size(); ++i) {
    out.push_back(Json(std::vector<double>(m.row(i).begin(), m.row(i).end())));
  }
  return out;
}

MeanScoreSequence parse_scores(const Json& input) {
  return MeanScoreSequence(parse_vector(require(input, "x"), "x"));
}

void require_feasible(const MeanScoreSequence& x) {
  if (classify_score_sequence(x) == FeasibilityClass::kInfeasible) {
    throw Error(ErrorCode::kNotMajorized,
                "x is not majorized by (0, 1, ..., n-1); no random tournament has "
                "these mean scores");
  }
}

FitOptions fit_options(const Json& input, const Overrides& overrides) {
  FitOptions opts;
  opts.tol = overrides.tol.value_or(optional_field(input, "tol", opts.tol));
  opts.max_iter =
      overrides.max_iter.value_or(optional_field(input, "max_iter", opts.max_iter));
  if (!(opts.tol > 0.0)) throw Error(ErrorCode::kValidation, "tol must be positive");
  return opts;
}

}  // namespace

int CommandResult::exit_code() const { return ok ? 0 : exit_code_for(*error); }

Json CommandResult::to_json() const {
  Json out = Json::object();
  out["status"] = ok ? "ok" : "error";
  if (ok) {
    out["payload"] = payload;
  } else {
    Json err = Json::object();
    err["code"] = std::string(error_code_name(*error));
    err["message"] = message;
    for (const auto& [k, v] : error_details.items()) err[k] = v;
    out["payload"] = std::move(err);
  }
  out["diagnostics"] = diagnostics;
  return out;
}

CommandResult cmd_check(const Json& input) {
  const std::vector<double> raw = parse_vector(require(input, "x"), "x");
  CommandResult r;
  FeasibilityClass cls = FeasibilityClass::kInfeasible;
  bool flow = false;
  try {
    const MeanScoreSequence x{std::vector<double>(raw)};
    cls = classify_score_sequence(x);
    flow = flow_feasible(x);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kValidation) throw;
    r.diagnostics.push_back(e.what());
    flow = flow_feasible(std::span<const double>(raw));
  }
  const bool feasible = cls != FeasibilityClass::kInfeasible;
  r.payload["feasible"] = feasible;
  r.payload["class"] = std::string(feasibility_class_name(cls));
  r.payload["flow_agrees"] = flow == feasible;
  return r;
}

CommandResult cmd_construct(const Json& input) {
  const MeanScoreSequence x = parse_scores(input);
  const Json& method_field = require(input, "method");
  if (!method_field.is_string()) {
    throw Error(ErrorCode::kParse, "method must be a string");
  }
  const std::string method = method_field.get<std::string>();
  if (method != "football" && method != "order") {
    throw Error(ErrorCode::kValidation,
                "unknown method '" + method + "' (football|order)");
  }
  require_feasible(x);
  const TeamOrder teams(x.sorted());
  CommandResult r;
  if (method == "football") {
    const GoalDistributions g = goal_distributions(x);
    const WinProbabilityMatrix p = football_win_matrix(g);
    r.payload["mu"] = teams.matrix(g.rows());
    r.payload["p"] = teams.matrix(p.entries());
    r.payload["row_sums"] = teams.vector(mean_scores(p));
  } else {
    const PermutationMixture m = random_total_order_model(x);
    Json mixture = Json::array();
    for (const auto& term : m.terms()) {
      Json perm = Json::array();
      for (std::size_t t = 0; t < m.size(); ++t) perm.push_back(term.perm[teams.position[t]] + 1);
      Json entry = Json::object();
      entry["weight"] = term.weight;
      entry["perm"] = std::move(perm);
      mixture.push_back(std::move(entry));
    }
    r.payload["mixture"] = std::move(mixture);
    r.payload["expected_ranks"] = teams.vector(mixture_expected_ranks(m));
  }
  return r;
}

CommandResult cmd_fit(const Json& input, const Overrides& overrides) {
  const MeanScoreSequence x = parse_scores(input);
  Link link = Link::kLogistic;
  if (input.contains("link")) {
    if (!input.at("link").is_string()) throw Error(ErrorCode::kParse, "link must be a string");
    link = parse_link(input.at("link").get<std::string>());
  }
  const FitReport fit = fit_ratings(x, link, fit_options(input, overrides));
  const TeamOrder teams(x.sorted());
  CommandResult r;
  r.payload["lambdas"] = teams.vector(fit.ratings.lambdas());
  r.payload["link"] = std::string(link_name(link));
  r.payload["residual"] = fit.residual;
  r.payload["iterations"] = fit.iterations;
  r.payload["objective"] = fit.objective;
  r.payload["p"] = teams.matrix(win_matrix_from_ratings(fit.ratings).entries());
  return r;
}

CommandResult cmd_sst(const Json& input) {
  const WinProbabilityMatrix p(parse_matrix(require(input, "p"), "p"));
  const Json& action_field = require(input, "action");
  const std::string action = action_field.is_string() ? action_field.get<std::string>() : "";
  CommandResult r;
  if (action == "check") {
    r.payload["monotone"] = is_sst_monotone(p);
    r.payload["transitive"] = is_sst_transitive(p);
  } else if (action == "relabel") {
    const Relabeling sigma = sst_relabel(p);
    Json perm = Json::array();
    for (std::size_t v : sigma.perm) perm.push_back(v + 1);
    r.payload["perm"] = std::move(perm);
    r.payload["relabeled_p"] = matrix_json(p.relabeled(sigma.perm).entries());
  } else {
    throw Error(ErrorCode::kValidation, "action must be 'check' or 'relabel'");
  }
  return r;
}

CommandResult cmd_oracle(const Json& input) {
  CommandResult r;
  if (input.is_object() && input.contains("n")) {
    const Json& nf = input.at("n");
    if (!nf.is_number_integer() || nf.get<long long>() < 1) {
      throw Error(ErrorCode::kValidation, "n must be a positive integer");
    }
    const auto n = static_cast<std::size_t>(nf.get<long long>());
    const auto found = enumerate_score_multisets(n);
    Json sequences = Json::array();
    bool agrees = true;
    for (const auto& s : found) {
      sequences.push_back(s);
      agrees = agrees && landau_check(s);
    }
    r.payload["n"] = n;
    r.payload["score_sequences"] = std::move(sequences);
    r.payload["landau_agrees"] = agrees;
    return r;
  }
  const std::vector<double> raw = parse_vector(require(input, "x"), "x");
  const SortedVector sorted{std::vector<double>(raw)};
  const double games = 0.5 * static_cast<double>(raw.size()) * static_cast<double>(raw.size() - 1);
  r.payload["majorized"] = is_majorized(sorted, transitive_scores(raw.size()));
  r.payload["flow_feasible"] = flow_feasible(std::span<const double>(raw));
  r.payload["max_flow"] = pair_team_max_flow(raw);
  r.payload["games"] = games;
  bool integral = true;
  std::vector<int> scores;
  for (double v : raw) {
    integral = integral && v == std::round(v) && std::abs(v) < 1e6;
    if (integral) scores.push_back(static_cast<int>(v));
  }
  r.payload["landau"] = integral ? Json(landau_check(scores)) : Json(nullptr);
  return r;
}

CommandResult cmd_simulate(const Json& input, const Overrides& overrides) {
  const MeanScoreSequence x = parse_scores(input);
  const auto seasons = optional_field<std::uint64_t>(input, "seasons", 10'000);
  const auto seed = overrides.seed.value_or(optional_field<std::uint64_t>(input, "seed", 0));
  require_feasible(x);
  const TeamOrder teams(x.sorted());
  CommandResult r;
  r.payload["scores"] = teams.vector(monte_carlo_scores(goal_distributions(x), seasons, seed));
  r.payload["seasons"] = seasons;
  r.payload["seed"] = seed;
  return r;
}

CommandResult cmd_compare(const Json& input, const Overrides& overrides) {
  const MeanScoreSequence x = parse_scores(input);
  const FitReport fit = fit_ratings(x, Link::kLogistic, fit_options(input, overrides));
  const WinProbabilityMatrix bt = win_matrix_from_ratings(fit.ratings);
  const WinProbabilityMatrix football = football_win_matrix(goal_distributions(x));
  const TeamOrder teams(x.sorted());
  CommandResult r;
  r.payload["p_football"] = teams.matrix(football.entries());
  r.payload["p_bt"] = teams.matrix(bt.entries());
  r.payload["entropy_football"] = entropy_objective(football);
  r.payload["entropy_bt"] = entropy_objective(bt);
  r.payload["max_abs_diff"] = football.entries().max_abs_diff(bt.entries());
  return r;
}

CommandResult run_command(const std::string& name, const Json& input,
                          const Overrides& overrides) {
  try {
    if (name == "check") return cmd_check(input);
    if (name == "construct") return cmd_construct(input);
    if (name == "fit") return cmd_fit(input, overrides);
    if (name == "sst") return cmd_sst(input);
    if (name == "oracle") return cmd_oracle(input);
    if (name == "simulate") return cmd_simulate(input, overrides);
    if (name == "compare") return cmd_compare(input, overrides);
    return failure(ErrorCode::kParse, "unknown command '" + name + "'");
  } catch (const ConvergenceError& e) {
    CommandResult r = failure(e.code(), e.what());
    r.error_details["best_residual"] = e.best_residual();
    return r;
  } catch (const Error& e) {
    return failure(e.code(), e.what());
  } catch (const nlohmann::json::exception& e) {
    return failure(ErrorCode::kParse, e.what());
  }
}

CommandResult run_command_text(const std::string& name, const std::string& text,
                               const Overrides& overrides) {
  Json input;
  try {
    input = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    return failure(ErrorCode::kParse, e.what());
  }
  return run_command(name, input, overrides);
}

namespace {

void render_number(std::string& out, const Json& v) {
  if (v.is_number_integer()) {
    out += v.dump();
    return;
  }
  const double d = v.get<double>();
  if (!std::isfinite(d)) {
    out += "null";
    return;
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", d == 0.0 ? 0.0 : d);
  out += buf;
}

void render_into(std::string& out, const Json& v, bool pretty, int depth) {
  const auto newline = [&](int d) {
    if (!pretty) return;
    out += '\n';
    out.append(static_cast<std::size_t>(2 * d), ' ');
  };
  if (v.is_object()) {
    if (v.empty()) {
      out += "{}";
      return;
    }
    out += '{';
    bool first = true;
    for (const auto& [key, item] : v.items()) {
      if (!first) out += ',';
      first = false;
      newline(depth + 1);
      out += Json(key).dump();
      out += pretty ? ": " : ":";
      render_into(out, item, pretty, depth + 1);
    }
    newline(depth);
    out += '}';
  } else if (v.is_array()) {
    if (v.empty()) {
      out += "[]";
      return;
    }
    // Arrays of scalars stay on one line.
    const bool flat = std::none_of(v.begin(), v.end(), [](const Json& e) {
      return e.is_array() || e.is_object();
    });
    out += '[';
    bool first = true;
    for (const Json& item : v) {
      if (!first) out += pretty && flat ? ", " : ",";
      first = false;
      if (!flat) newline(depth + 1);
      render_into(out, item, pretty, depth + 1);
    }
    if (!flat) newline(depth);
    out += ']';
  } else if (v.is_number()) {
    render_number(out, v);
  } else {
    out += v.dump();
  }
}

}  // namespace

std::string render(const Json& value, bool pretty) {
  std::string out;
  render_into(out, value, pretty, 0);
  return out;
}

}  // namespace tourney::cli
