#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "tourney/commands.hpp"

using tourney::ErrorCode;
using namespace tourney::cli;

namespace {

CommandResult run(const std::string& name, const std::string& text, const Overrides& o = {}) {
  return run_command_text(name, text, o);
}

std::string line(const CommandResult& r) { return render(r.to_json(), false); }

double max_off_diagonal_gap(const Json& m, double target) {
  double worst = 0.0;
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j)
      if (i != j) worst = std::max(worst, std::abs(m[i][j].get<double>() - target));
  return worst;
}

}  // namespace

TEST_CASE("check command") {
  CHECK(line(run("check", R"({"x":[0,1,2]})")) ==
        R"({"status":"ok","payload":{"feasible":true,"class":"Boundary","flow_agrees":true},"diagnostics":[]})");
  CHECK(line(run("check", R"({"x":[1,1,1]})")) ==
        R"({"status":"ok","payload":{"feasible":true,"class":"Interior","flow_agrees":true},"diagnostics":[]})");
  CHECK(line(run("check", R"({"x":[0,0.5,2.5]})")) ==
        R"({"status":"ok","payload":{"feasible":false,"class":"Infeasible","flow_agrees":true},"diagnostics":[]})");
  // Wrong total: infeasible, with a diagnostic.
  const auto off = run("check", R"({"x":[1,1,2]})");
  CHECK(off.ok);
  CHECK(off.payload["class"] == "Infeasible");
  CHECK(off.payload["flow_agrees"] == true);
  CHECK(off.diagnostics.size() == 1);

  const auto bad = run("check", R"({"x":[0,1)");
  CHECK_FALSE(bad.ok);
  CHECK(bad.exit_code() == 2);
  CHECK(bad.to_json()["payload"]["code"] == "parse_error");
  CHECK(run("check", R"({"x":["a"]})").exit_code() == 2);
  CHECK(run("check", R"({"y":[1]})").exit_code() == 2);
}

TEST_CASE("construct command") {
  const auto fb = run("construct", R"({"x":[0,1,2],"method":"football"})");
  REQUIRE(fb.ok);
  CHECK(render(fb.payload["p"], false) == "[[0.5,0,0],[1,0.5,0],[1,1,0.5]]");

  const auto order = run("construct", R"({"x":[0,1,2],"method":"order"})");
  REQUIRE(order.ok);
  CHECK(render(order.payload["mixture"], false) == R"([{"weight":1,"perm":[1,2,3]}])");
  CHECK(render(order.payload["expected_ranks"], false) == "[1,2,3]");

  const auto flat = run("construct", R"({"x":[1,1,1],"method":"football"})");
  REQUIRE(flat.ok);
  CHECK(max_off_diagonal_gap(flat.payload["p"], 0.5) <= 1e-12);

  CHECK(run("construct", R"({"x":[0,0.5,2.5],"method":"order"})").exit_code() == 3);
  CHECK(run("construct", R"({"x":[1,1,1],"method":"coinflip"})").exit_code() == 2);
}

TEST_CASE("construct keeps the caller's team order") {
  const auto r = run("construct", R"({"x":[2,0,1],"method":"football"})");
  REQUIRE(r.ok);
  CHECK(render(r.payload["row_sums"], false) == "[2,0,1]");
  CHECK(render(r.payload["p"], false) == "[[0.5,1,1],[0,0.5,0],[0,1,0.5]]");
  const auto o = run("construct", R"({"x":[2,0,1],"method":"order"})");
  CHECK(render(o.payload["mixture"], false) == R"([{"weight":1,"perm":[3,1,2]}])");
}

TEST_CASE("fit command") {
  const auto flat = run("fit", R"({"x":[1,1,1],"link":"logistic"})");
  REQUIRE(flat.ok);
  CHECK(render(flat.payload["lambdas"], false) == "[0,0,0]");
  CHECK(flat.payload["residual"].get<double>() <= 1e-12);

  const auto two = run("fit", R"({"x":[0.268941,0.731059],"link":"logistic"})");
  REQUIRE(two.ok);
  CHECK(two.payload["lambdas"][0].get<double>() == doctest::Approx(-0.5).epsilon(1e-5));
  CHECK(two.payload["lambdas"][1].get<double>() == doctest::Approx(0.5).epsilon(1e-5));

  const auto boundary = run("fit", R"({"x":[0,1,2],"link":"logistic"})");
  CHECK(boundary.exit_code() == 4);
  CHECK(boundary.to_json()["payload"]["code"] == "boundary");

  Overrides starved;
  starved.max_iter = 1;
  const auto stuck = run("fit", R"({"x":[0.01,1,1.99],"link":"cauchy"})", starved);
  CHECK(stuck.exit_code() == 5);
  CHECK(stuck.to_json()["payload"]["best_residual"].get<double>() > 0.0);

  CHECK(run("fit", R"({"x":[1,1,1],"link":"probit"})").exit_code() == 2);
}

TEST_CASE("sst command") {
  const auto flat = run("sst", R"({"p":[[0.5,0.5,0.5],[0.5,0.5,0.5],[0.5,0.5,0.5]],"action":"check"})");
  CHECK(render(flat.payload, false) == R"({"monotone":true,"transitive":true})");
  const std::string cycle = R"([[0.5,0.6,0.4],[0.4,0.5,0.6],[0.6,0.4,0.5]])";
  const auto c = run("sst", R"({"p":)" + cycle + R"(,"action":"check"})");
  CHECK(render(c.payload, false) == R"({"monotone":false,"transitive":false})");
  CHECK(run("sst", R"({"p":)" + cycle + R"(,"action":"relabel"})").exit_code() == 6);

  // Fitted logistic matrix (monotone), rows and columns shuffled.
  const auto fit = run("fit", R"({"x":[0.6,1,1.4],"link":"logistic"})");
  REQUIRE(fit.ok);
  const Json p = fit.payload["p"];
  Json shuffled = Json::array();
  const std::size_t sigma[] = {2, 0, 1};
  for (std::size_t i = 0; i < 3; ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < 3; ++j) row.push_back(0.0);
    shuffled.push_back(row);
  }
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) shuffled[sigma[i]][sigma[j]] = p[i][j];
  Json input = Json::object();
  input["p"] = shuffled;
  input["action"] = "relabel";
  const auto relabeled = run_command("sst", input);
  REQUIRE(relabeled.ok);
  Json check = Json::object();
  check["p"] = relabeled.payload["relabeled_p"];
  check["action"] = "check";
  CHECK(run_command("sst", check).payload["monotone"] == true);

  CHECK(run("sst", R"({"p":[[0.5,0.7],[0.7,0.5]],"action":"check"})").exit_code() == 2);
  CHECK(run("sst", R"({"p":[[0.5,0.5],[0.5]],"action":"check"})").exit_code() == 2);
}

TEST_CASE("oracle command") {
  const auto e = run("oracle", R"({"n":3})");
  CHECK(render(e.payload, false) ==
        R"({"n":3,"score_sequences":[[0,1,2],[1,1,1]],"landau_agrees":true})");
  CHECK(run("oracle", R"({"n":6})").exit_code() == 2);
  const auto x = run("oracle", R"({"x":[0,0.5,2.5]})");
  CHECK(x.payload["majorized"] == false);
  CHECK(x.payload["flow_feasible"] == false);
  CHECK(x.payload["landau"].is_null());
  CHECK(run("oracle", R"({"x":[1,1,1]})").payload["landau"] == true);
}

TEST_CASE("simulate command is deterministic per seed") {
  const std::string in = R"({"x":[0.5,1,1.5],"seasons":2000,"seed":7})";
  const auto a = run("simulate", in);
  const auto b = run("simulate", in);
  REQUIRE(a.ok);
  CHECK(line(a) == line(b));
  Overrides other;
  other.seed = 8;
  CHECK(line(run("simulate", in, other)) != line(a));
  CHECK(run("simulate", R"({"x":[0,1,2],"seasons":3})").payload["scores"] == Json::parse("[0,1,2]"));
}

TEST_CASE("compare command") {
  const auto flat = run("compare", R"({"x":[1,1,1]})");
  REQUIRE(flat.ok);
  CHECK(flat.payload["max_abs_diff"].get<double>() <= 1e-8);
  const auto mid = run("compare", R"({"x":[0.5,1,1.5]})");
  REQUIRE(mid.ok);
  CHECK(mid.payload["entropy_bt"].get<double>() <= mid.payload["entropy_football"].get<double>());
  CHECK(run("compare", R"({"x":[0,1,2]})").exit_code() == 4);
}

TEST_CASE("rendering") {
  Json v = Json::object();
  v["a"] = 0.1 + 0.2;
  v["b"] = -0.0;
  v["c"] = Json::array({1, 2});
  v["d"] = std::nan("");
  CHECK(render(v, false) == R"({"a":0.3,"b":0,"c":[1,2],"d":null})");
  CHECK(render(v, true) == "{\n  \"a\": 0.3,\n  \"b\": 0,\n  \"c\": [1, 2],\n  \"d\": null\n}");
  CHECK(run("bogus", "{}").exit_code() == 2);
}
