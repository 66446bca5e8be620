// tourney: command-line front end for mean score sequences of random
// tournaments. Reads a JSON document from FILE (or stdin) and writes a JSON
// CommandResult to stdout.

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "tourney/commands.hpp"

namespace {

std::string read_input(const std::string& path) {
  if (path.empty() || path == "-") {
    return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  }
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Mean score sequences of random tournaments"};
  app.require_subcommand(1);

  std::string input_path;
  bool pretty = false;
  std::optional<double> tol;
  std::optional<std::size_t> max_iter;
  std::optional<std::uint64_t> seed;

  const std::pair<const char*, const char*> commands[] = {
      {"check", "Classify x: feasible, boundary or interior; cross-check by max flow"},
      {"construct", "Build a random tournament realizing x (method football|order)"},
      {"fit", "Fit logistic or Cauchy ratings whose mean scores are x"},
      {"sst", "Check strong stochastic transitivity of p or relabel it"},
      {"oracle", "Max-flow and exhaustive-enumeration checks"},
      {"simulate", "Monte Carlo seasons of the goal-scoring model"},
      {"compare", "Juxtapose the goal-scoring and max-entropy matrices for x"},
  };
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("input", input_path, "JSON input file (default: stdin)");
    sub->add_flag("--pretty", pretty, "Indent the JSON output");
    sub->add_option("--tol", tol, "Residual tolerance for rating fits");
    sub->add_option("--max-iter", max_iter, "Newton iteration budget for rating fits");
    sub->add_option("--seed", seed, "Seed for simulate");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  const std::string name = app.get_subcommands().front()->get_name();
  std::string text;
  try {
    text = read_input(input_path);
  } catch (const std::exception& e) {
    std::cerr << "tourney: " << e.what() << '\n';
    return 2;
  }

  const tourney::cli::CommandResult result =
      tourney::cli::run_command_text(name, text, {tol, max_iter, seed});
  std::cout << tourney::cli::render(result.to_json(), pretty) << '\n';
  return result.exit_code();
}
