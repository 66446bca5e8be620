#pragma once

// JSON-in / JSON-out command layer behind the `tourney` executable.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "tourney/error.hpp"

namespace tourney::cli {

using Json = nlohmann::ordered_json;

struct CommandResult {
  bool ok = true;
  Json payload = Json::object();
  std::optional<ErrorCode> error;
  std::string message;
  std::vector<std::string> diagnostics;
  // Extra fields for the error object (e.g. best_residual).
  Json error_details = Json::object();

  int exit_code() const;
  // {"status", "payload" | "error", "diagnostics"} in that order.
  Json to_json() const;
};

// Command-line overrides; unset fields fall back to the input document.
struct Overrides {
  std::optional<double> tol;
  std::optional<std::size_t> max_iter;
  std::optional<std::uint64_t> seed;
};

CommandResult cmd_check(const Json& input);
CommandResult cmd_construct(const Json& input);
CommandResult cmd_fit(const Json& input, const Overrides& overrides = {});
CommandResult cmd_sst(const Json& input);
CommandResult cmd_oracle(const Json& input);
CommandResult cmd_simulate(const Json& input, const Overrides& overrides = {});
CommandResult cmd_compare(const Json& input, const Overrides& overrides = {});

// Dispatches by subcommand name; unknown names yield a kParse error.
CommandResult run_command(const std::string& name, const Json& input,
                          const Overrides& overrides = {});

// Parses text and dispatches; malformed JSON yields a kParse error.
CommandResult run_command_text(const std::string& name, const std::string& text,
                               const Overrides& overrides = {});

// Deterministic rendering: keys in insertion order, doubles with 12
// significant digits.
std::string render(const Json& value, bool pretty);

}  // namespace tourney::cli
