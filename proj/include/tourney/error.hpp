#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace tourney {

enum class ErrorCode {
  kParse,
  kValidation,
  kDimension,
  kNotMajorized,
  kBoundary,
  kConvergence,
  kNotTransitive,
  kDecomposition,
  kRange,
  kSingularObjective,
  kSize,
};

// Stable machine-readable name, used in CLI output.
std::string_view error_code_name(ErrorCode code);

// Process exit status for a failed command carrying `code`.
int exit_code_for(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Raised by fit_ratings when the iteration budget runs out.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& message, double best_residual)
      : Error(ErrorCode::kConvergence, message), best_residual_(best_residual) {}

  double best_residual() const noexcept { return best_residual_; }

 private:
  double best_residual_;
};

}  // namespace tourney
