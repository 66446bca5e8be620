#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "tourney/football.hpp"
#include "tourney/seqorder.hpp"

namespace tourney {

enum class Link { kLogistic, kCauchy };

std::string_view link_name(Link link);
// Throws kValidation for anything but "logistic" or "cauchy".
Link parse_link(std::string_view name);

// Logistic e^u / (1 + e^u) or Cauchy CDF 1/2 + arctan(u) / pi.
double link_eval(double u, Link link);

// Strengths lambda, centered to sum zero on construction.
class RatingVector {
 public:
  RatingVector(std::vector<double> lambdas, Link link);

  std::size_t size() const noexcept { return lambdas_.size(); }
  const std::vector<double>& lambdas() const noexcept { return lambdas_; }
  Link link() const noexcept { return link_; }
  double spread() const;

 private:
  std::vector<double> lambdas_;
  Link link_;
};

// p(i, j) = link(lambda_i - lambda_j).
WinProbabilityMatrix win_matrix_from_ratings(const RatingVector& r);

struct FitOptions {
  double tol = 1e-8;
  std::size_t max_iter = 10'000;
  // Starting point for Newton; zero vector when absent.
  std::optional<std::vector<double>> initial;
};

struct FitReport {
  RatingVector ratings;
  double residual = 0.0;  // max |row sum - x_i|
  std::size_t iterations = 0;
  // entropy_objective for the logistic link, cauchy_objective for Cauchy.
  double objective = 0.0;
};

// Solves sum_{j != i} link(lambda_i - lambda_j) = x_i by damped Newton on the
// convex potential whose gradient is the row-sum mismatch.
// Errors: kNotMajorized (infeasible x), kBoundary (x on the boundary, no
// finite solution), ConvergenceError (budget exhausted).
FitReport fit_ratings(const MeanScoreSequence& x, Link link,
                      const FitOptions& options = {});

// sum_{i != j} p log p with 0 log 0 = 0.
double entropy_objective(const WinProbabilityMatrix& p);

// sum_{i != j} -log(sin(pi p)) / (2 pi). Throws kSingularObjective when an
// off-diagonal entry is 0 or 1.
double cauchy_objective(const WinProbabilityMatrix& p);

// Pushes eps around the cycle i -> j -> k -> i: p(i,j), p(j,k), p(k,i) grow by
// eps, their mirrors shrink. Row sums are unchanged. Throws kRange if an
// entry would leave [0, 1], kValidation for repeated or out-of-range indices.
WinProbabilityMatrix three_cycle_perturb(const WinProbabilityMatrix& p,
                                         std::size_t i, std::size_t j,
                                         std::size_t k, double eps);

}  // namespace tourney
