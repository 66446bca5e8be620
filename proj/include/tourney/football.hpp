#pragma once

// The goal-scoring construction: team i scores a random number of goals with
// law mu_i on {0, ..., n-1}, independently per match; a win is worth one
// point and a draw half a point.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "tourney/matrix.hpp"
#include "tourney/seqorder.hpp"

namespace tourney {

inline constexpr double kAntisymmetryTol = 1e-12;

// p(i, j) = Pr(i beats j). Off-diagonal entries in [0, 1] with
// p(i, j) + p(j, i) == 1; the diagonal stores 1/2.
class WinProbabilityMatrix {
 public:
  // Validates the invariants; throws kValidation.
  explicit WinProbabilityMatrix(SquareMatrix entries);

  // All-1/2 matrix.
  static WinProbabilityMatrix balanced(std::size_t n);
  // p(i, j) = 1 for i > j: team i beats every lower-indexed team.
  static WinProbabilityMatrix transitive(std::size_t n);

  std::size_t size() const noexcept { return entries_.size(); }
  const SquareMatrix& entries() const noexcept { return entries_; }
  double operator()(std::size_t i, std::size_t j) const { return entries_(i, j); }

  // Q(sigma[i], sigma[j]) = p(i, j).
  WinProbabilityMatrix relabeled(std::span<const std::size_t> sigma) const;

 private:
  SquareMatrix entries_;
};

// Rows are the goal laws mu_i, indexed by team; columns are goal counts.
class GoalDistributions {
 public:
  // Rows and columns must sum to 1 (1e-10) and row i must have mean
  // target_means[i] (1e-9).
  GoalDistributions(SquareMatrix rows, std::vector<double> target_means);

  std::size_t size() const noexcept { return rows_.size(); }
  const SquareMatrix& rows() const noexcept { return rows_; }
  std::span<const double> target_means() const noexcept { return target_means_; }
  FiniteDistribution law(std::size_t team) const;

 private:
  SquareMatrix rows_;
  std::vector<double> target_means_;
};

// Rows of the Robin Hood transport from x to (0, ..., n-1).
GoalDistributions goal_distributions(const MeanScoreSequence& x);

// Pr(X > Y) + Pr(X == Y) / 2 for independent X ~ nu, Y ~ nu_hat, by direct
// double sum over the atoms.
double chi(const FiniteDistribution& nu, const FiniteDistribution& nu_hat);

// Same functional for laws given as probability vectors on {0, ..., m-1},
// evaluated through the running CDF of nu_hat in O(m).
double chi_on_grid(std::span<const double> nu, std::span<const double> nu_hat);

// p(i, j) = chi(mu_i, mu_j).
WinProbabilityMatrix football_win_matrix(const GoalDistributions& g);

// Off-diagonal row sums, in team order.
std::vector<double> mean_scores(const WinProbabilityMatrix& p);

// Average points per team over `seasons` simulated round robins.
// Deterministic for a given seed on every platform.
std::vector<double> monte_carlo_scores(const GoalDistributions& g,
                                       std::uint64_t seasons,
                                       std::uint64_t seed);

}  // namespace tourney
