#pragma once

// Doubly stochastic couplings for majorization, their Birkhoff decomposition
// into permutations, and the random-total-order tournament model built from
// them.

#include <cstddef>
#include <vector>

#include "tourney/matrix.hpp"
#include "tourney/seqorder.hpp"

namespace tourney {

inline constexpr double kStochasticTol = 1e-10;
inline constexpr double kBirkhoffTol = 1e-12;
// Support threshold used by random_total_order_model.
inline constexpr double kRankModelBirkhoffTol = 1e-14;

// Nonnegative square matrix with unit row and column sums (within `tol`).
class DoublyStochasticMatrix {
 public:
  explicit DoublyStochasticMatrix(SquareMatrix entries,
                                  double tol = kStochasticTol);

  std::size_t size() const noexcept { return entries_.size(); }
  const SquareMatrix& entries() const noexcept { return entries_; }
  double operator()(std::size_t i, std::size_t j) const { return entries_(i, j); }

 private:
  SquareMatrix entries_;
};

// One Robin Hood move: (1 - weight) * I + weight * (swap of first, second).
struct TTransformStep {
  std::size_t first = 0;   // 0-based, first < second
  std::size_t second = 0;
  double weight = 0.0;     // in [0, 1]

  SquareMatrix as_matrix(std::size_t n) const;
};

struct Transport {
  DoublyStochasticMatrix matrix;
  std::vector<TTransformStep> steps;
};

// Builds A with A * y == x as a product of at most n-1 T-transforms.
// Steps are listed in application order, so A = T_k ... T_2 T_1.
// Throws kNotMajorized unless is_majorized(x, y), kDimension on length
// mismatch.
Transport robin_hood_transport(const SortedVector& x, const SortedVector& y);

// Permutation stored 0-based: perm[i] is the column (rank - 1) of row i.
struct PermutationTerm {
  double weight = 0.0;
  std::vector<std::size_t> perm;
};

class PermutationMixture {
 public:
  // Validates: every perm a bijection of one common size, positive weights
  // summing to 1 within kStochasticTol, no repeated permutation.
  explicit PermutationMixture(std::vector<PermutationTerm> terms);

  std::size_t size() const noexcept { return n_; }
  const std::vector<PermutationTerm>& terms() const noexcept { return terms_; }

  // sum_k weight_k * P_k with (P_k)_{i, perm_k[i]} = 1.
  SquareMatrix reconstruct() const;

 private:
  std::size_t n_ = 0;
  std::vector<PermutationTerm> terms_;
};

// Greedy Birkhoff peeling on the support graph {entries > tol}: repeatedly
// take a perfect matching, subtract its smallest entry times the
// permutation. Throws kDecomposition if the support admits no perfect
// matching while mass remains.
PermutationMixture birkhoff_decompose(const DoublyStochasticMatrix& a,
                                      double tol = kBirkhoffTol);

// Distribution over total orders whose expected rank of team i is x_i + 1.
// Throws kNotMajorized for infeasible x.
PermutationMixture random_total_order_model(const MeanScoreSequence& x);

// E pi(i), ranks 1-based.
std::vector<double> mixture_expected_ranks(const PermutationMixture& m);

}  // namespace tourney
