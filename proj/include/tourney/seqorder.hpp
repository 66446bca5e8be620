#pragma once

// Majorization and convex order on finite sequences and finitely supported
// distributions.

#include <cstddef>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

namespace tourney {

// Absolute slack for every majorization comparison.
inline constexpr double kMajorizationTol = 1e-9;

// Increasingly sorted copy of a real vector. Construction sorts (stably) and
// remembers where each entry came from: values()[k] == input[order()[k]].
class SortedVector {
 public:
  explicit SortedVector(std::vector<double> values);

  std::size_t size() const noexcept { return values_.size(); }
  std::span<const double> values() const noexcept { return values_; }
  double operator[](std::size_t k) const { return values_[k]; }
  const std::vector<std::size_t>& order() const noexcept { return order_; }

  // True when the input was already sorted.
  bool is_identity_order() const;

 private:
  std::vector<double> values_;
  std::vector<std::size_t> order_;
};

// Sorted candidate expected win counts: n >= 2 entries summing to n(n-1)/2
// (relative tolerance 1e-12). Range and majorization are not checked here;
// classify_score_sequence reports anything outside [0, n-1] as infeasible.
class MeanScoreSequence {
 public:
  explicit MeanScoreSequence(SortedVector sorted);
  explicit MeanScoreSequence(std::vector<double> values)
      : MeanScoreSequence(SortedVector(std::move(values))) {}

  std::size_t size() const noexcept { return sorted_.size(); }
  std::span<const double> values() const noexcept { return sorted_.values(); }
  double operator[](std::size_t k) const { return sorted_[k]; }
  const SortedVector& sorted() const noexcept { return sorted_; }

 private:
  SortedVector sorted_;
};

// Finitely supported probability law on the real line.
class FiniteDistribution {
 public:
  // support strictly increasing, masses >= 0 summing to 1 within 1e-12.
  FiniteDistribution(std::vector<double> support, std::vector<double> masses);

  // Uniform law on a multiset; repeated values are merged.
  static FiniteDistribution uniform_on(std::span<const double> points);
  static FiniteDistribution point_mass(double at);
  // Law on {0, 1, ..., probs.size()-1}; zero-mass atoms are dropped.
  static FiniteDistribution on_integers(std::span<const double> probs);

  std::span<const double> support() const noexcept { return support_; }
  std::span<const double> masses() const noexcept { return masses_; }

  double mean() const;
  // E max(U - t, 0).
  double hinge_expectation(double t) const;

 private:
  std::vector<double> support_;
  std::vector<double> masses_;
};

enum class FeasibilityClass { kInfeasible, kBoundary, kInterior };

std::string_view feasibility_class_name(FeasibilityClass c);

// (0, 1, ..., n-1), the score sequence of the transitive tournament.
SortedVector transitive_scores(std::size_t n);

// x is majorized by y: every prefix sum of x dominates that of y (k < n) and
// the totals agree, all within kMajorizationTol. Throws kDimension when the
// lengths differ.
bool is_majorized(const SortedVector& x, const SortedVector& y);

FeasibilityClass classify_score_sequence(const MeanScoreSequence& x);

// mu precedes nu in convex order: equal means and hinge expectations of mu
// below those of nu at every atom of either law.
bool convex_order_check(const FiniteDistribution& mu,
                        const FiniteDistribution& nu);

}  // namespace tourney
