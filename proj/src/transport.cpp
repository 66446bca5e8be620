#include "tourney/transport.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>

#include "tourney/error.hpp"

namespace tourney {

DoublyStochasticMatrix::DoublyStochasticMatrix(SquareMatrix entries, double tol)
    : entries_(std::move(entries)) {
  const std::size_t n = entries_.size();
  if (n == 0) {
    throw Error(ErrorCode::kValidation, "doubly stochastic matrix is empty");
  }
  std::vector<double> col(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double v = entries_(i, j);
      if (!(v >= -tol)) {
        throw Error(ErrorCode::kValidation,
                    "negative entry in doubly stochastic matrix");
      }
      row += v;
      col[j] += v;
    }
    if (std::abs(row - 1.0) > tol) {
      throw Error(ErrorCode::kValidation,
                  "row " + std::to_string(i) + " sums to " + std::to_string(row));
    }
  }
  for (std::size_t j = 0; j < n; ++j) {
    if (std::abs(col[j] - 1.0) > tol) {
      throw Error(ErrorCode::kValidation, "column " + std::to_string(j) +
                                              " sums to " + std::to_string(col[j]));
    }
  }
}

SquareMatrix TTransformStep::as_matrix(std::size_t n) const {
  SquareMatrix t = SquareMatrix::identity(n);
  t(first, first) = 1.0 - weight;
  t(second, second) = 1.0 - weight;
  t(first, second) = weight;
  t(second, first) = weight;
  return t;
}

Transport robin_hood_transport(const SortedVector& x, const SortedVector& y) {
  if (!is_majorized(x, y)) {
    throw Error(ErrorCode::kNotMajorized,
                "target vector is not majorized by the source");
  }
  const std::size_t n = x.size();
  std::vector<double> current(y.values().begin(), y.values().end());

  double scale = 1.0;
  for (std::size_t k = 0; k < n; ++k) {
    scale = std::max({scale, std::abs(x[k]), std::abs(y[k])});
  }
  // Coordinates closer than this count as settled.
  const double settled = 1e-13 * scale;

  SquareMatrix a = SquareMatrix::identity(n);
  std::vector<TTransformStep> steps;
  for (;;) {
    std::size_t i = 0;
    while (i < n && !(x[i] - current[i] > settled)) ++i;
    if (i == n) break;
    std::size_t j = i + 1;
    while (j < n && !(current[j] - x[j] > settled)) ++j;
    if (j == n) break;

    const double need = x[i] - current[i];
    const double excess = current[j] - x[j];
    const double delta = std::min(need, excess);
    const double weight = delta / (current[j] - current[i]);

    for (std::size_t c = 0; c < n; ++c) {
      const double ai = a(i, c);
      const double aj = a(j, c);
      a(i, c) = (1.0 - weight) * ai + weight * aj;
      a(j, c) = weight * ai + (1.0 - weight) * aj;
    }
    current[i] = (need <= excess + settled) ? x[i] : current[i] + delta;
    current[j] = (excess <= need + settled) ? x[j] : current[j] - delta;
    steps.push_back({i, j, weight});
  }
  return {DoublyStochasticMatrix(std::move(a)), std::move(steps)};
}

PermutationMixture::PermutationMixture(std::vector<PermutationTerm> terms)
    : terms_(std::move(terms)) {
  if (terms_.empty()) {
    throw Error(ErrorCode::kValidation, "permutation mixture is empty");
  }
  n_ = terms_.front().perm.size();
  double total = 0.0;
  std::vector<std::vector<std::size_t>> seen;
  for (const auto& term : terms_) {
    if (term.perm.size() != n_) {
      throw Error(ErrorCode::kDimension, "mixture permutations differ in size");
    }
    if (!(term.weight > 0.0)) {
      throw Error(ErrorCode::kValidation, "mixture weights must be positive");
    }
    std::vector<bool> hit(n_, false);
    for (std::size_t v : term.perm) {
      if (v >= n_ || hit[v]) {
        throw Error(ErrorCode::kValidation, "mixture term is not a permutation");
      }
      hit[v] = true;
    }
    seen.push_back(term.perm);
    total += term.weight;
  }
  if (std::abs(total - 1.0) > kStochasticTol) {
    throw Error(ErrorCode::kValidation, "mixture weights must sum to 1");
  }
  std::sort(seen.begin(), seen.end());
  if (std::adjacent_find(seen.begin(), seen.end()) != seen.end()) {
    throw Error(ErrorCode::kValidation, "mixture repeats a permutation");
  }
}

SquareMatrix PermutationMixture::reconstruct() const {
  SquareMatrix m(n_);
  for (const auto& term : terms_) {
    for (std::size_t i = 0; i < n_; ++i) m(i, term.perm[i]) += term.weight;
  }
  return m;
}

namespace {

// Kuhn-style augmenting paths over the dense support {entries > tol}.
class SupportMatching {
 public:
  SupportMatching(const SquareMatrix& residual, double tol)
      : residual_(residual),
        tol_(tol),
        row_to_col_(residual.size(), kFree),
        col_to_row_(residual.size(), kFree),
        visited_(residual.size(), false) {}

  // Drops matched edges that fell to the threshold, then re-augments every
  // free row. Returns false if some row cannot be matched.
  bool repair() {
    const std::size_t n = residual_.size();
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t c = row_to_col_[i];
      if (c != kFree && !(residual_(i, c) > tol_)) {
        row_to_col_[i] = kFree;
        col_to_row_[c] = kFree;
      }
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (row_to_col_[i] != kFree) continue;
      std::fill(visited_.begin(), visited_.end(), false);
      if (!augment(i)) return false;
    }
    return true;
  }

  const std::vector<std::size_t>& row_to_col() const { return row_to_col_; }

 private:
  static constexpr std::size_t kFree = std::numeric_limits<std::size_t>::max();

  bool augment(std::size_t row) {
    const std::size_t n = residual_.size();
    for (std::size_t c = 0; c < n; ++c) {
      if (visited_[c] || !(residual_(row, c) > tol_)) continue;
      visited_[c] = true;
      if (col_to_row_[c] == kFree || augment(col_to_row_[c])) {
        row_to_col_[row] = c;
        col_to_row_[c] = row;
        return true;
      }
    }
    return false;
  }

  const SquareMatrix& residual_;
  double tol_;
  std::vector<std::size_t> row_to_col_;
  std::vector<std::size_t> col_to_row_;
  std::vector<bool> visited_;
};

}  // namespace

PermutationMixture birkhoff_decompose(const DoublyStochasticMatrix& a,
                                      double tol) {
  const std::size_t n = a.size();
  SquareMatrix residual = a.entries();
  SupportMatching matching(residual, tol);
  std::map<std::vector<std::size_t>, double> terms;
  double peeled = 0.0;

  // Every pass zeroes at least one support entry.
  for (std::size_t pass = 0; pass <= n * n; ++pass) {
    if (1.0 - peeled <= tol) break;
    if (!matching.repair()) {
      double left = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        double row = 0.0;
        for (double v : residual.row(i)) row += std::max(v, 0.0);
        left = std::max(left, row);
      }
      // Leftovers within the input's own stochastic slack are noise.
      if (left <= static_cast<double>(n) * tol + kStochasticTol) break;
      throw Error(ErrorCode::kDecomposition,
                  "support graph has no perfect matching with mass " +
                      std::to_string(left) + " left");
    }
    const auto& perm = matching.row_to_col();
    double weight = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) weight = std::min(weight, residual(i, perm[i]));
    for (std::size_t i = 0; i < n; ++i) {
      residual(i, perm[i]) -= weight;
    }
    terms[perm] += weight;
    peeled += weight;
  }

  std::vector<PermutationTerm> kept;
  double total = 0.0;
  for (auto& [perm, weight] : terms) {
    if (weight < tol) continue;
    kept.push_back({weight, perm});
    total += weight;
  }
  if (kept.empty()) {
    throw Error(ErrorCode::kDecomposition, "decomposition produced no terms");
  }
  for (auto& term : kept) term.weight /= total;
  return PermutationMixture(std::move(kept));
}

PermutationMixture random_total_order_model(const MeanScoreSequence& x) {
  const Transport t = robin_hood_transport(x.sorted(), transitive_scores(x.size()));
  // Leftover mass below the support threshold is renormalized away, and it
  // moves expected ranks by up to n^2 times the threshold.
  return birkhoff_decompose(t.matrix, kRankModelBirkhoffTol);
}

std::vector<double> mixture_expected_ranks(const PermutationMixture& m) {
  std::vector<double> ranks(m.size(), 0.0);
  for (const auto& term : m.terms()) {
    for (std::size_t i = 0; i < m.size(); ++i) {
      ranks[i] += term.weight * static_cast<double>(term.perm[i] + 1);
    }
  }
  return ranks;
}

}  // namespace tourney
