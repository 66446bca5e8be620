#include "tourney/football.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "tourney/error.hpp"
#include "tourney/transport.hpp"

namespace tourney {

WinProbabilityMatrix::WinProbabilityMatrix(SquareMatrix entries)
    : entries_(std::move(entries)) {
  const std::size_t n = entries_.size();
  if (n == 0) {
    throw Error(ErrorCode::kValidation, "win probability matrix is empty");
  }
  // Two independently rounded decimals may miss 1 by a few ulps more than
  // the nominal tolerance.
  const double pair_tol = kAntisymmetryTol + 8 * std::numeric_limits<double>::epsilon();
  for (std::size_t i = 0; i < n; ++i) {
    if (std::abs(entries_(i, i) - 0.5) > kAntisymmetryTol) {
      throw Error(ErrorCode::kValidation,
                  "diagonal entry " + std::to_string(i) + " must be 1/2");
    }
    for (std::size_t j = 0; j < n; ++j) {
      const double p = entries_(i, j);
      if (!(p >= 0.0 && p <= 1.0)) {
        throw Error(ErrorCode::kValidation,
                    "entry (" + std::to_string(i) + ", " + std::to_string(j) +
                        ") is outside [0, 1]");
      }
      if (j > i && std::abs(p + entries_(j, i) - 1.0) > pair_tol) {
        throw Error(ErrorCode::kValidation,
                    "entries (" + std::to_string(i) + ", " + std::to_string(j) +
                        ") and its mirror do not sum to 1");
      }
    }
  }
}

WinProbabilityMatrix WinProbabilityMatrix::balanced(std::size_t n) {
  return WinProbabilityMatrix(SquareMatrix(n, 0.5));
}

WinProbabilityMatrix WinProbabilityMatrix::transitive(std::size_t n) {
  SquareMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      m(i, j) = i > j ? 1.0 : (i == j ? 0.5 : 0.0);
    }
  }
  return WinProbabilityMatrix(std::move(m));
}

WinProbabilityMatrix WinProbabilityMatrix::relabeled(
    std::span<const std::size_t> sigma) const {
  const std::size_t n = size();
  if (sigma.size() != n) {
    throw Error(ErrorCode::kDimension, "relabeling has the wrong length");
  }
  SquareMatrix q(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) q(sigma[i], sigma[j]) = entries_(i, j);
  }
  return WinProbabilityMatrix(std::move(q));
}

GoalDistributions::GoalDistributions(SquareMatrix rows,
                                     std::vector<double> target_means)
    : rows_(std::move(rows)), target_means_(std::move(target_means)) {
  const std::size_t n = rows_.size();
  if (target_means_.size() != n) {
    throw Error(ErrorCode::kDimension, "one target mean per team required");
  }
  // Unit row and column sums, nonnegativity.
  DoublyStochasticMatrix check(rows_, kStochasticTol);
  for (std::size_t i = 0; i < n; ++i) {
    double mean = 0.0;
    for (std::size_t g = 0; g < n; ++g) mean += static_cast<double>(g) * rows_(i, g);
    if (std::abs(mean - target_means_[i]) > 1e-9) {
      throw Error(ErrorCode::kValidation,
                  "goal law of team " + std::to_string(i) + " has mean " +
                      std::to_string(mean) + ", expected " +
                      std::to_string(target_means_[i]));
    }
  }
}

FiniteDistribution GoalDistributions::law(std::size_t team) const {
  return FiniteDistribution::on_integers(rows_.row(team));
}

GoalDistributions goal_distributions(const MeanScoreSequence& x) {
  Transport t = robin_hood_transport(x.sorted(), transitive_scores(x.size()));
  return GoalDistributions(t.matrix.entries(),
                           std::vector<double>(x.values().begin(), x.values().end()));
}

double chi(const FiniteDistribution& nu, const FiniteDistribution& nu_hat) {
  const auto a = nu.support();
  const auto pa = nu.masses();
  const auto b = nu_hat.support();
  const auto pb = nu_hat.masses();
  double win = 0.0;
  double tie = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    for (std::size_t l = 0; l < b.size(); ++l) {
      if (a[k] > b[l]) {
        win += pa[k] * pb[l];
      } else if (a[k] == b[l]) {
        tie += pa[k] * pb[l];
      }
    }
  }
  return std::clamp(win + 0.5 * tie, 0.0, 1.0);
}

double chi_on_grid(std::span<const double> nu, std::span<const double> nu_hat) {
  if (nu.size() != nu_hat.size()) {
    throw Error(ErrorCode::kDimension, "goal laws live on different grids");
  }
  double below = 0.0;  // Pr(Y < k)
  double value = 0.0;
  for (std::size_t k = 0; k < nu.size(); ++k) {
    value += nu[k] * (below + 0.5 * nu_hat[k]);
    below += nu_hat[k];
  }
  return value;
}

WinProbabilityMatrix football_win_matrix(const GoalDistributions& g) {
  const std::size_t n = g.size();
  SquareMatrix p(n, 0.5);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double v = std::clamp(chi_on_grid(g.rows().row(i), g.rows().row(j)), 0.0, 1.0);
      p(i, j) = v;
      p(j, i) = 1.0 - v;
    }
  }
  return WinProbabilityMatrix(std::move(p));
}

std::vector<double> mean_scores(const WinProbabilityMatrix& p) {
  const std::size_t n = p.size();
  std::vector<double> scores(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i) scores[i] += p(i, j);
    }
  }
  return scores;
}

std::vector<double> monte_carlo_scores(const GoalDistributions& g,
                                       std::uint64_t seasons,
                                       std::uint64_t seed) {
  if (seasons == 0) {
    throw Error(ErrorCode::kValidation, "need at least one season");
  }
  const std::size_t n = g.size();
  // Inverse-CDF tables; the last atom with mass absorbs rounding.
  std::vector<std::vector<double>> cdf(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    double acc = 0.0;
    std::size_t last = 0;
    for (std::size_t k = 0; k < n; ++k) {
      acc += g.rows()(i, k);
      cdf[i][k] = acc;
      if (g.rows()(i, k) > 0.0) last = k;
    }
    for (std::size_t k = last; k < n; ++k) cdf[i][k] = 2.0;
  }

  // mt19937_64 output is fixed by the standard; the conversion to [0, 1)
  // is done by hand so the stream does not depend on the library.
  std::mt19937_64 rng(seed);
  auto draw = [&](std::size_t team) {
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    const auto& c = cdf[team];
    return static_cast<std::size_t>(std::upper_bound(c.begin(), c.end(), u) - c.begin());
  };

  std::vector<double> points(n, 0.0);
  for (std::uint64_t s = 0; s < seasons; ++s) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        const std::size_t gi = draw(i);
        const std::size_t gj = draw(j);
        if (gi > gj) {
          points[i] += 1.0;
        } else if (gj > gi) {
          points[j] += 1.0;
        } else {
          points[i] += 0.5;
          points[j] += 0.5;
        }
      }
    }
  }
  for (double& v : points) v /= static_cast<double>(seasons);
  return points;
}

}  // namespace tourney
