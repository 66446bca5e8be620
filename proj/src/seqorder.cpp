#include "tourney/seqorder.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "tourney/error.hpp"

namespace tourney {

SortedVector::SortedVector(std::vector<double> values)
    : order_(values.size()) {
  if (values.empty()) {
    throw Error(ErrorCode::kValidation, "sorted vector must be non-empty");
  }
  for (double v : values) {
    if (!std::isfinite(v)) {
      throw Error(ErrorCode::kValidation, "sorted vector entries must be finite");
    }
  }
  std::iota(order_.begin(), order_.end(), std::size_t{0});
  std::stable_sort(order_.begin(), order_.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  values_.reserve(values.size());
  for (std::size_t k : order_) values_.push_back(values[k]);
}

bool SortedVector::is_identity_order() const {
  for (std::size_t k = 0; k < order_.size(); ++k) {
    if (order_[k] != k) return false;
  }
  return true;
}

MeanScoreSequence::MeanScoreSequence(SortedVector sorted)
    : sorted_(std::move(sorted)) {
  const std::size_t n = sorted_.size();
  if (n < 2) {
    throw Error(ErrorCode::kValidation,
                "a mean score sequence needs at least two teams");
  }
  const double total = 0.5 * static_cast<double>(n) * static_cast<double>(n - 1);
  const double sum = std::accumulate(values().begin(), values().end(), 0.0);
  if (std::abs(sum - total) > 1e-12 * std::max(1.0, total)) {
    throw Error(ErrorCode::kValidation,
                "mean scores sum to " + std::to_string(sum) + ", expected " +
                    std::to_string(total));
  }
}

FiniteDistribution::FiniteDistribution(std::vector<double> support,
                                       std::vector<double> masses)
    : support_(std::move(support)), masses_(std::move(masses)) {
  if (support_.size() != masses_.size() || support_.empty()) {
    throw Error(ErrorCode::kValidation,
                "distribution needs equally many atoms and masses");
  }
  double total = 0.0;
  for (std::size_t k = 0; k < support_.size(); ++k) {
    if (k > 0 && !(support_[k] > support_[k - 1])) {
      throw Error(ErrorCode::kValidation,
                  "distribution support must be strictly increasing");
    }
    if (!(masses_[k] >= 0.0)) {
      throw Error(ErrorCode::kValidation, "distribution masses must be >= 0");
    }
    total += masses_[k];
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw Error(ErrorCode::kValidation, "distribution masses must sum to 1");
  }
}

FiniteDistribution FiniteDistribution::uniform_on(std::span<const double> points) {
  std::vector<double> sorted(points.begin(), points.end());
  std::sort(sorted.begin(), sorted.end());
  const double unit = 1.0 / static_cast<double>(sorted.size());
  std::vector<double> support;
  std::vector<double> masses;
  for (double v : sorted) {
    if (!support.empty() && support.back() == v) {
      masses.back() += unit;
    } else {
      support.push_back(v);
      masses.push_back(unit);
    }
  }
  return FiniteDistribution(std::move(support), std::move(masses));
}

FiniteDistribution FiniteDistribution::point_mass(double at) {
  return FiniteDistribution({at}, {1.0});
}

FiniteDistribution FiniteDistribution::on_integers(std::span<const double> probs) {
  std::vector<double> support;
  std::vector<double> masses;
  for (std::size_t k = 0; k < probs.size(); ++k) {
    if (probs[k] != 0.0) {
      support.push_back(static_cast<double>(k));
      masses.push_back(probs[k]);
    }
  }
  return FiniteDistribution(std::move(support), std::move(masses));
}

double FiniteDistribution::mean() const {
  double m = 0.0;
  for (std::size_t k = 0; k < support_.size(); ++k) m += support_[k] * masses_[k];
  return m;
}

double FiniteDistribution::hinge_expectation(double t) const {
  double e = 0.0;
  for (std::size_t k = 0; k < support_.size(); ++k) {
    if (support_[k] > t) e += (support_[k] - t) * masses_[k];
  }
  return e;
}

std::string_view feasibility_class_name(FeasibilityClass c) {
  switch (c) {
    case FeasibilityClass::kInfeasible: return "Infeasible";
    case FeasibilityClass::kBoundary: return "Boundary";
    case FeasibilityClass::kInterior: return "Interior";
  }
  return "Infeasible";
}

SortedVector transitive_scores(std::size_t n) {
  std::vector<double> y(n);
  std::iota(y.begin(), y.end(), 0.0);
  return SortedVector(std::move(y));
}

bool is_majorized(const SortedVector& x, const SortedVector& y) {
  if (x.size() != y.size()) {
    throw Error(ErrorCode::kDimension,
                "majorization needs equal lengths, got " +
                    std::to_string(x.size()) + " and " + std::to_string(y.size()));
  }
  double sx = 0.0;
  double sy = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    sx += x[k];
    sy += y[k];
    if (k + 1 < x.size() && sx < sy - kMajorizationTol) return false;
  }
  return std::abs(sx - sy) <= kMajorizationTol;
}

FeasibilityClass classify_score_sequence(const MeanScoreSequence& x) {
  const std::size_t n = x.size();
  if (!is_majorized(x.sorted(), transitive_scores(n))) {
    return FeasibilityClass::kInfeasible;
  }
  double prefix = 0.0;
  for (std::size_t k = 1; k < n; ++k) {
    prefix += x[k - 1];
    const double binom = 0.5 * static_cast<double>(k) * static_cast<double>(k - 1);
    if (prefix - binom <= kMajorizationTol) return FeasibilityClass::kBoundary;
  }
  return FeasibilityClass::kInterior;
}

bool convex_order_check(const FiniteDistribution& mu,
                        const FiniteDistribution& nu) {
  if (std::abs(mu.mean() - nu.mean()) > kMajorizationTol) return false;
  auto dominated_at = [&](double t) {
    return mu.hinge_expectation(t) <= nu.hinge_expectation(t) + kMajorizationTol;
  };
  return std::all_of(mu.support().begin(), mu.support().end(), dominated_at) &&
         std::all_of(nu.support().begin(), nu.support().end(), dominated_at);
}

}  // namespace tourney
