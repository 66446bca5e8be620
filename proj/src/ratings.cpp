#include "tourney/ratings.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include <Eigen/Dense>

#include "tourney/error.hpp"

namespace tourney {
namespace {

using std::numbers::pi;

// Derivative of the link (a symmetric density).
double link_density(double u, Link link) {
  if (link == Link::kLogistic) {
    const double p = link_eval(u, link);
    return p * (1.0 - p);
  }
  return 1.0 / (pi * (1.0 + u * u));
}

// Even part of an antiderivative of the link: E'(u) = link(u) - 1/2.
double even_potential(double u, Link link) {
  if (link == Link::kLogistic) {
    const double a = std::abs(u);
    return 0.5 * a + std::log1p(std::exp(-a));
  }
  return (u * std::atan(u) - 0.5 * std::log1p(u * u)) / pi;
}

class RowSumProblem {
 public:
  RowSumProblem(std::span<const double> x, Link link) : x_(x), link_(link) {}

  std::size_t size() const { return x_.size(); }

  // sum_{i<j} E(l_i - l_j) - sum_i (x_i - (n-1)/2) l_i; its gradient is the
  // row-sum mismatch.
  double potential(const Eigen::VectorXd& lam) const {
    const std::size_t n = size();
    const double half = 0.5 * static_cast<double>(n - 1);
    double f = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) f += even_potential(lam[i] - lam[j], link_);
      f -= (x_[i] - half) * lam[i];
    }
    return f;
  }

  Eigen::VectorXd gradient(const Eigen::VectorXd& lam) const {
    const std::size_t n = size();
    Eigen::VectorXd g(n);
    for (std::size_t i = 0; i < n; ++i) g[i] = -x_[i];
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        const double p = link_eval(lam[i] - lam[j], link_);
        g[i] += p;
        g[j] += 1.0 - p;
      }
    }
    return g;
  }

  // Weighted graph Laplacian; null space is the constant vector.
  Eigen::MatrixXd hessian(const Eigen::VectorXd& lam) const {
    const std::size_t n = size();
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        const double w = link_density(lam[i] - lam[j], link_);
        h(i, j) -= w;
        h(j, i) -= w;
        h(i, i) += w;
        h(j, j) += w;
      }
    }
    return h;
  }

 private:
  std::span<const double> x_;
  Link link_;
};

void center(Eigen::VectorXd& v) { v.array() -= v.mean(); }

}  // namespace

std::string_view link_name(Link link) {
  return link == Link::kLogistic ? "logistic" : "cauchy";
}

Link parse_link(std::string_view name) {
  if (name == "logistic") return Link::kLogistic;
  if (name == "cauchy") return Link::kCauchy;
  throw Error(ErrorCode::kValidation,
              "unknown link '" + std::string(name) + "' (logistic|cauchy)");
}

double link_eval(double u, Link link) {
  if (link == Link::kLogistic) {
    if (u >= 0.0) return 1.0 / (1.0 + std::exp(-u));
    const double e = std::exp(u);
    return e / (1.0 + e);
  }
  // Tails through arctan(1/|u|) to avoid cancellation against 1/2.
  if (u < -1.0) return std::atan(-1.0 / u) / pi;
  if (u > 1.0) return 1.0 - std::atan(1.0 / u) / pi;
  return 0.5 + std::atan(u) / pi;
}

RatingVector::RatingVector(std::vector<double> lambdas, Link link)
    : lambdas_(std::move(lambdas)), link_(link) {
  if (lambdas_.empty()) {
    throw Error(ErrorCode::kValidation, "rating vector is empty");
  }
  const double mean = std::accumulate(lambdas_.begin(), lambdas_.end(), 0.0) /
                      static_cast<double>(lambdas_.size());
  for (double& v : lambdas_) {
    if (!std::isfinite(v)) {
      throw Error(ErrorCode::kValidation, "ratings must be finite");
    }
    v -= mean;
  }
}

double RatingVector::spread() const {
  const auto [lo, hi] = std::minmax_element(lambdas_.begin(), lambdas_.end());
  return *hi - *lo;
}

WinProbabilityMatrix win_matrix_from_ratings(const RatingVector& r) {
  const std::size_t n = r.size();
  const auto& lam = r.lambdas();
  SquareMatrix p(n, 0.5);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double v = link_eval(lam[i] - lam[j], r.link());
      p(i, j) = v;
      p(j, i) = 1.0 - v;
    }
  }
  return WinProbabilityMatrix(std::move(p));
}

FitReport fit_ratings(const MeanScoreSequence& x, Link link,
                      const FitOptions& options) {
  switch (classify_score_sequence(x)) {
    case FeasibilityClass::kInfeasible:
      throw Error(ErrorCode::kNotMajorized,
                  "not a mean score sequence: fails majorization by (0, ..., n-1)");
    case FeasibilityClass::kBoundary:
      throw Error(ErrorCode::kBoundary,
                  "mean score sequence lies on the boundary; only limits of "
                  "rated models reach it");
    case FeasibilityClass::kInterior:
      break;
  }
  const std::size_t n = x.size();
  RowSumProblem problem(x.values(), link);

  Eigen::VectorXd lam = Eigen::VectorXd::Zero(n);
  if (options.initial) {
    if (options.initial->size() != n) {
      throw Error(ErrorCode::kDimension, "initial ratings have the wrong length");
    }
    for (std::size_t i = 0; i < n; ++i) lam[i] = (*options.initial)[i];
    center(lam);
  }

  Eigen::VectorXd grad = problem.gradient(lam);
  double residual = grad.lpNorm<Eigen::Infinity>();
  std::size_t iterations = 0;
  while (residual > options.tol) {
    if (iterations == options.max_iter) {
      throw ConvergenceError("rating fit did not converge in " +
                                 std::to_string(options.max_iter) +
                                 " iterations; best residual " +
                                 std::to_string(residual),
                             residual);
    }
    ++iterations;

    Eigen::MatrixXd h = problem.hessian(lam);
    // Lift the constant null space; grad is orthogonal to it, so the step
    // stays centered.
    const double shift = std::max(h.diagonal().mean(), 1e-300) / static_cast<double>(n);
    h.array() += shift;
    Eigen::VectorXd step = -h.ldlt().solve(grad);
    center(step);
    double slope = grad.dot(step);
    if (!step.allFinite() || !(slope < 0.0)) {
      step = -grad;
      slope = grad.dot(step);
    }

    // Armijo backtracking on the potential. Near the solution the potential
    // only moves at rounding level, so there a sufficient drop in the
    // residual also counts. A strict decrease is required so that steps
    // shrunk to nothing are never accepted.
    const double f0 = problem.potential(lam);
    const double f_noise = 1e-12 * (1.0 + std::abs(f0));
    double t = 1.0;
    bool accepted = false;
    for (int halvings = 0; halvings < 60; ++halvings, t *= 0.5) {
      Eigen::VectorXd cand = lam + t * step;
      const double f = problem.potential(cand);
      Eigen::VectorXd g = problem.gradient(cand);
      const double r = g.lpNorm<Eigen::Infinity>();
      const bool armijo = std::isfinite(f) && f < f0 && f <= f0 + 1e-4 * t * slope;
      const bool flat = std::isfinite(f) && f <= f0 + f_noise;
      if (armijo || (flat && r <= (1.0 - 1e-4 * t) * residual)) {
        lam = std::move(cand);
        grad = std::move(g);
        residual = r;
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      throw ConvergenceError("rating fit stalled at residual " + std::to_string(residual),
                             residual);
    }
    center(lam);
  }

  RatingVector ratings(std::vector<double>(lam.data(), lam.data() + n), link);
  const WinProbabilityMatrix p = win_matrix_from_ratings(ratings);
  const double objective =
      link == Link::kLogistic ? entropy_objective(p) : cauchy_objective(p);
  return FitReport{std::move(ratings), residual, iterations, objective};
}

double entropy_objective(const WinProbabilityMatrix& p) {
  const std::size_t n = p.size();
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double v = p(i, j);
      if (i != j && v > 0.0) total += v * std::log(v);
    }
  }
  return total;
}

double cauchy_objective(const WinProbabilityMatrix& p) {
  const std::size_t n = p.size();
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      const double v = p(i, j);
      if (v <= 0.0 || v >= 1.0) {
        throw Error(ErrorCode::kSingularObjective,
                    "entry (" + std::to_string(i) + ", " + std::to_string(j) +
                        ") is 0 or 1; the objective diverges");
      }
      // sin(pi v) == sin(pi (1 - v)); the smaller argument is more accurate.
      total -= std::log(std::sin(pi * std::min(v, 1.0 - v))) / (2.0 * pi);
    }
  }
  return total;
}

WinProbabilityMatrix three_cycle_perturb(const WinProbabilityMatrix& p,
                                         std::size_t i, std::size_t j,
                                         std::size_t k, double eps) {
  const std::size_t n = p.size();
  if (i >= n || j >= n || k >= n || i == j || j == k || i == k) {
    throw Error(ErrorCode::kValidation, "3-cycle needs three distinct teams");
  }
  SquareMatrix q = p.entries();
  const std::pair<std::size_t, std::size_t> arcs[] = {{i, j}, {j, k}, {k, i}};
  for (auto [a, b] : arcs) {
    double v = q(a, b) + eps;
    if (v < -1e-15 || v > 1.0 + 1e-15) {
      throw Error(ErrorCode::kRange,
                  "perturbation moves entry (" + std::to_string(a) + ", " +
                      std::to_string(b) + ") outside [0, 1]");
    }
    v = std::clamp(v, 0.0, 1.0);
    q(a, b) = v;
    q(b, a) = 1.0 - v;
  }
  return WinProbabilityMatrix(std::move(q));
}

}  // namespace tourney
