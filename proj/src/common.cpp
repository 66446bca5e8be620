#include <algorithm>
#include <cmath>
#include <string>

#include "tourney/error.hpp"
#include "tourney/matrix.hpp"

namespace tourney {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kParse: return "parse_error";
    case ErrorCode::kValidation: return "validation_error";
    case ErrorCode::kDimension: return "dimension_error";
    case ErrorCode::kNotMajorized: return "not_majorized";
    case ErrorCode::kBoundary: return "boundary";
    case ErrorCode::kConvergence: return "convergence";
    case ErrorCode::kNotTransitive: return "not_transitive";
    case ErrorCode::kDecomposition: return "decomposition";
    case ErrorCode::kRange: return "range_error";
    case ErrorCode::kSingularObjective: return "singular_objective";
    case ErrorCode::kSize: return "size_error";
  }
  return "unknown";
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::kNotMajorized: return 3;
    case ErrorCode::kBoundary: return 4;
    case ErrorCode::kConvergence: return 5;
    case ErrorCode::kNotTransitive: return 6;
    case ErrorCode::kDecomposition: return 1;
    default: return 2;
  }
}

SquareMatrix SquareMatrix::from_rows(
    const std::vector<std::vector<double>>& rows) {
  SquareMatrix m(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows.size()) {
      throw Error(ErrorCode::kDimension,
                  "matrix row " + std::to_string(i) + " has length " +
                      std::to_string(rows[i].size()) + ", expected " +
                      std::to_string(rows.size()));
    }
    std::copy(rows[i].begin(), rows[i].end(), m.row(i).begin());
  }
  return m;
}

std::vector<std::vector<double>> SquareMatrix::to_rows() const {
  std::vector<std::vector<double>> rows(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    rows[i].assign(row(i).begin(), row(i).end());
  }
  return rows;
}

std::vector<double> SquareMatrix::multiply(std::span<const double> v) const {
  if (v.size() != n_) {
    throw Error(ErrorCode::kDimension, "matrix-vector size mismatch");
  }
  std::vector<double> out(n_, 0.0);
  for (std::size_t i = 0; i < n_; ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < n_; ++j) acc += (*this)(i, j) * v[j];
    out[i] = acc;
  }
  return out;
}

SquareMatrix SquareMatrix::multiply(const SquareMatrix& rhs) const {
  if (rhs.n_ != n_) {
    throw Error(ErrorCode::kDimension, "matrix-matrix size mismatch");
  }
  SquareMatrix out(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t k = 0; k < n_; ++k) {
      const double a = (*this)(i, k);
      if (a == 0.0) continue;
      for (std::size_t j = 0; j < n_; ++j) out(i, j) += a * rhs(k, j);
    }
  }
  return out;
}

double SquareMatrix::max_abs_diff(const SquareMatrix& other) const {
  if (other.n_ != n_) {
    throw Error(ErrorCode::kDimension, "matrix size mismatch");
  }
  double worst = 0.0;
  for (std::size_t k = 0; k < data_.size(); ++k) {
    worst = std::max(worst, std::abs(data_[k] - other.data_[k]));
  }
  return worst;
}

}  // namespace tourney
