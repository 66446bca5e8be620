#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace tourney {

// Dense row-major n x n matrix of doubles.
class SquareMatrix {
 public:
  SquareMatrix() = default;
  explicit SquareMatrix(std::size_t n, double fill = 0.0)
      : n_(n), data_(n * n, fill) {}

  static SquareMatrix identity(std::size_t n) {
    SquareMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  // Throws kDimension unless every row has the same length as `rows`.
  static SquareMatrix from_rows(const std::vector<std::vector<double>>& rows);

  std::size_t size() const noexcept { return n_; }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
  double operator()(std::size_t i, std::size_t j) const {
    return data_[i * n_ + j];
  }

  std::span<double> row(std::size_t i) { return {data_.data() + i * n_, n_}; }
  std::span<const double> row(std::size_t i) const {
    return {data_.data() + i * n_, n_};
  }

  std::vector<std::vector<double>> to_rows() const;

  std::vector<double> multiply(std::span<const double> v) const;
  SquareMatrix multiply(const SquareMatrix& rhs) const;

  double max_abs_diff(const SquareMatrix& other) const;

  bool operator==(const SquareMatrix&) const = default;

 private:
  std::size_t n_ = 0;
  std::vector<double> data_;
};

}  // namespace tourney
