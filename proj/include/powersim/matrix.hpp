#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace powersim {

using TacticVector = std::vector<double>;

/// Dense n x n matrix stored column-major. Column j of a tactic matrix is
/// agent j's tactic vector, so columns are the natural unit of access.
class SquareMatrix {
 public:
  SquareMatrix() = default;
  explicit SquareMatrix(std::size_t n, double fill = 0.0);

  static SquareMatrix identity(std::size_t n);
  /// Throws std::invalid_argument unless every column has length columns.size().
  static SquareMatrix from_columns(const std::vector<TacticVector>& columns);

  std::size_t size() const { return n_; }

  double operator()(std::size_t row, std::size_t col) const { return data_[col * n_ + row]; }
  double& operator()(std::size_t row, std::size_t col) { return data_[col * n_ + row]; }

  std::span<const double> column(std::size_t col) const {
    return {data_.data() + col * n_, n_};
  }
  std::span<double> column(std::size_t col) { return {data_.data() + col * n_, n_}; }
  void set_column(std::size_t col, std::span<const double> values);

  std::vector<TacticVector> columns() const;
  const std::vector<double>& data() const { return data_; }

  bool operator==(const SquareMatrix&) const = default;

 private:
  std::size_t n_ = 0;
  std::vector<double> data_;
};

using TacticMatrix = SquareMatrix;
using MultiplierMatrix = SquareMatrix;

}  // namespace powersim
