#include "powersim/matrix.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace powersim {

SquareMatrix::SquareMatrix(std::size_t n, double fill) : n_(n), data_(n * n, fill) {}

SquareMatrix SquareMatrix::identity(std::size_t n) {
  SquareMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

SquareMatrix SquareMatrix::from_columns(const std::vector<TacticVector>& columns) {
  const std::size_t n = columns.size();
  SquareMatrix m(n);
  for (std::size_t j = 0; j < n; ++j) {
    if (columns[j].size() != n) {
      throw std::invalid_argument("matrix is not square: column " + std::to_string(j) +
                                  " has " + std::to_string(columns[j].size()) +
                                  " entries, expected " + std::to_string(n));
    }
    m.set_column(j, columns[j]);
  }
  return m;
}

void SquareMatrix::set_column(std::size_t col, std::span<const double> values) {
  if (values.size() != n_) throw std::invalid_argument("column length does not match matrix size");
  std::copy(values.begin(), values.end(), data_.begin() + static_cast<std::ptrdiff_t>(col * n_));
}

std::vector<TacticVector> SquareMatrix::columns() const {
  std::vector<TacticVector> out;
  out.reserve(n_);
  for (std::size_t j = 0; j < n_; ++j) {
    auto c = column(j);
    out.emplace_back(c.begin(), c.end());
  }
  return out;
}

}  // namespace powersim
