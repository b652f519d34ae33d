#pragma once

#include <cstddef>
#include <vector>

namespace mmfista {

/// Compressed-row matrix used for the 1-D factors of every separable
/// operator (blur bands, wavelet analysis, restriction).
class SparseMatrix {
 public:
  SparseMatrix() = default;
  /// Empty builder; fill with push()/end_row() exactly `rows` times.
  SparseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {}

  /// Entries with exactly zero value are dropped.
  static SparseMatrix from_dense(std::size_t rows, std::size_t cols, const std::vector<double>& dense);
  static SparseMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t nnz() const { return values_.size(); }

  const std::vector<std::size_t>& row_ptr() const { return row_ptr_; }
  const std::vector<std::size_t>& col_idx() const { return col_idx_; }
  const std::vector<double>& values() const { return values_; }

  SparseMatrix transpose() const;
  /// Row-major dense copy.
  std::vector<double> to_dense() const;
  SparseMatrix scaled(double s) const;

  /// Row-by-row builder: call push(col, value) for row r, then end_row().
  void push(std::size_t col, double value);
  void end_row();

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::size_t> row_ptr_{0};
  std::vector<std::size_t> col_idx_;
  std::vector<double> values_;
  std::size_t filled_rows_ = 0;
};

/// Largest eigenvalue of a^T a (squared spectral norm), by repeated squaring
/// of the dense Gram matrix. The result never underestimates the true value by
/// more than rounding.
double gram_max_eigenvalue(const SparseMatrix& a);

/// a * b, structurally zero entries dropped.
SparseMatrix multiply(const SparseMatrix& a, const SparseMatrix& b);

}  // namespace mmfista
