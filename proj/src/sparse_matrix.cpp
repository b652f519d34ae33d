#include "mmfista/sparse_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "mmfista/errors.hpp"

namespace mmfista {

void SparseMatrix::push(std::size_t col, double value) {
  if (col >= cols_) throw DimensionError("SparseMatrix::push: column out of range");
  col_idx_.push_back(col);
  values_.push_back(value);
}

void SparseMatrix::end_row() {
  if (filled_rows_ >= rows_) throw DimensionError("SparseMatrix::end_row: too many rows");
  row_ptr_.push_back(values_.size());
  ++filled_rows_;
}

SparseMatrix SparseMatrix::from_dense(std::size_t rows, std::size_t cols,
                                      const std::vector<double>& dense) {
  if (dense.size() != rows * cols) throw DimensionError("SparseMatrix::from_dense: size mismatch");
  SparseMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      const double v = dense[i * cols + j];
      if (v != 0.0) m.push(j, v);
    }
    m.end_row();
  }
  return m;
}

SparseMatrix SparseMatrix::identity(std::size_t n) {
  SparseMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    m.push(i, 1.0);
    m.end_row();
  }
  return m;
}

SparseMatrix SparseMatrix::transpose() const {
  std::vector<std::size_t> counts(cols_ + 1, 0);
  for (std::size_t c : col_idx_) ++counts[c + 1];
  for (std::size_t j = 0; j < cols_; ++j) counts[j + 1] += counts[j];

  SparseMatrix t;
  t.rows_ = cols_;
  t.cols_ = rows_;
  t.filled_rows_ = cols_;
  t.row_ptr_ = counts;
  t.col_idx_.resize(nnz());
  t.values_.resize(nnz());
  std::vector<std::size_t> next(counts.begin(), counts.end() - 1);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) {
      const std::size_t dst = next[col_idx_[k]]++;
      t.col_idx_[dst] = i;
      t.values_[dst] = values_[k];
    }
  }
  return t;
}

std::vector<double> SparseMatrix::to_dense() const {
  std::vector<double> dense(rows_ * cols_, 0.0);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) {
      dense[i * cols_ + col_idx_[k]] += values_[k];
    }
  }
  return dense;
}

SparseMatrix SparseMatrix::scaled(double s) const {
  SparseMatrix out = *this;
  for (double& v : out.values_) v *= s;
  return out;
}

SparseMatrix multiply(const SparseMatrix& a, const SparseMatrix& b) {
  if (a.cols() != b.rows()) throw DimensionError("multiply: inner dimensions differ");
  SparseMatrix c(a.rows(), b.cols());
  std::vector<double> acc(b.cols(), 0.0);
  std::vector<char> touched(b.cols(), 0);
  std::vector<std::size_t> cols;
  const auto& ap = a.row_ptr();
  const auto& bp = b.row_ptr();
  for (std::size_t i = 0; i < a.rows(); ++i) {
    cols.clear();
    for (std::size_t ka = ap[i]; ka < ap[i + 1]; ++ka) {
      const std::size_t j = a.col_idx()[ka];
      const double av = a.values()[ka];
      for (std::size_t kb = bp[j]; kb < bp[j + 1]; ++kb) {
        const std::size_t col = b.col_idx()[kb];
        if (!touched[col]) {
          touched[col] = 1;
          cols.push_back(col);
        }
        acc[col] += av * b.values()[kb];
      }
    }
    std::sort(cols.begin(), cols.end());
    for (std::size_t col : cols) {
      if (acc[col] != 0.0) c.push(col, acc[col]);
      acc[col] = 0.0;
      touched[col] = 0;
    }
    c.end_row();
  }
  return c;
}

double gram_max_eigenvalue(const SparseMatrix& a) {
  const std::size_t n = a.cols();
  if (n == 0) return 0.0;
  std::vector<double> g(n * n, 0.0);
  const auto& ptr = a.row_ptr();
  const auto& col = a.col_idx();
  const auto& val = a.values();
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t i = ptr[r]; i < ptr[r + 1]; ++i)
      for (std::size_t j = ptr[r]; j < ptr[r + 1]; ++j) g[col[i] * n + col[j]] += val[i] * val[j];

  // G_s = G^(2^s) / c_s with trace 1; lambda_max(G) = lim (c_s)^(1/2^s) from above.
  double log_scale = 0.0;
  double power = 1.0;
  std::vector<double> sq(n * n);
  for (int s = 0; s < 64; ++s) {
    double trace = 0.0;
    for (std::size_t i = 0; i < n; ++i) trace += g[i * n + i];
    if (!(trace > 0.0)) return 0.0;
    for (double& x : g) x /= trace;
    log_scale += std::log(trace) / power;
    std::fill(sq.begin(), sq.end(), 0.0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k) {
        const double gik = g[i * n + k];
        if (gik == 0.0) continue;
        const double* gk = &g[k * n];
        double* out = &sq[i * n];
        for (std::size_t j = 0; j < n; ++j) out[j] += gik * gk[j];
      }
    double purity = 0.0;
    for (std::size_t i = 0; i < n; ++i) purity += sq[i * n + i];
    g.swap(sq);
    power *= 2.0;
    if (purity > 1.0 - 1e-15) break;
  }
  double trace = 0.0;
  for (std::size_t i = 0; i < n; ++i) trace += g[i * n + i];
  return std::exp(log_scale + std::log(trace) / power);
}

}  // namespace mmfista
