#include "mmfista/kernels.hpp"

#include <cmath>
#include <vector>

#include "mmfista/errors.hpp"
#include "mmfista/sparse_matrix.hpp"

namespace mmfista::kernels {

namespace {

// Below this many elements the OpenMP variants stay on the calling thread.
constexpr std::size_t kParallelThreshold = 1 << 13;

void check_same_length(std::size_t a, std::size_t b, const char* where) {
  if (a != b) throw DimensionError(std::string(where) + ": length mismatch");
}

inline double block_dot(const double* x, const double* y, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += x[i] * y[i];
  return s;
}

inline double block_abs_sum(const double* x, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += std::abs(x[i]);
  return s;
}

inline double shrink(double v, double theta) {
  const double mag = std::abs(v) - theta;
  if (mag <= 0.0) return 0.0;
  return v > 0.0 ? mag : -mag;
}

inline void vertical_row(const SparseMatrix& m, const double* in, std::size_t cols, double* out_row,
                         std::size_t i) {
  for (std::size_t c = 0; c < cols; ++c) out_row[c] = 0.0;
  for (std::size_t k = m.row_ptr()[i]; k < m.row_ptr()[i + 1]; ++k) {
    const double w = m.values()[k];
    const double* src = in + m.col_idx()[k] * cols;
    for (std::size_t c = 0; c < cols; ++c) out_row[c] += w * src[c];
  }
}

inline void horizontal_row(const SparseMatrix& m, const double* in_row, double* out_row) {
  const auto& ptr = m.row_ptr();
  const auto& idx = m.col_idx();
  const auto& val = m.values();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    double s = 0.0;
    for (std::size_t k = ptr[i]; k < ptr[i + 1]; ++k) s += val[k] * in_row[idx[k]];
    out_row[i] = s;
  }
}

void check_vertical(const SparseMatrix& m, std::size_t in_len, std::size_t cols, std::size_t out_len) {
  if (in_len != m.cols() * cols || out_len != m.rows() * cols) {
    throw DimensionError("apply_vertical: operand shapes do not conform");
  }
}

void check_horizontal(const SparseMatrix& m, std::size_t in_len, std::size_t rows, std::size_t out_len) {
  if (in_len != rows * m.cols() || out_len != rows * m.rows()) {
    throw DimensionError("apply_horizontal: operand shapes do not conform");
  }
}

std::size_t block_count(std::size_t n) { return (n + kReductionBlock - 1) / kReductionBlock; }

}  // namespace

namespace serial {

double dot(std::span<const double> x, std::span<const double> y) {
  check_same_length(x.size(), y.size(), "dot");
  const std::size_t nb = block_count(x.size());
  double total = 0.0;
  for (std::size_t b = 0; b < nb; ++b) {
    const std::size_t lo = b * kReductionBlock;
    const std::size_t len = std::min(kReductionBlock, x.size() - lo);
    total += block_dot(x.data() + lo, y.data() + lo, len);
  }
  return total;
}

double abs_sum(std::span<const double> x) {
  const std::size_t nb = block_count(x.size());
  double total = 0.0;
  for (std::size_t b = 0; b < nb; ++b) {
    const std::size_t lo = b * kReductionBlock;
    total += block_abs_sum(x.data() + lo, std::min(kReductionBlock, x.size() - lo));
  }
  return total;
}

void lincomb(double a, std::span<const double> x, double b, std::span<const double> y,
             std::span<double> out) {
  check_same_length(x.size(), y.size(), "lincomb");
  check_same_length(x.size(), out.size(), "lincomb");
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = a * x[i] + b * y[i];
}

void axpy(double a, std::span<const double> x, std::span<double> y) {
  check_same_length(x.size(), y.size(), "axpy");
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += a * x[i];
}

void scale(double a, std::span<double> x) {
  for (double& v : x) v *= a;
}

void soft_threshold(std::span<const double> v, double theta, std::span<double> out) {
  check_same_length(v.size(), out.size(), "soft_threshold");
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = shrink(v[i], theta);
}

void apply_vertical(const SparseMatrix& m, std::span<const double> in, std::size_t cols,
                    std::span<double> out) {
  check_vertical(m, in.size(), cols, out.size());
  for (std::size_t i = 0; i < m.rows(); ++i) vertical_row(m, in.data(), cols, out.data() + i * cols, i);
}

void apply_horizontal(const SparseMatrix& m, std::span<const double> in, std::size_t rows,
                      std::span<double> out) {
  check_horizontal(m, in.size(), rows, out.size());
  for (std::size_t r = 0; r < rows; ++r) {
    horizontal_row(m, in.data() + r * m.cols(), out.data() + r * m.rows());
  }
}

}  // namespace serial

namespace omp {

double dot(std::span<const double> x, std::span<const double> y) {
  check_same_length(x.size(), y.size(), "dot");
  const std::size_t nb = block_count(x.size());
  if (nb <= 1) return serial::dot(x, y);
  std::vector<double> partial(nb);
#pragma omp parallel for schedule(static)
  for (std::size_t b = 0; b < nb; ++b) {
    const std::size_t lo = b * kReductionBlock;
    partial[b] = block_dot(x.data() + lo, y.data() + lo, std::min(kReductionBlock, x.size() - lo));
  }
  double total = 0.0;
  for (double p : partial) total += p;
  return total;
}

double abs_sum(std::span<const double> x) {
  const std::size_t nb = block_count(x.size());
  if (nb <= 1) return serial::abs_sum(x);
  std::vector<double> partial(nb);
#pragma omp parallel for schedule(static)
  for (std::size_t b = 0; b < nb; ++b) {
    const std::size_t lo = b * kReductionBlock;
    partial[b] = block_abs_sum(x.data() + lo, std::min(kReductionBlock, x.size() - lo));
  }
  double total = 0.0;
  for (double p : partial) total += p;
  return total;
}

void lincomb(double a, std::span<const double> x, double b, std::span<const double> y,
             std::span<double> out) {
  check_same_length(x.size(), y.size(), "lincomb");
  check_same_length(x.size(), out.size(), "lincomb");
  const std::size_t n = x.size();
#pragma omp parallel for schedule(static) if (n > kParallelThreshold)
  for (std::size_t i = 0; i < n; ++i) out[i] = a * x[i] + b * y[i];
}

void axpy(double a, std::span<const double> x, std::span<double> y) {
  check_same_length(x.size(), y.size(), "axpy");
  const std::size_t n = x.size();
#pragma omp parallel for schedule(static) if (n > kParallelThreshold)
  for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void scale(double a, std::span<double> x) {
  const std::size_t n = x.size();
#pragma omp parallel for schedule(static) if (n > kParallelThreshold)
  for (std::size_t i = 0; i < n; ++i) x[i] *= a;
}

void soft_threshold(std::span<const double> v, double theta, std::span<double> out) {
  check_same_length(v.size(), out.size(), "soft_threshold");
  const std::size_t n = v.size();
#pragma omp parallel for schedule(static) if (n > kParallelThreshold)
  for (std::size_t i = 0; i < n; ++i) out[i] = shrink(v[i], theta);
}

void apply_vertical(const SparseMatrix& m, std::span<const double> in, std::size_t cols,
                    std::span<double> out) {
  check_vertical(m, in.size(), cols, out.size());
  const std::size_t rows = m.rows();
#pragma omp parallel for schedule(static) if (out.size() > kParallelThreshold)
  for (std::size_t i = 0; i < rows; ++i) vertical_row(m, in.data(), cols, out.data() + i * cols, i);
}

void apply_horizontal(const SparseMatrix& m, std::span<const double> in, std::size_t rows,
                      std::span<double> out) {
  check_horizontal(m, in.size(), rows, out.size());
#pragma omp parallel for schedule(static) if (out.size() > kParallelThreshold)
  for (std::size_t r = 0; r < rows; ++r) {
    horizontal_row(m, in.data() + r * m.cols(), out.data() + r * m.rows());
  }
}

}  // namespace omp

}  // namespace mmfista::kernels
