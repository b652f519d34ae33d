#pragma once

// Data-parallel inner loops. Each kernel exists twice: a plain serial loop
// (kept as the reference for tests and benchmarks) and an OpenMP version.
// Both variants perform the same floating-point operations in the same order
// per output element; reductions are split into fixed-size blocks whose
// partial sums are combined serially, so results do not depend on the
// number of threads.

#include <cstddef>
#include <span>

namespace mmfista {

class SparseMatrix;

namespace kernels {

/// Block length for reductions. Fixed so that summation order is independent
/// of the thread count.
inline constexpr std::size_t kReductionBlock = 4096;

namespace serial {

double dot(std::span<const double> x, std::span<const double> y);
double abs_sum(std::span<const double> x);
void lincomb(double a, std::span<const double> x, double b, std::span<const double> y,
             std::span<double> out);
void axpy(double a, std::span<const double> x, std::span<double> y);
void scale(double a, std::span<double> x);
void soft_threshold(std::span<const double> v, double theta, std::span<double> out);

/// out (m.rows() x cols) = m * in (m.cols() x cols), row-major images.
void apply_vertical(const SparseMatrix& m, std::span<const double> in, std::size_t cols,
                    std::span<double> out);
/// out (rows x m.rows()) = in (rows x m.cols()) * m^T, row-major images.
void apply_horizontal(const SparseMatrix& m, std::span<const double> in, std::size_t rows,
                      std::span<double> out);

}  // namespace serial

namespace omp {

double dot(std::span<const double> x, std::span<const double> y);
double abs_sum(std::span<const double> x);
void lincomb(double a, std::span<const double> x, double b, std::span<const double> y,
             std::span<double> out);
void axpy(double a, std::span<const double> x, std::span<double> y);
void scale(double a, std::span<double> x);
void soft_threshold(std::span<const double> v, double theta, std::span<double> out);
void apply_vertical(const SparseMatrix& m, std::span<const double> in, std::size_t cols,
                    std::span<double> out);
void apply_horizontal(const SparseMatrix& m, std::span<const double> in, std::size_t rows,
                      std::span<double> out);

}  // namespace omp

// The library calls the OpenMP variants.
using omp::abs_sum;
using omp::apply_horizontal;
using omp::apply_vertical;
using omp::axpy;
using omp::dot;
using omp::lincomb;
using omp::scale;
using omp::soft_threshold;

}  // namespace kernels
}  // namespace mmfista
