#include "mmfista/blur.hpp"

#include "mmfista/kernels.hpp"

namespace mmfista {

namespace {

// Index into the half-sample symmetric extension of a length-n signal,
// which has period 2n.
std::size_t fold(long j, long n) {
  const long period = 2 * n;
  long m = j % period;
  if (m < 0) m += period;
  return static_cast<std::size_t>(m < n ? m : period - 1 - m);
}

}  // namespace

SparseMatrix neumann_blur_factor(std::size_t n, const Psf1D& psf) {
  const long half = static_cast<long>(psf.center());
  std::vector<double> row(n, 0.0);
  SparseMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < psf.support(); ++k) {
      const long j = static_cast<long>(i) + static_cast<long>(k) - half;
      row[fold(j, static_cast<long>(n))] += psf.taps[k];
    }
    for (std::size_t j = 0; j < n; ++j) {
      if (row[j] != 0.0) m.push(j, row[j]);
      row[j] = 0.0;
    }
    m.end_row();
  }
  return m;
}

SeparableBlur::SeparableBlur(Shape shape, const Psf1D& vertical, const Psf1D& horizontal)
    : SeparableBlur(shape, neumann_blur_factor(shape.rows, vertical),
                    neumann_blur_factor(shape.cols, horizontal)) {}

SeparableBlur::SeparableBlur(Shape shape, SparseMatrix vertical, SparseMatrix horizontal)
    : shape_(shape), vertical_(std::move(vertical)), horizontal_(std::move(horizontal)) {
  if (!is_power_of_two(shape.rows) || !is_power_of_two(shape.cols)) {
    throw DimensionError("SeparableBlur: shape must have power-of-two extents");
  }
  if (vertical_.rows() != shape.rows || vertical_.cols() != shape.rows ||
      horizontal_.rows() != shape.cols || horizontal_.cols() != shape.cols) {
    throw DimensionError("SeparableBlur: factor sizes do not match " + shape.str());
  }
  vertical_t_ = vertical_.transpose();
  horizontal_t_ = horizontal_.transpose();
}

GridImage SeparableBlur::apply(const GridImage& x) const {
  if (x.shape() != shape_) throw DimensionError("SeparableBlur::apply: expected " + shape_.str());
  GridImage tmp(shape_);
  kernels::apply_vertical(vertical_, x.values(), shape_.cols, tmp.values());
  GridImage out(shape_);
  kernels::apply_horizontal(horizontal_, tmp.values(), shape_.rows, out.values());
  return out;
}

GridImage SeparableBlur::apply_adjoint(const GridImage& y) const {
  if (y.shape() != shape_) throw DimensionError("SeparableBlur::apply_adjoint: expected " + shape_.str());
  GridImage tmp(shape_);
  kernels::apply_vertical(vertical_t_, y.values(), shape_.cols, tmp.values());
  GridImage out(shape_);
  kernels::apply_horizontal(horizontal_t_, tmp.values(), shape_.rows, out.values());
  return out;
}

}  // namespace mmfista
