#pragma once

#include "mmfista/psf.hpp"
#include "mmfista/sparse_matrix.hpp"
#include "mmfista/tensor.hpp"

namespace mmfista {

/// Banded 1-D convolution matrix with reflexive (half-sample symmetric)
/// boundary folding. Row sums equal the PSF mass, and the matrix is
/// symmetric whenever the PSF is.
SparseMatrix neumann_blur_factor(std::size_t n, const Psf1D& psf);

/// A x = V X H^T for a row-major image X: V blurs along columns (rows x rows),
/// H blurs along rows (cols x cols). Equivalent to the Kronecker product
/// (V ⊗ H) acting on the row-major vectorization.
class SeparableBlur final : public LinearMap {
 public:
  SeparableBlur(Shape shape, const Psf1D& vertical, const Psf1D& horizontal);
  SeparableBlur(Shape shape, const Psf1D& psf) : SeparableBlur(shape, psf, psf) {}
  /// Direct construction from 1-D factors (used for coarsened blurs).
  SeparableBlur(Shape shape, SparseMatrix vertical, SparseMatrix horizontal);

  Shape input_shape() const override { return shape_; }
  Shape output_shape() const override { return shape_; }
  GridImage apply(const GridImage& x) const override;
  GridImage apply_adjoint(const GridImage& y) const override;

  const SparseMatrix& vertical() const { return vertical_; }
  const SparseMatrix& horizontal() const { return horizontal_; }
  /// ||A||^2 = ||V||^2 ||H||^2, exact up to rounding.
  double squared_norm() const { return gram_max_eigenvalue(vertical_) * gram_max_eigenvalue(horizontal_); }

 private:
  Shape shape_;
  SparseMatrix vertical_;
  SparseMatrix horizontal_;
  SparseMatrix vertical_t_;
  SparseMatrix horizontal_t_;
};

inline GridImage blur_apply(const SeparableBlur& blur, const GridImage& x) { return blur.apply(x); }

}  // namespace mmfista
