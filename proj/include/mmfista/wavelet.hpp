#pragma once

#include <string>
#include <vector>

#include "mmfista/sparse_matrix.hpp"
#include "mmfista/tensor.hpp"

namespace mmfista {

/// Orthonormal two-channel filter bank with periodic boundaries.
///
/// Analysis at length n (even): approximation a_i = sum_k lo[k] x[(2i+k) mod n],
/// detail d_i = sum_k hi[k] x[(2i+k) mod n], i = 0..n/2-1. The constructor
/// rejects filter pairs whose periodized analysis matrix is not orthogonal.
class WaveletBasis {
 public:
  WaveletBasis(std::string family_name, std::vector<double> lowpass);

  static WaveletBasis haar();
  /// Symlet with `vanishing_moments` in {2..10}.
  static WaveletBasis symlet(int vanishing_moments);
  /// "haar", "sym2" .. "sym10".
  static WaveletBasis from_name(const std::string& name);

  const std::string& family_name() const { return name_; }
  const std::vector<double>& lowpass() const { return lowpass_; }
  const std::vector<double>& highpass() const { return highpass_; }

  /// n x n orthogonal matrix; rows [0, n/2) low-pass, rows [n/2, n) high-pass.
  SparseMatrix analysis_matrix(std::size_t n) const;
  /// n/2 x n low-pass half of analysis_matrix(n).
  SparseMatrix lowpass_matrix(std::size_t n) const;

 private:
  std::string name_;
  std::vector<double> lowpass_;
  std::vector<double> highpass_;
};

int max_dwt_levels(Shape shape);

/// Precomputed multi-level 2-D DWT for a fixed shape (Mallat layout).
class WaveletTransform final : public LinearMap {
 public:
  WaveletTransform(const WaveletBasis& basis, Shape shape, int levels);

  Shape input_shape() const override { return shape_; }
  Shape output_shape() const override { return shape_; }
  GridImage apply(const GridImage& x) const override { return forward(x); }
  GridImage apply_adjoint(const GridImage& c) const override { return inverse(c); }

  GridImage forward(const GridImage& x) const;
  GridImage inverse(const GridImage& c) const;

  int levels() const { return levels_; }
  const WaveletBasis& basis() const { return basis_; }

 private:
  struct Level {
    Shape block;
    SparseMatrix rows_analysis;  // acts along columns, size block.rows
    SparseMatrix cols_analysis;  // acts along rows, size block.cols
    SparseMatrix rows_synthesis;
    SparseMatrix cols_synthesis;
  };

  WaveletBasis basis_;
  Shape shape_;
  int levels_;
  std::vector<Level> plan_;
};

GridImage dwt_forward(const WaveletBasis& basis, const GridImage& x, int levels);
GridImage dwt_inverse(const WaveletBasis& basis, const GridImage& c, int levels);

}  // namespace mmfista
