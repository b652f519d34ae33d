#pragma once

#include <cmath>
#include <memory>

#include "mmfista/blur.hpp"
#include "mmfista/wavelet.hpp"

namespace mmfista {

/// Restriction / prolongation between a fine grid and the grid halved in
/// each dimension.
///
/// restrict(x) = Rv X Rh^T with R the wavelet low-pass analysis (detail
/// channels discarded); prolong(y) = eta * Rv^T Y Rh, i.e. the prolongation
/// is eta times the adjoint of the restriction.
class TransferPair {
 public:
  TransferPair(const WaveletBasis& basis, Shape fine, double eta = 0.25);

  Shape fine_shape() const { return fine_; }
  Shape coarse_shape() const { return fine_.halved(); }
  double eta() const { return eta_; }

  GridImage restrict(const GridImage& x_fine) const;
  GridImage prolong(const GridImage& x_coarse) const;

  /// 1-D restriction factors (coarse x fine).
  const SparseMatrix& restrict_vertical() const { return rv_; }
  const SparseMatrix& restrict_horizontal() const { return rh_; }
  /// 1-D prolongation factors sqrt(eta) * R^T, so that their Kronecker
  /// product is the 2-D prolongation.
  SparseMatrix prolong_vertical() const { return rv_t_.scaled(std::sqrt(eta_)); }
  SparseMatrix prolong_horizontal() const { return rh_t_.scaled(std::sqrt(eta_)); }

  std::shared_ptr<const LinearMap> restrict_map() const;
  std::shared_ptr<const LinearMap> prolong_map() const;

 private:
  Shape fine_;
  double eta_;
  SparseMatrix rv_, rh_, rv_t_, rh_t_;
};

GridImage restrict(const TransferPair& t, const GridImage& x_fine);
GridImage prolong(const TransferPair& t, const GridImage& x_coarse);

/// Galerkin-style coarse blur A_H = I_h^H A_h I_H^h, assembled per dimension
/// as R B P so the coarse operator stays separable.
SeparableBlur coarsen_blur(const SeparableBlur& fine, const TransferPair& t);

}  // namespace mmfista
