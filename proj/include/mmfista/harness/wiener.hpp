#pragma once

#include "mmfista/blur.hpp"

namespace mmfista {

struct WienerResult {
  GridImage x;
  bool converged = false;
  int iterations = 0;
};

/// Tikhonov-regularized inverse argmin ||A x - z||^2 + mu ||x||^2, solved by
/// conjugate gradients on (A^T A + mu I) x = A^T z from x = 0. Stops when the
/// residual norm drops below tol * ||A^T z||.
WienerResult wiener_init(const GridImage& z, const SeparableBlur& blur, double mu, double tol = 1e-6,
                         int max_iter = 200);

}  // namespace mmfista
