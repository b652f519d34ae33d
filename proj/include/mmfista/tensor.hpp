#pragma once

#include <cstdint>
#include <functional>
#include <memory>

#include "mmfista/grid_image.hpp"

namespace mmfista {

double dot(const GridImage& u, const GridImage& v);
double norm2(const GridImage& u);

/// Linear operator between grid spaces with an explicit adjoint.
class LinearMap {
 public:
  virtual ~LinearMap() = default;
  virtual Shape input_shape() const = 0;
  virtual Shape output_shape() const = 0;
  virtual GridImage apply(const GridImage& x) const = 0;
  virtual GridImage apply_adjoint(const GridImage& y) const = 0;
};

/// Multiple of the identity on a fixed shape; mostly useful in tests.
class ScaledIdentity final : public LinearMap {
 public:
  ScaledIdentity(Shape shape, double scale) : shape_(shape), scale_(scale) {}
  Shape input_shape() const override { return shape_; }
  Shape output_shape() const override { return shape_; }
  GridImage apply(const GridImage& x) const override;
  GridImage apply_adjoint(const GridImage& y) const override { return apply(y); }

 private:
  Shape shape_;
  double scale_;
};

/// Composition outer ∘ inner (inner applied first).
class ComposedMap final : public LinearMap {
 public:
  ComposedMap(std::shared_ptr<const LinearMap> outer, std::shared_ptr<const LinearMap> inner);
  Shape input_shape() const override { return inner_->input_shape(); }
  Shape output_shape() const override { return outer_->output_shape(); }
  GridImage apply(const GridImage& x) const override;
  GridImage apply_adjoint(const GridImage& y) const override;

 private:
  std::shared_ptr<const LinearMap> outer_;
  std::shared_ptr<const LinearMap> inner_;
};

struct PowerMethodResult {
  double value = 0.0;  // estimate of ||A||^2 = lambda_max(A^T A)
  bool converged = false;
  int iterations = 0;
};

/// Power iteration on A^T A from a seeded Gaussian start. Stops when the
/// relative change of the Rayleigh quotient falls below `tol`.
PowerMethodResult power_method_norm(const LinearMap& op, std::uint64_t seed = 0, double tol = 1e-6,
                                    int max_iter = 200);

/// Image with i.i.d. standard normal entries from a seeded generator.
GridImage random_normal(Shape shape, std::uint64_t seed);

/// Largest relative adjoint mismatch |<Au,v> - scale*<u,A^T v>| / (|<Au,v>| + ||Au|| ||v||)
/// over `probes` random pairs.
double adjoint_mismatch(const LinearMap& op, int probes, std::uint64_t seed, double scale = 1.0);

}  // namespace mmfista
