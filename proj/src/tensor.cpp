#include "mmfista/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "mmfista/kernels.hpp"

namespace mmfista {

double dot(const GridImage& u, const GridImage& v) {
  require_same_shape(u, v, "dot");
  return kernels::dot(u.values(), v.values());
}

double norm2(const GridImage& u) { return std::sqrt(kernels::dot(u.values(), u.values())); }

GridImage ScaledIdentity::apply(const GridImage& x) const {
  if (x.shape() != shape_) throw DimensionError("ScaledIdentity: shape mismatch");
  GridImage y = x;
  y *= scale_;
  return y;
}

ComposedMap::ComposedMap(std::shared_ptr<const LinearMap> outer, std::shared_ptr<const LinearMap> inner)
    : outer_(std::move(outer)), inner_(std::move(inner)) {
  if (outer_->input_shape() != inner_->output_shape()) {
    throw DimensionError("ComposedMap: inner output does not match outer input");
  }
}

GridImage ComposedMap::apply(const GridImage& x) const { return outer_->apply(inner_->apply(x)); }

GridImage ComposedMap::apply_adjoint(const GridImage& y) const {
  return inner_->apply_adjoint(outer_->apply_adjoint(y));
}

GridImage random_normal(Shape shape, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  GridImage x(shape);
  for (double& v : x.values()) v = normal(rng);
  return x;
}

PowerMethodResult power_method_norm(const LinearMap& op, std::uint64_t seed, double tol, int max_iter) {
  if (max_iter < 1) throw ParameterError("power_method_norm: max_iter must be >= 1");
  if (!(tol > 0.0)) throw ParameterError("power_method_norm: tol must be positive");

  PowerMethodResult result;
  GridImage x = random_normal(op.input_shape(), seed);
  x *= 1.0 / norm2(x);
  double previous = 0.0;
  for (int it = 1; it <= max_iter; ++it) {
    GridImage ax = op.apply(x);
    const double rayleigh = dot(ax, ax);  // <x, A^T A x> with ||x|| = 1
    GridImage y = op.apply_adjoint(ax);
    result.value = rayleigh;
    result.iterations = it;
    const double ny = norm2(y);
    if (ny == 0.0) {
      result.converged = true;
      break;
    }
    if (it > 1 && std::abs(rayleigh - previous) <= tol * std::abs(rayleigh)) {
      result.converged = true;
      break;
    }
    previous = rayleigh;
    y *= 1.0 / ny;
    x = std::move(y);
  }
  return result;
}

double adjoint_mismatch(const LinearMap& op, int probes, std::uint64_t seed, double scale) {
  double worst = 0.0;
  for (int i = 0; i < probes; ++i) {
    const GridImage u = random_normal(op.input_shape(), seed + 2 * i);
    const GridImage v = random_normal(op.output_shape(), seed + 2 * i + 1);
    const GridImage au = op.apply(u);
    const double lhs = dot(au, v);
    const double rhs = scale * dot(u, op.apply_adjoint(v));
    const double denom = std::abs(lhs) + norm2(au) * norm2(v);
    worst = std::max(worst, std::abs(lhs - rhs) / denom);
  }
  return worst;
}

}  // namespace mmfista
