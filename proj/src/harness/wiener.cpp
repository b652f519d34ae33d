#include "mmfista/harness/wiener.hpp"

#include <cmath>

namespace mmfista {

WienerResult wiener_init(const GridImage& z, const SeparableBlur& blur, double mu, double tol, int max_iter) {
  if (!(mu > 0.0)) throw ParameterError("wiener_init: mu must be positive");
  if (z.shape() != blur.input_shape()) throw DimensionError("wiener_init: observation shape mismatch");

  auto normal_op = [&](const GridImage& v) {
    GridImage out = blur.apply_adjoint(blur.apply(v));
    out.add_scaled(mu, v);
    return out;
  };

  WienerResult result{GridImage(z.shape())};
  GridImage r = blur.apply_adjoint(z);
  const double target = tol * norm2(r);
  GridImage p = r;
  double rr = dot(r, r);
  if (std::sqrt(rr) <= target) {
    result.converged = true;
    return result;
  }
  for (int it = 1; it <= max_iter; ++it) {
    const GridImage q = normal_op(p);
    const double step = rr / dot(p, q);
    result.x.add_scaled(step, p);
    r.add_scaled(-step, q);
    const double rr_next = dot(r, r);
    result.iterations = it;
    if (std::sqrt(rr_next) <= target) {
      result.converged = true;
      break;
    }
    p *= rr_next / rr;
    p += r;
    rr = rr_next;
  }
  return result;
}

}  // namespace mmfista
