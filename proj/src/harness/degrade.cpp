#include "mmfista/harness/degrade.hpp"

#include <cmath>
#include <random>

namespace mmfista {

GridImage degrade(const GridImage& x_true, const SeparableBlur& blur, double noise_sigma, std::uint64_t seed) {
  if (!(noise_sigma >= 0.0)) throw ParameterError("degrade: noise_sigma must be >= 0");
  GridImage z = blur.apply(x_true);
  if (noise_sigma > 0.0) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, noise_sigma);
    for (double& v : z.values()) v += normal(rng);
  }
  return z;
}

GridImage degrade(const GridImage& x_true, const DegradationSpec& spec) {
  const SeparableBlur blur(x_true.shape(), make_gaussian_psf(spec.psf_support, spec.psf_sigma));
  return degrade(x_true, blur, spec.noise_sigma, spec.seed);
}

GridImage synthetic_scene(Shape shape) {
  GridImage x(shape);
  const double h = static_cast<double>(shape.rows);
  const double w = static_cast<double>(shape.cols);
  for (std::size_t r = 0; r < shape.rows; ++r) {
    for (std::size_t c = 0; c < shape.cols; ++c) {
      const double u = (r + 0.5) / h;
      const double v = (c + 0.5) / w;
      double value = 0.35 + 0.15 * std::sin(2.0 * M_PI * u) * std::cos(3.0 * M_PI * v);
      auto disc = [&](double cu, double cv, double radius) {
        return (u - cu) * (u - cu) + (v - cv) * (v - cv) < radius * radius;
      };
      if (disc(0.3, 0.3, 0.18)) value = 0.85;
      if (disc(0.3, 0.3, 0.08)) value = 0.15;
      if (disc(0.7, 0.65, 0.2)) value = 0.6 + 0.3 * (v - 0.45);
      if (u > 0.55 && u < 0.9 && v > 0.08 && v < 0.4) {
        value = (static_cast<int>(v * 40.0) % 2 == 0) ? 0.95 : 0.05;
      }
      if (u > 0.08 && u < 0.16 && v > 0.55 && v < 0.95) value = v;
      x(r, c) = std::clamp(value, 0.0, 1.0);
    }
  }
  return x;
}

}  // namespace mmfista
