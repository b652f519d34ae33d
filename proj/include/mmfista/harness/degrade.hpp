#pragma once

#include <cstdint>

#include "mmfista/blur.hpp"

namespace mmfista {

struct DegradationSpec {
  int psf_support = 11;
  double psf_sigma = 2.0;
  double noise_sigma = 0.01;
  std::uint64_t seed = 1;
};

/// z = A x_true + noise; no clipping.
GridImage degrade(const GridImage& x_true, const SeparableBlur& blur, double noise_sigma, std::uint64_t seed);
GridImage degrade(const GridImage& x_true, const DegradationSpec& spec);

/// Deterministic piecewise-smooth test scene in [0, 1] used when no image
/// file is supplied: smooth background, discs, a bar pattern and a ramp.
GridImage synthetic_scene(Shape shape);

}  // namespace mmfista
