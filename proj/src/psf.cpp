#include "mmfista/psf.hpp"

#include <cmath>

#include "mmfista/errors.hpp"

namespace mmfista {

Psf1D make_gaussian_psf(int support, double sigma) {
  if (support <= 0) throw ParameterError("make_gaussian_psf: support must be positive");
  if (!(sigma > 0.0)) throw ParameterError("make_gaussian_psf: sigma must be positive");
  if (support % 2 == 0) ++support;

  Psf1D psf;
  psf.sigma = sigma;
  psf.taps.resize(static_cast<std::size_t>(support));
  const int half = support / 2;
  double sum = 0.0;
  for (int k = -half; k <= half; ++k) {
    const double v = std::exp(-0.5 * (k * k) / (sigma * sigma));
    psf.taps[static_cast<std::size_t>(k + half)] = v;
    sum += v;
  }
  for (double& t : psf.taps) t /= sum;
  return psf;
}

Psf1D delta_psf() { return Psf1D{{1.0}, 1.0}; }

}  // namespace mmfista
