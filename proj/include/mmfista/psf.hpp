#pragma once

#include <cstddef>
#include <vector>

namespace mmfista {

/// Sampled 1-D Gaussian cross-section; the 2-D PSF is the outer product of
/// two of these.
struct Psf1D {
  std::vector<double> taps;  // odd length, symmetric, sums to 1
  double sigma = 0.0;

  std::size_t support() const { return taps.size(); }
  std::size_t center() const { return taps.size() / 2; }
};

/// Truncated Gaussian exp(-k^2 / (2 sigma^2)), k = -support/2 .. support/2,
/// renormalized to unit sum. An even `support` is rounded up to the next odd
/// value so the kernel stays centered.
Psf1D make_gaussian_psf(int support, double sigma);

/// The delta kernel [1].
Psf1D delta_psf();

}  // namespace mmfista
