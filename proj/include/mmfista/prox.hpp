#pragma once

#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "mmfista/blur.hpp"
#include "mmfista/wavelet.hpp"

namespace mmfista {

/// sign(v) * max(|v| - theta, 0), elementwise.
std::vector<double> soft_threshold(std::span<const double> v, double theta);
GridImage soft_threshold(const GridImage& v, double theta);

/// g(x) = lambda * ||W x||_1 with W an orthonormal wavelet transform, so that
/// prox and Moreau envelope have closed forms in coefficient space.
struct L1SynthesisPrior {
  std::shared_ptr<const WaveletTransform> transform;
  double lambda = 0.0;

  L1SynthesisPrior(std::shared_ptr<const WaveletTransform> w, double lambda);
  L1SynthesisPrior(const WaveletBasis& basis, Shape shape, int levels, double lambda);

  Shape shape() const { return transform->input_shape(); }
  int levels() const { return transform->levels(); }

  double value(const GridImage& x) const;
  /// argmin_u g(u) + ||u - x||^2 / (2 tau)
  GridImage prox(const GridImage& x, double tau) const;
  /// Moreau envelope  inf_y g(y) + ||x - y||^2 / (2 gamma).
  double moreau_value(const GridImage& x, double gamma) const;
  /// (x - prox(x, gamma)) / gamma
  GridImage moreau_grad(const GridImage& x, double gamma) const;
};

inline GridImage prox_g(const L1SynthesisPrior& prior, const GridImage& x, double tau) {
  return prior.prox(x, tau);
}
inline double moreau_value(const L1SynthesisPrior& prior, const GridImage& x, double gamma) {
  return prior.moreau_value(x, gamma);
}
inline GridImage moreau_grad(const L1SynthesisPrior& prior, const GridImage& x, double gamma) {
  return prior.moreau_grad(x, gamma);
}

/// F(x) = 1/2 ||A x - z||^2 + <v, x> + g(x).
///
/// The optional linear tilt v belongs to the smooth part: grad_f includes it
/// and prox_g is unaffected. F_gamma replaces g by its Moreau envelope.
struct CompositeObjective {
  std::shared_ptr<const SeparableBlur> blur;
  GridImage observation;
  L1SynthesisPrior prior;
  std::optional<GridImage> linear_tilt;
  double gamma = 1.0;
  double lipschitz_f = 1.0;  // ||A||^2

  Shape shape() const { return observation.shape(); }
  /// Lipschitz constant of grad F_gamma.
  double smoothed_lipschitz() const { return lipschitz_f + 1.0 / gamma; }

  GridImage residual(const GridImage& x) const;
  double smooth_value(const GridImage& x) const;
  double value(const GridImage& x) const;
  double smoothed_value(const GridImage& x) const;

  struct Values {
    double F;
    double F_smoothed;
  };
  /// Both objective values from a single blur and wavelet evaluation.
  Values values(const GridImage& x) const;

  GridImage grad_f(const GridImage& x) const;
  GridImage smoothed_grad(const GridImage& x) const;
};

inline GridImage grad_f(const CompositeObjective& obj, const GridImage& x) { return obj.grad_f(x); }
inline GridImage smoothed_grad(const CompositeObjective& obj, const GridImage& x) {
  return obj.smoothed_grad(x);
}
inline double objective_value(const CompositeObjective& obj, const GridImage& x) { return obj.value(x); }
inline double smoothed_objective_value(const CompositeObjective& obj, const GridImage& x) {
  return obj.smoothed_value(x);
}

}  // namespace mmfista
