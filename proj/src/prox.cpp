#include "mmfista/prox.hpp"

#include <cmath>

#include "mmfista/kernels.hpp"

namespace mmfista {

namespace {

void check_theta(double theta) {
  if (!(theta >= 0.0)) throw ParameterError("soft_threshold: theta must be >= 0");
}

void check_positive(double v, const char* what) {
  if (!(v > 0.0)) throw ParameterError(std::string(what) + " must be positive");
}

// Envelope value and prox-distance terms in coefficient space:
// g(p) + ||c - p||^2 / (2 gamma) with p = soft(c, gamma * lambda).
double envelope_from_coefficients(const GridImage& coeffs, double lambda, double gamma) {
  GridImage shrunk = soft_threshold(coeffs, gamma * lambda);
  const double g = lambda * kernels::abs_sum(shrunk.values());
  shrunk -= coeffs;
  return g + kernels::dot(shrunk.values(), shrunk.values()) / (2.0 * gamma);
}

}  // namespace

std::vector<double> soft_threshold(std::span<const double> v, double theta) {
  check_theta(theta);
  std::vector<double> out(v.size());
  kernels::soft_threshold(v, theta, out);
  return out;
}

GridImage soft_threshold(const GridImage& v, double theta) {
  check_theta(theta);
  GridImage out(v.shape());
  kernels::soft_threshold(v.values(), theta, out.values());
  return out;
}

L1SynthesisPrior::L1SynthesisPrior(std::shared_ptr<const WaveletTransform> w, double lam)
    : transform(std::move(w)), lambda(lam) {
  if (!transform) throw ParameterError("L1SynthesisPrior: missing transform");
  if (!(lambda >= 0.0)) throw ParameterError("L1SynthesisPrior: lambda must be >= 0");
}

L1SynthesisPrior::L1SynthesisPrior(const WaveletBasis& basis, Shape shape, int levels, double lam)
    : L1SynthesisPrior(std::make_shared<WaveletTransform>(basis, shape, levels), lam) {}

double L1SynthesisPrior::value(const GridImage& x) const {
  if (lambda == 0.0) return 0.0;
  return lambda * kernels::abs_sum(transform->forward(x).values());
}

GridImage L1SynthesisPrior::prox(const GridImage& x, double tau) const {
  check_positive(tau, "prox: tau");
  if (lambda == 0.0) return x;
  return transform->inverse(soft_threshold(transform->forward(x), tau * lambda));
}

double L1SynthesisPrior::moreau_value(const GridImage& x, double gamma) const {
  check_positive(gamma, "moreau_value: gamma");
  if (lambda == 0.0) return 0.0;
  return envelope_from_coefficients(transform->forward(x), lambda, gamma);
}

GridImage L1SynthesisPrior::moreau_grad(const GridImage& x, double gamma) const {
  check_positive(gamma, "moreau_grad: gamma");
  GridImage g = x - prox(x, gamma);
  g *= 1.0 / gamma;
  return g;
}

GridImage CompositeObjective::residual(const GridImage& x) const {
  GridImage r = blur->apply(x);
  r -= observation;
  return r;
}

double CompositeObjective::smooth_value(const GridImage& x) const {
  const GridImage r = residual(x);
  double f = 0.5 * dot(r, r);
  if (linear_tilt) f += dot(*linear_tilt, x);
  return f;
}

double CompositeObjective::value(const GridImage& x) const { return smooth_value(x) + prior.value(x); }

double CompositeObjective::smoothed_value(const GridImage& x) const {
  return smooth_value(x) + prior.moreau_value(x, gamma);
}

CompositeObjective::Values CompositeObjective::values(const GridImage& x) const {
  const double f = smooth_value(x);
  if (prior.lambda == 0.0) return {f, f};
  const GridImage coeffs = prior.transform->forward(x);
  const double g = prior.lambda * kernels::abs_sum(coeffs.values());
  return {f + g, f + envelope_from_coefficients(coeffs, prior.lambda, gamma)};
}

GridImage CompositeObjective::grad_f(const GridImage& x) const {
  GridImage g = blur->apply_adjoint(residual(x));
  if (linear_tilt) g += *linear_tilt;
  return g;
}

GridImage CompositeObjective::smoothed_grad(const GridImage& x) const {
  GridImage g = grad_f(x);
  g += prior.moreau_grad(x, gamma);
  return g;
}

}  // namespace mmfista
