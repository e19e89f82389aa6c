#pragma once

#include "gradflow/types.hpp"

namespace gradflow {

/// Regularization parameter of the gradient-dependent diffusion
/// coefficient sigma(s^2) = 1/sqrt(lambda^2 + s^2). The degenerate
/// limit lambda = 0 is rejected at construction so the evaluation
/// routines never have to re-check it.
class DiffusionParams {
 public:
  explicit DiffusionParams(double lambda);

  double lambda() const { return lambda_; }

 private:
  double lambda_;
};

/// sigma(s^2) = 1/sqrt(lambda^2 + s^2), argument passed as s^2.
double sigma(const DiffusionParams& params, double s2);

/// d sigma / d(s^2) = -sigma^3 / 2. Always negative.
double sigma_prime(const DiffusionParams& params, double s2);

/// gamma(s^2) = 2 |sigma'(s^2)| s^2 = sigma - lambda^2 sigma^3,
/// the gap between the across-gradient and along-gradient diffusivities.
double gamma(const DiffusionParams& params, double s2);

/// Linearization matrix A(grad) = sigma I + 2 sigma' grad grad^T.
/// Eigenvalues: sigma(|grad|^2) across the gradient, lambda^2 sigma^3
/// along it; SPD for every finite grad.
Mat2 a_matrix(const DiffusionParams& params, Vec2 grad);

}  // namespace gradflow
