#include "gradflow/coeff.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace gradflow {

DiffusionParams::DiffusionParams(double lambda) : lambda_(lambda) {
  if (!std::isfinite(lambda) || lambda <= 0.0) {
    throw std::invalid_argument("DiffusionParams: lambda must be positive, got " +
                                std::to_string(lambda));
  }
}

namespace {

void require_nonnegative(double s2) {
  if (!(s2 >= 0.0)) {
    throw std::domain_error("sigma family: s^2 must be nonnegative, got " +
                            std::to_string(s2));
  }
}

}  // namespace

double sigma(const DiffusionParams& params, double s2) {
  require_nonnegative(s2);
  return 1.0 / std::sqrt(params.lambda() * params.lambda() + s2);
}

double sigma_prime(const DiffusionParams& params, double s2) {
  require_nonnegative(s2);
  const double s = sigma(params, s2);
  return -0.5 * s * s * s;
}

double gamma(const DiffusionParams& params, double s2) {
  require_nonnegative(s2);
  return 2.0 * std::abs(sigma_prime(params, s2)) * s2;
}

Mat2 a_matrix(const DiffusionParams& params, Vec2 grad) {
  if (!std::isfinite(grad.x) || !std::isfinite(grad.y)) {
    throw std::domain_error("a_matrix: gradient must be finite");
  }
  const double s2 = norm2(grad);
  const double s = sigma(params, s2);
  const double sp2 = 2.0 * sigma_prime(params, s2);
  return {s + sp2 * grad.x * grad.x, sp2 * grad.x * grad.y,
          sp2 * grad.x * grad.y, s + sp2 * grad.y * grad.y};
}

}  // namespace gradflow
