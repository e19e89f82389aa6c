#include "gradflow/mms.hpp"

#include <cmath>

namespace gradflow {

namespace {

constexpr double kTwoPi = 2.0 * M_PI;
constexpr double kRate = 0.01;

}  // namespace

double exact_u(double x, double y, double t) {
  return std::exp(kRate * t) * std::cos(kTwoPi * x) * std::cos(kTwoPi * y) / 4.0;
}

Vec2 exact_grad_u(double x, double y, double t) {
  const double e = std::exp(kRate * t);
  const double cx = std::cos(kTwoPi * x), sx = std::sin(kTwoPi * x);
  const double cy = std::cos(kTwoPi * y), sy = std::sin(kTwoPi * y);
  const double half_pi_e = 0.5 * M_PI * e;
  return {-half_pi_e * sx * cy, -half_pi_e * cx * sy};
}

Hessian2 exact_hessian_u(double x, double y, double t) {
  const double e = std::exp(kRate * t);
  const double cx = std::cos(kTwoPi * x), sx = std::sin(kTwoPi * x);
  const double cy = std::cos(kTwoPi * y), sy = std::sin(kTwoPi * y);
  const double pi2 = M_PI * M_PI;
  Hessian2 h;
  h.xx = -pi2 * e * cx * cy;  // = -4 pi^2 u
  h.yy = h.xx;
  h.xy = pi2 * e * sx * sy;
  return h;
}

double forcing_g(const DiffusionParams& params, double x, double y, double t) {
  const double u = exact_u(x, y, t);
  const Vec2 g = exact_grad_u(x, y, t);
  const Hessian2 h = exact_hessian_u(x, y, t);
  const double s2 = norm2(g);
  const double lap = h.xx + h.yy;
  const double quad = h.xx * g.x * g.x + 2.0 * h.xy * g.x * g.y + h.yy * g.y * g.y;
  return kRate * u - sigma(params, s2) * lap - 2.0 * sigma_prime(params, s2) * quad;
}

double ManufacturedProblem::forcing_g(double x, double y, double t) const {
  return gradflow::forcing_g(params_, x, y, t);
}

}  // namespace gradflow
