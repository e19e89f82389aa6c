#pragma once

#include "gradflow/coeff.hpp"
#include "gradflow/types.hpp"

namespace gradflow {

/// Exact solution of the verification problem on the unit square:
///   u(x,y,t) = e^{0.01 t} cos(2 pi x) cos(2 pi y) / 4.
/// The cosine factors have zero normal derivative on all four sides,
/// so u is compatible with the homogeneous Neumann condition.
double exact_u(double x, double y, double t);

/// Closed-form gradient of exact_u.
Vec2 exact_grad_u(double x, double y, double t);

struct Hessian2 {
  double xx = 0.0;
  double xy = 0.0;
  double yy = 0.0;
};

Hessian2 exact_hessian_u(double x, double y, double t);

/// Manufactured problem: the forcing g that makes exact_u solve
///   u_t - div(sigma(|grad u|^2) grad u) = g
/// for the given lambda, expanded analytically as
///   g = u_t - sigma * Lap(u) - 2 sigma' * (grad u)^T H (grad u).
class ManufacturedProblem {
 public:
  explicit ManufacturedProblem(DiffusionParams params) : params_(params) {}

  const DiffusionParams& params() const { return params_; }

  double u(double x, double y, double t) const { return exact_u(x, y, t); }
  Vec2 grad_u(double x, double y, double t) const { return exact_grad_u(x, y, t); }
  double forcing_g(double x, double y, double t) const;

 private:
  DiffusionParams params_;
};

double forcing_g(const DiffusionParams& params, double x, double y, double t);

}  // namespace gradflow
