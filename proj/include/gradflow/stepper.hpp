#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "gradflow/assembly.hpp"
#include "gradflow/coeff.hpp"
#include "gradflow/felib.hpp"
#include "gradflow/sparsela.hpp"

namespace gradflow {

using SpaceTimeFn = std::function<double(double, double, double)>;

struct StepperConfig {
  double tau = 0.0;
  double t_end = 0.0;
  DiffusionParams params;
  double cg_rel_tol = 1e-12;
  int cg_max_iter_factor = 10;  // max_iter = factor * ndof
  int store_every = 0;          // 0: keep only the final field

  StepperConfig(double tau_, double t_end_, DiffusionParams params_)
      : tau(tau_), t_end(t_end_), params(params_) {}

  /// Number of uniform steps; throws unless t_end/tau is a positive
  /// integer (within rounding).
  int num_steps() const;
};

struct Trajectory {
  std::vector<double> times;          // t_0 .. t_N
  std::vector<SolveReport> reports;   // one per step
  FeField final_field;
  std::vector<std::pair<int, FeField>> snapshots;  // (step index, field)
};

/// Raised when the per-step conjugate-gradient solve fails to converge.
class StepSolveError : public std::runtime_error {
 public:
  StepSolveError(int step_index, SolveReport report);

  int step_index() const { return step_index_; }
  const SolveReport& report() const { return report_; }

 private:
  int step_index_;
  SolveReport report_;
};

/// U^0 = nodal interpolant of u0.
FeField initial_field(const FeSpace& space, const std::function<double(double, double)>& u0);

/// One linearized backward Euler step: solve
///   (M/tau + K(u_prev)) u_next = (M/tau) u_prev + load(g_next)
/// with the diffusion coefficient frozen at u_prev. Exactly one linear
/// solve, warm-started from u_prev.
std::pair<FeField, SolveReport> step(const FeSpace& space, const QuadratureRule& rule,
                                     const DiffusionParams& params, const FeField& u_prev,
                                     const std::function<double(double, double)>& g_next,
                                     double tau);

/// March N = t_end/tau steps from u0, sampling g at t^{n+1} each step.
Trajectory run(const FeSpace& space, const QuadratureRule& rule, const StepperConfig& config,
               const std::function<double(double, double)>& u0, const SpaceTimeFn& g);

}  // namespace gradflow
