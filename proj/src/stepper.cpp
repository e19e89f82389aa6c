#include "gradflow/stepper.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace gradflow {

int StepperConfig::num_steps() const {
  if (!(tau > 0.0) || !(t_end > 0.0)) {
    throw std::invalid_argument("StepperConfig: tau and t_end must be positive");
  }
  const double ratio = t_end / tau;
  const long long n = std::llround(ratio);
  if (n < 1 || std::abs(ratio - static_cast<double>(n)) > 1e-9 * std::max(1.0, ratio)) {
    throw std::invalid_argument("StepperConfig: t_end/tau = " + std::to_string(ratio) +
                                " is not a positive integer");
  }
  return static_cast<int>(n);
}

StepSolveError::StepSolveError(int step_index, SolveReport report)
    : std::runtime_error("linear solve did not converge at step " + std::to_string(step_index) +
                         " (relative residual " + std::to_string(report.final_relative_residual) +
                         " after " + std::to_string(report.iterations) + " iterations)"),
      step_index_(step_index),
      report_(report) {}

FeField initial_field(const FeSpace& space, const std::function<double(double, double)>& u0) {
  return interpolate(space, u0);
}

namespace {

// Shared machinery for step() and run(): fixed pattern, mass values
// assembled once, per-step stiffness and load reassembled in place.
class TimeLoop {
 public:
  TimeLoop(const FeSpace& space, const QuadratureRule& rule, const DiffusionParams& params,
           double rel_tol, int max_iter)
      : space_(space),
        params_(params),
        rel_tol_(rel_tol),
        max_iter_(max_iter),
        assembler_(space, rule),
        mass_(assembler_.zero_matrix()),
        system_(assembler_.zero_matrix()) {
    assembler_.fill_mass(mass_);
  }

  std::pair<FeField, SolveReport> advance(const FeField& u_prev,
                                          const std::function<double(double, double)>& g_next,
                                          double tau, int step_index) {
    if (!(tau > 0.0)) {
      throw std::invalid_argument("step: tau must be positive");
    }
    // system = M/tau + K(u_prev); both share the assembler's pattern.
    assembler_.fill_stiffness(u_prev, params_, system_);
    const double inv_tau = 1.0 / tau;
    for (std::size_t k = 0; k < system_.values.size(); ++k) {
      system_.values[k] += inv_tau * mass_.values[k];
    }
    // rhs = (M/tau) u_prev + load(g_next)
    assembler_.fill_load(g_next, rhs_);
    scratch_.assign(rhs_.size(), 0.0);
    matvec(mass_, u_prev.coeffs, scratch_);
    for (std::size_t k = 0; k < rhs_.size(); ++k) {
      rhs_[k] += inv_tau * scratch_[k];
    }

    auto [x, report] = cg_solve(system_, rhs_, u_prev.coeffs, rel_tol_, max_iter_);
    if (!report.converged) {
      throw StepSolveError(step_index, report);
    }
    FeField next(space_);
    next.coeffs = std::move(x);
    return {std::move(next), report};
  }

 private:
  const FeSpace& space_;
  DiffusionParams params_;
  double rel_tol_;
  int max_iter_;
  SystemAssembler assembler_;
  CsrMatrix mass_;
  CsrMatrix system_;
  std::vector<double> rhs_;
  std::vector<double> scratch_;
};

}  // namespace

std::pair<FeField, SolveReport> step(const FeSpace& space, const QuadratureRule& rule,
                                     const DiffusionParams& params, const FeField& u_prev,
                                     const std::function<double(double, double)>& g_next,
                                     double tau) {
  TimeLoop loop(space, rule, params, 1e-12, 10 * space.ndof());
  return loop.advance(u_prev, g_next, tau, 0);
}

Trajectory run(const FeSpace& space, const QuadratureRule& rule, const StepperConfig& config,
               const std::function<double(double, double)>& u0, const SpaceTimeFn& g) {
  const int n_steps = config.num_steps();
  TimeLoop loop(space, rule, config.params, config.cg_rel_tol,
                config.cg_max_iter_factor * space.ndof());

  Trajectory traj{.times = {0.0}, .reports = {}, .final_field = initial_field(space, u0)};
  traj.reports.reserve(static_cast<std::size_t>(n_steps));

  for (int n = 0; n < n_steps; ++n) {
    const double t_next = (n + 1) * config.tau;
    auto g_next = [&g, t_next](double x, double y) { return g(x, y, t_next); };
    auto [next, report] = loop.advance(traj.final_field, g_next, config.tau, n);
    traj.final_field = std::move(next);
    traj.reports.push_back(report);
    traj.times.push_back(t_next);
    if (config.store_every > 0 && (n + 1) % config.store_every == 0 && n + 1 < n_steps) {
      traj.snapshots.emplace_back(n + 1, traj.final_field);
    }
  }
  return traj;
}

}  // namespace gradflow
