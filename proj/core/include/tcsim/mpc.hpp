#pragma once

#include <Eigen/Dense>

#include "tcsim/dynamics.hpp"

namespace tcsim {

/// Finite-horizon quadratic tracking cost over the discretized error-state
/// model, with box-bounded input.
struct MpcParams {
  int horizon = 20;              // steps
  double weight_gap_error = 1.0;
  double weight_vel_error = 0.5;
  double weight_accel = 0.1;
  double weight_input = 0.1;     // must be > 0 (keeps the QP strictly convex)
  double input_min = -6.0;       // m/s^2
  double input_max = 3.0;        // m/s^2
};

struct MpcSolution {
  double input = 0.0;   // first element of the optimal input sequence
  double cost = 0.0;    // optimal objective value
  int qp_iterations = 0;
};

/// Receding-horizon cruise controller. Minimizes
///   sum_{k=1..N} (w_dd*gap_err_k^2 + w_dv*vel_err_k^2 + w_a*accel_k^2)
///   + sum_{k=0..N-1} w_u*u_k^2
/// subject to x_{k+1} = Ad x_k + Bd u_k and u in [input_min, input_max],
/// and applies the first input. The previous solution warm-starts the next
/// solve, so an instance is cheap to step but must not be shared across
/// threads; construction is deterministic from (model, params).
class MpcController {
 public:
  MpcController(const DiscreteModel& model, const MpcParams& params);

  /// Optimal first input for the current error state.
  double solve(const AccErrorState& err);

  /// Same as solve() but also reports the optimal cost (used by tests and
  /// diagnostics).
  MpcSolution solve_detailed(const AccErrorState& err);

  const MpcParams& params() const { return params_; }

 private:
  MpcParams params_;
  Eigen::MatrixXd pred_state_;  // maps x0 to stacked predicted states
  Eigen::MatrixXd pred_input_;  // maps u to stacked predicted states
  Eigen::MatrixXd hessian_;
  Eigen::MatrixXd cost_coupling_;  // g = cost_coupling_ * x0
  Eigen::MatrixXd const_term_;     // x0' * const_term_ * x0 contribution
  Eigen::VectorXd warm_start_;
};

}  // namespace tcsim
