#include "tcsim/mpc.hpp"

#include <cmath>

#include "tcsim/box_qp.hpp"
#include "tcsim/errors.hpp"

namespace tcsim {

MpcController::MpcController(const DiscreteModel& model,
                             const MpcParams& params)
    : params_(params) {
  if (params.horizon < 1) {
    throw ConfigError("mpc: horizon must be >= 1");
  }
  if (!(params.weight_input > 0.0)) {
    throw ConfigError("mpc: weight_input must be positive");
  }
  if (!(params.input_min < params.input_max)) {
    throw ConfigError("mpc: input_min must be below input_max");
  }
  if (params.weight_gap_error < 0.0 || params.weight_vel_error < 0.0 ||
      params.weight_accel < 0.0) {
    throw ConfigError("mpc: state weights must be non-negative");
  }

  const int n = params.horizon;
  const Eigen::Matrix3d q =
      Eigen::Vector3d(params.weight_gap_error, params.weight_vel_error,
                      params.weight_accel)
          .asDiagonal();

  // Stacked prediction over the horizon: X = pred_state_ * x0 + pred_input_ * U,
  // where X holds x_1 .. x_N.
  pred_state_.resize(3 * n, 3);
  pred_input_ = Eigen::MatrixXd::Zero(3 * n, n);
  Eigen::Matrix3d a_pow = Eigen::Matrix3d::Identity();
  for (int k = 0; k < n; ++k) {
    a_pow = model.ad * a_pow;  // ad^(k+1)
    pred_state_.block<3, 3>(3 * k, 0) = a_pow;
  }
  for (int k = 0; k < n; ++k) {
    Eigen::Vector3d col = model.bd;
    for (int row = k; row < n; ++row) {
      pred_input_.block<3, 1>(3 * row, k) = col;
      col = model.ad * col;
    }
  }

  Eigen::MatrixXd q_stacked = Eigen::MatrixXd::Zero(3 * n, 3 * n);
  for (int k = 0; k < n; ++k) {
    q_stacked.block<3, 3>(3 * k, 3 * k) = q;
  }

  hessian_ = pred_input_.transpose() * q_stacked * pred_input_ +
             params.weight_input * Eigen::MatrixXd::Identity(n, n);
  cost_coupling_ = pred_input_.transpose() * q_stacked * pred_state_;
  const_term_ = pred_state_.transpose() * q_stacked * pred_state_;
  warm_start_ = Eigen::VectorXd::Zero(n);
}

MpcSolution MpcController::solve_detailed(const AccErrorState& err) {
  if (!std::isfinite(err.gap_error) || !std::isfinite(err.vel_error) ||
      !std::isfinite(err.accel)) {
    throw SolverError("mpc: non-finite error state");
  }
  const Eigen::Vector3d x0{err.gap_error, err.vel_error, err.accel};
  const Eigen::VectorXd g = cost_coupling_ * x0;

  const BoxQpResult qp = solve_box_qp(hessian_, g, params_.input_min,
                                      params_.input_max, warm_start_);

  // Shift the solution one step for the next warm start.
  const int n = params_.horizon;
  warm_start_.head(n - 1) = qp.x.tail(n - 1);
  warm_start_[n - 1] = qp.x[n - 1];

  MpcSolution sol;
  sol.input = qp.x[0];
  sol.cost = (qp.x.dot(hessian_ * qp.x) + 2.0 * g.dot(qp.x) +
              x0.dot(const_term_ * x0));
  sol.qp_iterations = qp.iterations;
  return sol;
}

double MpcController::solve(const AccErrorState& err) {
  return solve_detailed(err).input;
}

}  // namespace tcsim
