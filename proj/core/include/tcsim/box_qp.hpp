#pragma once

#include <Eigen/Dense>

namespace tcsim {

struct BoxQpResult {
  Eigen::VectorXd x;
  int iterations = 0;
};

/// Minimizes 0.5 x'Hx + g'x subject to lo <= x_i <= hi, for symmetric
/// positive-definite H, with a primal active-set method. `x0` is a warm
/// start (clamped into the box before use). Deterministic: ties are broken
/// by lowest index. Throws SolverError if the iteration cap is hit.
BoxQpResult solve_box_qp(const Eigen::MatrixXd& h, const Eigen::VectorXd& g,
                         double lo, double hi, const Eigen::VectorXd& x0);

}  // namespace tcsim
