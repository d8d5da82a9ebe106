#include "tcsim/box_qp.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "tcsim/errors.hpp"

namespace tcsim {

namespace {

enum class BoundState { free_var, at_lower, at_upper };

}  // namespace

BoxQpResult solve_box_qp(const Eigen::MatrixXd& h, const Eigen::VectorXd& g,
                         double lo, double hi, const Eigen::VectorXd& x0) {
  const int n = static_cast<int>(g.size());
  Eigen::VectorXd x = x0;
  std::vector<BoundState> state(n, BoundState::free_var);
  for (int i = 0; i < n; ++i) {
    if (x[i] <= lo) {
      x[i] = lo;
      state[i] = BoundState::at_lower;
    } else if (x[i] >= hi) {
      x[i] = hi;
      state[i] = BoundState::at_upper;
    }
  }

  const double tol = 1e-11 * std::max(1.0, g.lpNorm<Eigen::Infinity>());
  const int max_iter = 30 * n + 30;

  for (int iter = 1; iter <= max_iter; ++iter) {
    const Eigen::VectorXd grad = h * x + g;

    std::vector<int> free_idx;
    free_idx.reserve(n);
    for (int i = 0; i < n; ++i) {
      if (state[i] == BoundState::free_var) free_idx.push_back(i);
    }

    // Newton step on the free subspace.
    Eigen::VectorXd d = Eigen::VectorXd::Zero(n);
    if (!free_idx.empty()) {
      const int m = static_cast<int>(free_idx.size());
      Eigen::MatrixXd hff(m, m);
      Eigen::VectorXd gf(m);
      for (int r = 0; r < m; ++r) {
        gf[r] = grad[free_idx[r]];
        for (int c = 0; c < m; ++c) hff(r, c) = h(free_idx[r], free_idx[c]);
      }
      const Eigen::VectorXd df = hff.ldlt().solve(-gf);
      for (int r = 0; r < m; ++r) d[free_idx[r]] = df[r];
    }

    if (d.lpNorm<Eigen::Infinity>() <= tol) {
      // Stationary on the free set; check bound multipliers.
      int release = -1;
      double worst = tol;
      for (int i = 0; i < n; ++i) {
        double violation = 0.0;
        if (state[i] == BoundState::at_lower) violation = -grad[i];
        if (state[i] == BoundState::at_upper) violation = grad[i];
        if (violation > worst) {
          worst = violation;
          release = i;
        }
      }
      if (release < 0) {
        return BoxQpResult{x, iter};
      }
      state[release] = BoundState::free_var;
      continue;
    }

    // Step to the nearest blocking bound.
    double alpha = 1.0;
    int blocker = -1;
    bool blocker_upper = false;
    for (int i : free_idx) {
      if (d[i] > 0.0) {
        const double a = (hi - x[i]) / d[i];
        if (a < alpha) {
          alpha = a;
          blocker = i;
          blocker_upper = true;
        }
      } else if (d[i] < 0.0) {
        const double a = (lo - x[i]) / d[i];
        if (a < alpha) {
          alpha = a;
          blocker = i;
          blocker_upper = false;
        }
      }
    }
    x += alpha * d;
    if (blocker >= 0) {
      x[blocker] = blocker_upper ? hi : lo;
      state[blocker] =
          blocker_upper ? BoundState::at_upper : BoundState::at_lower;
    }
  }

  throw SolverError("box QP: active-set iteration cap reached (n=" +
                    std::to_string(n) + ")");
}

}  // namespace tcsim
