#include "tcsim/idm.hpp"

#include <algorithm>
#include <cmath>

#include "tcsim/errors.hpp"

namespace tcsim {

double idm_desired_gap(double v_host, double delta_v, const IdmParams& p) {
  const double dynamic = v_host * p.time_gap +
                         v_host * delta_v /
                             (2.0 * std::sqrt(p.max_accel * p.comfort_decel));
  return p.min_gap + std::max(0.0, dynamic);
}

double idm_acceleration(double v_host, double delta_v, double gap,
                        const IdmParams& p, const AccelLimits& limits) {
  if (!(gap > 0.0)) {
    throw CollisionError("idm: non-positive gap");
  }
  const double s_star = idm_desired_gap(v_host, delta_v, p);
  const double free_term = std::pow(v_host / p.desired_velocity, p.exponent);
  const double interaction = s_star / gap;
  const double accel =
      p.max_accel * (1.0 - free_term - interaction * interaction);
  return std::clamp(accel, limits.min_accel, limits.max_accel);
}

double idm_equilibrium_gap(double v_host, const IdmParams& p) {
  const double free_term = std::pow(v_host / p.desired_velocity, p.exponent);
  // 1 - (v/v0)^delta = (s*/s)^2 at delta_v = 0.
  return idm_desired_gap(v_host, 0.0, p) / std::sqrt(1.0 - free_term);
}

}  // namespace tcsim
