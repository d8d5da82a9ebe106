#pragma once

#include "tcsim/dynamics.hpp"

namespace tcsim {

/// Intelligent Driver Model parameters. The approach speed convention is
/// closing-positive: delta_v = v_host - v_preceding.
struct IdmParams {
  double desired_velocity = 30.0;  // m/s, free-traffic target
  double time_gap = 1.1;           // s, desired time gap
  double max_accel = 1.5;          // m/s^2
  double comfort_decel = 2.0;      // m/s^2
  double exponent = 4.0;           // acceleration exponent
  double min_gap = 2.0;            // m, jam distance
};

/// Desired dynamic gap s*(v, dv) = s0 + max(0, v*T + v*dv / (2*sqrt(a*b))).
/// Always >= min_gap.
double idm_desired_gap(double v_host, double delta_v, const IdmParams& p);

/// Car-following acceleration
///   a = a_max * (1 - (v/v0)^delta - (s*/s)^2)
/// clamped to the physical envelope. `gap` must be positive; a non-positive
/// gap is a collision state and throws CollisionError.
double idm_acceleration(double v_host, double delta_v, double gap,
                        const IdmParams& p, const AccelLimits& limits = {});

/// Gap at which idm_acceleration is zero for steady following (delta_v = 0)
/// at the given speed. Used to place initial conditions near equilibrium.
double idm_equilibrium_gap(double v_host, const IdmParams& p);

}  // namespace tcsim
