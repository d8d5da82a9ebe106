#pragma once

#include <Eigen/Dense>
#include <vector>

namespace tcsim {

/// Ground-truth longitudinal state of one vehicle. `acceleration` is the
/// realized value after engine lag, not the commanded one.
struct VehicleState {
  double position = 0.0;      // m, common longitudinal axis
  double velocity = 0.0;      // m/s, never negative
  double acceleration = 0.0;  // m/s^2
};

/// Physical acceleration envelope applied to every realized acceleration.
struct AccelLimits {
  double min_accel = -6.0;  // m/s^2
  double max_accel = 3.0;   // m/s^2
};

/// Parameters of the linear cruise-control plant model: constant-time-headway
/// spacing policy plus a first-order engine lag with steady-state gain.
struct AccModelParams {
  double time_headway = 1.4;    // s, desired headway of the spacing policy
  double engine_tc = 0.5;       // s, engine time constant
  double engine_gain = 1.0;     // steady-state gain from input to acceleration
  double dt = 0.1;              // s, sampling time
  double standstill_gap = 2.0;  // m, spacing-policy offset at zero speed
};

/// Error-state of the cruise controller. Sign conventions:
///   gap_error = gap - (standstill_gap + time_headway * v_host)  (positive
///               when the gap is larger than the policy gap)
///   vel_error = v_preceding - v_host  (positive when falling behind)
struct AccErrorState {
  double gap_error = 0.0;  // m
  double vel_error = 0.0;  // m/s
  double accel = 0.0;      // m/s^2, realized host acceleration
};

/// Zero-order-hold discretization of the error-state model.
struct DiscreteModel {
  Eigen::Matrix3d ad = Eigen::Matrix3d::Identity();
  Eigen::Vector3d bd = Eigen::Vector3d::Zero();
  Eigen::RowVector3d cd{0.0, 0.0, 1.0};
};

/// Exact ZOH discretization of the continuous error-state dynamics
///   d/dt [gap_error; vel_error; accel] = A x + B u
/// with A = [0 1 -T_hw; 0 0 -1; 0 0 -1/T_e] and B = [0; 0; K_e/T_e].
/// Throws ConfigError on invalid parameters.
DiscreteModel discretize_acc_model(const AccModelParams& params);

/// Advances one vehicle by one sampling period. The realized acceleration
/// follows a first-order lag toward engine_gain * commanded_input and is
/// saturated to the physical envelope; position and velocity integrate
/// forward-Euler with velocity clamped at zero.
VehicleState step_engine_lag(const VehicleState& state, double commanded_input,
                             const AccModelParams& params,
                             const AccelLimits& limits = {});

/// One piece of a piecewise-constant-acceleration velocity profile.
struct ProfileSegment {
  int duration_steps = 0;
  double accel = 0.0;  // m/s^2
};

/// Scripted motion of the preceding vehicle. An empty segment list means
/// constant speed for the whole horizon.
struct VelocityProfile {
  double initial_position = 0.0;
  double initial_velocity = 25.0;
  std::vector<ProfileSegment> segments;
};

/// State of the scripted vehicle at step index k (k >= 0). Velocity is
/// clamped at zero inside decelerating segments; beyond the last segment the
/// vehicle continues at the velocity it ended with.
/// Throws ScenarioError for a negative step index.
VehicleState step_scripted_vehicle(const VelocityProfile& profile, int k,
                                   double dt);

/// Error-state seen by a cruise controller given a (possibly perceived) gap
/// and velocities. `realized_accel` is copied into the third state.
AccErrorState acc_error_state(double gap, double v_host, double v_preceding,
                              double realized_accel,
                              const AccModelParams& params);

}  // namespace tcsim
