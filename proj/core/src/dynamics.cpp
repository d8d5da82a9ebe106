#include "tcsim/dynamics.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <limits>

#include "tcsim/errors.hpp"

namespace tcsim {

namespace {

bool all_finite(const AccModelParams& p) {
  return std::isfinite(p.time_headway) && std::isfinite(p.engine_tc) &&
         std::isfinite(p.engine_gain) && std::isfinite(p.dt) &&
         std::isfinite(p.standstill_gap);
}

}  // namespace

DiscreteModel discretize_acc_model(const AccModelParams& params) {
  if (!all_finite(params)) {
    throw ConfigError("acc model: non-finite parameter");
  }
  if (params.engine_tc <= 0.0 || params.time_headway <= 0.0 ||
      params.engine_gain <= 0.0 || params.dt <= 0.0) {
    throw ConfigError("acc model: time_headway, engine_tc, engine_gain and dt must be positive");
  }

  Eigen::Matrix3d a;
  a << 0.0, 1.0, -params.time_headway,
       0.0, 0.0, -1.0,
       0.0, 0.0, -1.0 / params.engine_tc;
  Eigen::Vector3d b{0.0, 0.0, params.engine_gain / params.engine_tc};

  // ZOH via the augmented exponential: exp([A B; 0 0] * dt) packs Ad and Bd.
  Eigen::Matrix4d aug = Eigen::Matrix4d::Zero();
  aug.topLeftCorner<3, 3>() = a * params.dt;
  aug.topRightCorner<3, 1>() = b * params.dt;
  const Eigen::Matrix4d e = aug.exp();

  DiscreteModel model;
  model.ad = e.topLeftCorner<3, 3>();
  model.bd = e.topRightCorner<3, 1>();
  model.cd = Eigen::RowVector3d{0.0, 0.0, 1.0};
  return model;
}

VehicleState step_engine_lag(const VehicleState& state, double commanded_input,
                             const AccModelParams& params,
                             const AccelLimits& limits) {
  VehicleState next;
  double accel = state.acceleration +
                 params.dt *
                     (params.engine_gain * commanded_input - state.acceleration) /
                     params.engine_tc;
  accel = std::clamp(accel, limits.min_accel, limits.max_accel);
  next.acceleration = accel;
  next.position = state.position + params.dt * state.velocity;
  next.velocity = std::max(0.0, state.velocity + params.dt * accel);
  return next;
}

VehicleState step_scripted_vehicle(const VelocityProfile& profile, int k,
                                   double dt) {
  if (k < 0) {
    throw ScenarioError("scripted vehicle: negative step index");
  }
  double t = static_cast<double>(k) * dt;
  double pos = profile.initial_position;
  double vel = profile.initial_velocity;
  double accel_now = 0.0;

  for (const ProfileSegment& seg : profile.segments) {
    const double seg_len = static_cast<double>(seg.duration_steps) * dt;
    const double tau = std::min(t, seg_len);
    // Closed-form advance inside the segment, freezing at standstill.
    double stop = (seg.accel < 0.0 && vel > 0.0) ? -vel / seg.accel
                                                 : std::numeric_limits<double>::infinity();
    if (vel <= 0.0 && seg.accel <= 0.0) stop = 0.0;
    const double run = std::min(tau, stop);
    pos += vel * run + 0.5 * seg.accel * run * run;
    if (tau >= stop) {
      vel = 0.0;
      accel_now = 0.0;
    } else {
      vel = std::max(0.0, vel + seg.accel * tau);
      accel_now = seg.accel;
    }
    if (t < seg_len) {
      VehicleState s;
      s.position = pos;
      s.velocity = vel;
      s.acceleration = (t < stop) ? accel_now : 0.0;
      return s;
    }
    t -= seg_len;
  }

  // Past the profile: constant speed.
  VehicleState s;
  s.position = pos + vel * t;
  s.velocity = vel;
  s.acceleration = 0.0;
  return s;
}

AccErrorState acc_error_state(double gap, double v_host, double v_preceding,
                              double realized_accel,
                              const AccModelParams& params) {
  AccErrorState err;
  err.gap_error =
      gap - (params.standstill_gap + params.time_headway * v_host);
  err.vel_error = v_preceding - v_host;
  err.accel = realized_accel;
  return err;
}

}  // namespace tcsim
