#include "tcsim/ekf.hpp"

#include <cmath>

#include "tcsim/errors.hpp"

namespace tcsim {

namespace {

Eigen::Matrix2d symmetrized(const Eigen::Matrix2d& m) {
  return 0.5 * (m + m.transpose());
}

bool positive_definite(const Eigen::Matrix2d& m) {
  return m(0, 0) > 0.0 && m.determinant() > 0.0;
}

}  // namespace

FusedEstimate ekf_predict(const FusedEstimate& est, double host_accel,
                          double dt, const Eigen::Matrix2d& process_noise) {
  Eigen::Matrix2d f;
  f << 1.0, dt, 0.0, 1.0;

  FusedEstimate out;
  out.gap = est.gap + dt * est.rel_vel;
  out.rel_vel = est.rel_vel - dt * host_accel;
  out.cov = symmetrized(f * est.cov * f.transpose() + process_noise);
  if (!positive_definite(out.cov)) {
    throw FilterError("ekf: covariance lost positive-definiteness in predict");
  }
  return out;
}

FusedEstimate ekf_update(const FusedEstimate& est, double measured_gap,
                         double meas_var) {
  if (!(meas_var > 0.0)) {
    throw ConfigError("ekf: measurement variance must be positive");
  }
  const double innovation = measured_gap - est.gap;
  const double s = est.cov(0, 0) + meas_var;
  const Eigen::Vector2d k{est.cov(0, 0) / s, est.cov(1, 0) / s};

  FusedEstimate out;
  out.gap = est.gap + k[0] * innovation;
  out.rel_vel = est.rel_vel + k[1] * innovation;

  // Joseph form keeps the covariance symmetric positive-definite.
  Eigen::Matrix2d ikh = Eigen::Matrix2d::Identity();
  ikh(0, 0) -= k[0];
  ikh(1, 0) -= k[1];
  out.cov = symmetrized(ikh * est.cov * ikh.transpose() +
                        meas_var * k * k.transpose());
  if (!positive_definite(out.cov)) {
    throw FilterError("ekf: covariance lost positive-definiteness in update");
  }
  return out;
}

PerceiveOutcome perceive(int step, double true_gap, double host_accel,
                         double dt, const PerceptionParams& params,
                         const FogProfile& fog, const FusedEstimate& prior,
                         NoiseStream& radar_stream, NoiseStream& lidar_stream) {
  PerceiveOutcome out;
  out.radar = sense(true_gap, params.radar, fog, step, radar_stream);
  out.lidar = sense(true_gap, params.lidar, fog, step, lidar_stream);

  FusedEstimate est =
      ekf_predict(prior, host_accel, dt, params.process_noise);
  if (std::isfinite(out.radar.distance)) {
    est = ekf_update(est, out.radar.distance, params.radar_meas_var);
  } else {
    out.radar_rejected = true;
  }
  if (std::isfinite(out.lidar.distance)) {
    est = ekf_update(est, out.lidar.distance, params.lidar_meas_var);
  } else {
    out.lidar_rejected = true;
  }
  out.fused = est;
  return out;
}

}  // namespace tcsim
