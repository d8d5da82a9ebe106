#pragma once

#include <Eigen/Dense>

#include "tcsim/sensors.hpp"

namespace tcsim {

/// Fused gap estimate: state [gap, relative velocity] where
/// rel_vel = v_preceding - v_host (the rate of change of the gap).
struct FusedEstimate {
  double gap = 0.0;      // m
  double rel_vel = 0.0;  // m/s
  Eigen::Matrix2d cov = Eigen::Matrix2d::Identity();
};

/// Measurement and process-noise configuration of the gap filter, plus the
/// two sensors it fuses.
struct PerceptionParams {
  SensorSpec radar{SensorKind::radar, 0.0, false, 0.0};
  SensorSpec lidar{SensorKind::lidar, 0.0, true, 0.0};
  double radar_meas_var = 0.25;  // m^2, filter's assumed radar variance
  double lidar_meas_var = 0.04;  // m^2, filter's assumed lidar variance
  Eigen::Matrix2d process_noise =
      (Eigen::Matrix2d() << 0.01, 0.0, 0.0, 0.1).finished();
  Eigen::Matrix2d initial_cov =
      (Eigen::Matrix2d() << 10.0, 0.0, 0.0, 10.0).finished();
};

/// Time update under a constant-relative-velocity model; the host's own
/// acceleration enters as a known input on rel_vel, the preceding vehicle's
/// acceleration is absorbed by the process noise. Throws FilterError if the
/// propagated covariance loses positive-definiteness.
FusedEstimate ekf_predict(const FusedEstimate& est, double host_accel,
                          double dt, const Eigen::Matrix2d& process_noise);

/// Scalar measurement update of the gap component (Joseph form). `meas_var`
/// must be positive. Non-finite measurements must be rejected by the caller;
/// this function assumes a finite value.
FusedEstimate ekf_update(const FusedEstimate& est, double measured_gap,
                         double meas_var);

struct PerceiveOutcome {
  FusedEstimate fused;
  SensorReading radar;
  SensorReading lidar;
  bool radar_rejected = false;
  bool lidar_rejected = false;
};

/// One perception cycle: sample both sensors against the true gap, run one
/// predict and the two sequential measurement updates (radar first). A
/// non-finite reading is rejected and leaves the estimate untouched.
PerceiveOutcome perceive(int step, double true_gap, double host_accel,
                         double dt, const PerceptionParams& params,
                         const FogProfile& fog, const FusedEstimate& prior,
                         NoiseStream& radar_stream, NoiseStream& lidar_stream);

}  // namespace tcsim
