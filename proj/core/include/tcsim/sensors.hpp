#pragma once

#include <utility>
#include <vector>

#include "tcsim/rng.hpp"

namespace tcsim {

enum class SensorKind { radar, lidar };

/// One range sensor. `mount_offset` is a constant calibration/mounting bias
/// added to every reading; `fog_sensitive` marks sensors whose readings are
/// degraded inside fog windows (lidar yes, radar no).
struct SensorSpec {
  SensorKind kind = SensorKind::radar;
  double noise_std = 0.0;      // m, additive Gaussian
  bool fog_sensitive = false;
  double mount_offset = 0.0;   // m
};

/// Fog episodes. Inside each [start, end) window the fog-sensitive sensor
/// under-reads by up to `bias` meters; the degradation ramps linearly over
/// `ramp_steps` at both the start and the end of the window and is zero
/// outside.
struct FogProfile {
  std::vector<std::pair<int, int>> windows;  // [start, end), ordered, disjoint
  double bias = 0.0;                         // m
  int ramp_steps = 0;
};

/// True if `step` lies inside any fog window (independent of ramp shape).
bool fog_active(const FogProfile& fog, int step);

/// Range under-read applied to fog-sensitive sensors at `step`.
double fog_bias_at(const FogProfile& fog, int step);

struct SensorReading {
  int step = 0;
  SensorKind kind = SensorKind::radar;
  double distance = 0.0;  // m, clamped at zero
};

/// Measures the true gap through one sensor: adds the mount offset and the
/// Gaussian noise, subtracts the fog bias when fog-sensitive, clamps at zero.
/// Deterministic given the stream state.
SensorReading sense(double true_gap, const SensorSpec& spec,
                    const FogProfile& fog, int step, NoiseStream& stream);

}  // namespace tcsim
