#include "tcsim/sensors.hpp"

#include <algorithm>

namespace tcsim {

bool fog_active(const FogProfile& fog, int step) {
  for (const auto& [start, end] : fog.windows) {
    if (step >= start && step < end) return true;
  }
  return false;
}

double fog_bias_at(const FogProfile& fog, int step) {
  for (const auto& [start, end] : fog.windows) {
    if (step < start || step >= end) continue;
    if (fog.ramp_steps <= 0) return fog.bias;
    const double edge = static_cast<double>(std::min(step - start, end - step));
    const double factor = std::min(1.0, edge / fog.ramp_steps);
    return fog.bias * factor;
  }
  return 0.0;
}

SensorReading sense(double true_gap, const SensorSpec& spec,
                    const FogProfile& fog, int step, NoiseStream& stream) {
  double value = true_gap + spec.mount_offset + spec.noise_std * stream.normal();
  if (spec.fog_sensitive) {
    value -= fog_bias_at(fog, step);
  }
  SensorReading reading;
  reading.step = step;
  reading.kind = spec.kind;
  reading.distance = std::max(0.0, value);
  return reading;
}

}  // namespace tcsim
