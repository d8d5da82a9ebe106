#include "tcsim/arbitration.hpp"

#include <cmath>

#include "tcsim/errors.hpp"

namespace tcsim {

DocWindow::DocWindow(int length) : cap_(length) {
  if (length < 1) {
    throw ConfigError("doc window: length must be >= 1");
  }
}

double DocWindow::push(double radar_distance, double lidar_distance) {
  buf_.push_back(std::abs(radar_distance - lidar_distance));
  if (static_cast<int>(buf_.size()) > cap_) {
    buf_.pop_front();
  }
  return mean();
}

double DocWindow::mean() const {
  if (buf_.empty()) return 0.0;
  double sum = 0.0;
  for (double v : buf_) sum += v;
  return sum / static_cast<double>(buf_.size());
}

double degree_of_conflict(double z, const ArbitratorConfig& cfg) {
  return 1.0 / (1.0 + std::exp(-cfg.sigmoid_scale * (z - cfg.sigmoid_center)));
}

std::pair<double, double> allocate_authority(double doc,
                                             const ArbitratorConfig& cfg) {
  const double lambda_a = (doc < cfg.doc_threshold) ? 1.0 : 0.0;
  return {lambda_a, 1.0 - lambda_a};
}

double blend_acceleration(double a_human, double a_automation, double lambda_h,
                          double lambda_a) {
  if (std::abs(lambda_h + lambda_a - 1.0) > 1e-9) {
    throw ContractViolation("blend: authority weights must sum to 1");
  }
  return lambda_h * a_human + lambda_a * a_automation;
}

}  // namespace tcsim
