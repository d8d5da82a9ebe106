#pragma once

#include <deque>
#include <utility>

namespace tcsim {

/// Sliding window over the absolute radar/lidar disagreement. The mean is
/// taken over however many samples are present until the window fills.
class DocWindow {
 public:
  explicit DocWindow(int length);

  /// Pushes |radar - lidar| and returns the updated window mean z.
  double push(double radar_distance, double lidar_distance);

  double mean() const;
  int size() const { return static_cast<int>(buf_.size()); }
  int capacity() const { return cap_; }

 private:
  std::deque<double> buf_;
  int cap_;
};

struct ArbitratorConfig {
  double doc_threshold = 0.5;  // in (0, 1)
  int window_length = 1;       // steps
  double sigmoid_scale = 10.0;
  double sigmoid_center = 1.0;
};

/// Degree of conflict: logistic map of the windowed sensor disagreement,
/// f(z) = 1 / (1 + exp(-scale * (z - center))). Strictly increasing, range
/// (0, 1); f(center) = 0.5.
double degree_of_conflict(double z, const ArbitratorConfig& cfg);

/// Authority split. The automation holds control while doc < threshold
/// (strictly); at and above the threshold the human does. Memoryless —
/// no hysteresis or dwell time.
/// Returns (lambda_automation, lambda_human); the two always sum to 1.
std::pair<double, double> allocate_authority(double doc,
                                             const ArbitratorConfig& cfg);

/// Convex combination lambda_h * a_human + lambda_a * a_automation.
/// Throws ContractViolation unless the weights sum to 1.
double blend_acceleration(double a_human, double a_automation, double lambda_h,
                          double lambda_a);

struct ArbitrationDecision {
  double z = 0.0;
  double doc = 0.0;
  double lambda_a = 1.0;
  double lambda_h = 0.0;
  double blended_accel = 0.0;
};

}  // namespace tcsim
