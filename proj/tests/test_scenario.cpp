#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "tcsim/config.hpp"
#include "tcsim/scenario.hpp"

using namespace tcsim;

namespace {

ScenarioConfig ideal_sensors(ScenarioConfig cfg) {
  cfg.perception.radar.noise_std = 0.0;
  cfg.perception.radar.mount_offset = 0.0;
  cfg.perception.lidar.noise_std = 0.0;
  cfg.perception.lidar.mount_offset = 0.0;
  return cfg;
}

bool records_identical(const StepRecord& a, const StepRecord& b) {
  return a.step == b.step && a.fog == b.fog &&
         a.preceding.position == b.preceding.position &&
         a.preceding.velocity == b.preceding.velocity &&
         a.preceding.acceleration == b.preceding.acceleration &&
         a.host.position == b.host.position &&
         a.host.velocity == b.host.velocity &&
         a.host.acceleration == b.host.acceleration &&
         a.following.position == b.following.position &&
         a.following.velocity == b.following.velocity &&
         a.following.acceleration == b.following.acceleration &&
         a.radar_distance == b.radar_distance &&
         a.lidar_distance == b.lidar_distance &&
         a.fused_gap == b.fused_gap && a.fused_rel_vel == b.fused_rel_vel &&
         a.z == b.z && a.doc == b.doc && a.lambda_a == b.lambda_a &&
         a.lambda_h == b.lambda_h && a.accel_human == b.accel_human &&
         a.accel_agent == b.accel_agent &&
         a.accel_blended == b.accel_blended &&
         a.gap_preceding_host == b.gap_preceding_host &&
         a.gap_host_following == b.gap_host_following &&
         a.compromised_safety == b.compromised_safety;
}

}  // namespace

TEST_CASE("identical configs give bit-identical traces") {
  const ScenarioConfig cfg = default_config();
  const SimulationTrace a = run_scenario(cfg);
  const SimulationTrace b = run_scenario(cfg);
  REQUIRE(a.records.size() == b.records.size());
  for (std::size_t i = 0; i < a.records.size(); ++i) {
    REQUIRE(records_identical(a.records[i], b.records[i]));
  }
}

TEST_CASE("ideal sensors, no fog: equilibrium persists and automation keeps control") {
  ScenarioConfig cfg = ideal_sensors(default_config());
  cfg.fog.windows.clear();
  const SimulationTrace trace = run_scenario(cfg);
  REQUIRE(trace.records.size() == 500);

  const double gap_ph0 = trace.records.front().gap_preceding_host;
  const double gap_hf0 = trace.records.front().gap_host_following;
  for (const StepRecord& r : trace.records) {
    CHECK(std::abs(r.gap_preceding_host - gap_ph0) < 0.1);
    CHECK(std::abs(r.gap_host_following - gap_hf0) < 0.1);
    CHECK(r.lambda_a == 1.0);
    CHECK(r.z == 0.0);
    CHECK(r.doc == doctest::Approx(4.54e-5).epsilon(1e-2));
  }
}

TEST_CASE("without handover the fooled host slows down under fog") {
  ScenarioConfig cfg = default_config();
  cfg.traded_control_enabled = false;
  const SimulationTrace trace = run_scenario(cfg);
  double min_v_fog = 1e18;
  double min_gap_fog = 1e18, min_gap_pre = 1e18;
  for (const StepRecord& r : trace.records) {
    if (r.fog) {
      min_v_fog = std::min(min_v_fog, r.host.velocity);
      min_gap_fog = std::min(min_gap_fog, r.gap_host_following);
    } else if (r.step < cfg.fog.windows.front().first) {
      min_gap_pre = std::min(min_gap_pre, r.gap_host_following);
    }
  }
  CHECK(min_v_fog < 24.0);  // visibly below the 25 m/s cruise
  CHECK(min_gap_fog < min_gap_pre);
}

TEST_CASE("ideal sensors keep automation in control even at a tiny threshold") {
  ScenarioConfig cfg = ideal_sensors(default_config());
  cfg.fog.windows.clear();
  cfg.arbitrator.doc_threshold = 0.001;
  const SimulationTrace trace = run_scenario(cfg);
  for (const StepRecord& r : trace.records) {
    CHECK(r.lambda_a == 1.0);
  }
}

TEST_CASE("vehicle ordering holds at every step") {
  const SimulationTrace trace = run_scenario(default_config());
  for (const StepRecord& r : trace.records) {
    CHECK(r.preceding.position > r.host.position);
    CHECK(r.host.position > r.following.position);
    CHECK(r.host.velocity >= 0.0);
    CHECK(r.following.velocity >= 0.0);
    CHECK(r.preceding.velocity >= 0.0);
  }
}

TEST_CASE("disabled handover forces full automation authority") {
  ScenarioConfig cfg = default_config();
  cfg.traded_control_enabled = false;
  const SimulationTrace trace = run_scenario(cfg);
  for (const StepRecord& r : trace.records) {
    CHECK(r.lambda_a == 1.0);
    CHECK(r.lambda_h == 0.0);
    CHECK(r.accel_blended == r.accel_agent);
  }
}

TEST_CASE("run_pair without fog produces identical traces") {
  ScenarioConfig cfg = default_config();
  cfg.fog.windows.clear();
  const auto [no_traded, traded] = run_pair(cfg);
  REQUIRE(no_traded.records.size() == traded.records.size());
  for (std::size_t i = 0; i < traded.records.size(); ++i) {
    CHECK(no_traded.records[i].host.position == traded.records[i].host.position);
    CHECK(no_traded.records[i].accel_blended == traded.records[i].accel_blended);
    CHECK(traded.records[i].lambda_a == 1.0);
  }
}

TEST_CASE("an unreachable threshold keeps the pair identical despite fog") {
  ScenarioConfig cfg = default_config();
  // Mild fog: the conflict peaks around f(3) which is still representably
  // below a threshold of 1 - ulp; deep fog would round the sigmoid to 1.0.
  cfg.fog.bias = 2.0;
  cfg.arbitrator.doc_threshold = std::nextafter(1.0, 0.0);
  const auto [no_traded, traded] = run_pair(cfg);
  REQUIRE(no_traded.records.size() == traded.records.size());
  for (std::size_t i = 0; i < traded.records.size(); ++i) {
    CHECK(records_identical(no_traded.records[i], traded.records[i]));
  }
}

TEST_CASE("a low threshold diverges the pair no later than fog onset plus window") {
  ScenarioConfig cfg = default_config();
  cfg.arbitrator.doc_threshold = 0.2;
  const auto [no_traded, traded] = run_pair(cfg);
  REQUIRE(no_traded.records.size() == traded.records.size());
  int first_divergence = -1;
  for (std::size_t i = 0; i < traded.records.size(); ++i) {
    if (!records_identical(no_traded.records[i], traded.records[i])) {
      first_divergence = static_cast<int>(i);
      break;
    }
  }
  REQUIRE(first_divergence >= 0);
  CHECK(first_divergence <=
        cfg.fog.windows.front().first + cfg.arbitrator.window_length);
}

TEST_CASE("zero-noise handover step matches the closed-form prediction") {
  ScenarioConfig cfg = default_config();
  cfg.perception.radar.noise_std = 0.0;
  cfg.perception.lidar.noise_std = 0.0;
  const SimulationTrace trace = run_scenario(cfg);

  // Independent reconstruction: with zero noise the sensor disagreement is
  // exactly |mount offset difference + fog bias|, so the windowed mean and
  // the handover step follow from the config alone.
  const double offset_diff = cfg.perception.radar.mount_offset -
                             cfg.perception.lidar.mount_offset;
  const auto [start, end] = cfg.fog.windows.front();
  std::vector<double> window;
  int predicted = -1;
  for (int k = 0; k < cfg.steps && predicted < 0; ++k) {
    double bias = 0.0;
    if (k >= start && k < end && cfg.fog.ramp_steps > 0) {
      bias = cfg.fog.bias *
             std::min({1.0, static_cast<double>(k - start) / cfg.fog.ramp_steps,
                       static_cast<double>(end - k) / cfg.fog.ramp_steps});
    } else if (k >= start && k < end) {
      bias = cfg.fog.bias;
    }
    window.push_back(std::abs(offset_diff + bias));
    if (static_cast<int>(window.size()) > cfg.arbitrator.window_length) {
      window.erase(window.begin());
    }
    double z = 0.0;
    for (double v : window) z += v;
    z /= static_cast<double>(window.size());
    const double doc = 1.0 / (1.0 + std::exp(-cfg.arbitrator.sigmoid_scale *
                                             (z - cfg.arbitrator.sigmoid_center)));
    if (doc >= cfg.arbitrator.doc_threshold) predicted = k;
  }
  REQUIRE(predicted >= 0);

  int actual = -1;
  for (const StepRecord& r : trace.records) {
    if (r.lambda_h == 1.0) {
      actual = r.step;
      break;
    }
  }
  CHECK(actual == predicted);
}

TEST_CASE("a stopping leader with a tight initial gap ends in a recorded collision") {
  ScenarioConfig cfg = ideal_sensors(default_config());
  cfg.fog.windows.clear();
  cfg.initial_gap_preceding_host = 6.0;
  cfg.preceding.segments = {{100, -8.0}};
  const SimulationTrace trace = run_scenario(cfg);

  REQUIRE(trace.collision);
  CHECK(trace.records.size() < 500);
  bool found = false;
  for (const TraceEvent& e : trace.events) {
    if (e.kind == EventKind::collision) {
      found = true;
      CHECK(e.step == static_cast<int>(trace.records.size()));
    }
  }
  CHECK(found);
}

TEST_CASE("authority switches are logged as events") {
  const SimulationTrace trace = run_scenario(default_config());
  int switches = 0;
  for (const TraceEvent& e : trace.events) {
    if (e.kind == EventKind::authority_switch) ++switches;
  }
  int flips = 0;
  for (std::size_t i = 1; i < trace.records.size(); ++i) {
    if (trace.records[i].lambda_a != trace.records[i - 1].lambda_a) ++flips;
  }
  // The first record's authority counts against the automation default.
  if (!trace.records.empty() && trace.records.front().lambda_a != 1.0) ++flips;
  CHECK(switches == flips);
}
