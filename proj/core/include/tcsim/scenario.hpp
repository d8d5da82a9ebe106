#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tcsim/arbitration.hpp"
#include "tcsim/dynamics.hpp"
#include "tcsim/ekf.hpp"
#include "tcsim/idm.hpp"
#include "tcsim/mpc.hpp"
#include "tcsim/sensors.hpp"

namespace tcsim {

/// Follower-safety assessment: the dynamic safe distance behind the host is
/// cs_offset + cs_headway * v_following, and any shortfall of the actual gap
/// below it counts as compromised safety.
struct SafetyParams {
  double cs_headway = 1.5;          // s
  double cs_offset = 2.0;           // m
  double relevance_epsilon = 1e-6;  // m, threshold for "relevant" steps
};

/// Full description of one three-vehicle run. Defaults (see default config
/// in config.hpp) describe the standard fog scenario: 500 steps at 0.1 s,
/// fog over steps [190, 300), handover threshold 0.5.
struct ScenarioConfig {
  int steps = 500;
  double dt = 0.1;
  double vehicle_length = 4.5;  // m, separates center positions from gaps
  std::uint64_t rng_seed = 42;
  bool traded_control_enabled = true;

  VelocityProfile preceding;

  // Initial bumper-to-bumper gaps. Unset means "place at the spacing-policy
  // equilibrium for the initial speed".
  std::optional<double> initial_gap_preceding_host;
  std::optional<double> initial_gap_host_following;

  AccModelParams host_model;
  AccModelParams following_model;
  MpcParams host_mpc;
  MpcParams following_mpc;
  IdmParams idm;
  AccelLimits limits;

  PerceptionParams perception;
  FogProfile fog;
  ArbitratorConfig arbitrator;
  SafetyParams safety;
};

/// Everything observable at one time step. States are the states *at* the
/// step (before integration); accelerations are the commands issued at it.
struct StepRecord {
  int step = 0;
  bool fog = false;
  VehicleState preceding;
  VehicleState host;
  VehicleState following;
  double radar_distance = 0.0;
  double lidar_distance = 0.0;
  double fused_gap = 0.0;
  double fused_rel_vel = 0.0;
  double z = 0.0;
  double doc = 0.0;
  double lambda_a = 1.0;
  double lambda_h = 0.0;
  double accel_human = 0.0;    // IDM command
  double accel_agent = 0.0;    // cruise-control command (gain-scaled input)
  double accel_blended = 0.0;  // what actually drives the host
  double gap_preceding_host = 0.0;
  double gap_host_following = 0.0;
  double compromised_safety = 0.0;
};

enum class EventKind { authority_switch, collision, reading_rejected };

struct TraceEvent {
  int step = 0;
  EventKind kind = EventKind::authority_switch;
  std::string detail;
};

struct SimulationTrace {
  ScenarioConfig config;
  std::vector<StepRecord> records;
  std::vector<TraceEvent> events;
  bool collision = false;
};

/// Runs the per-step pipeline: scripted preceding vehicle, host perception
/// and fusion, conflict arbitration, both controller commands, blending,
/// and synchronous integration of host and follower. Deterministic for a
/// given config. A non-positive gap terminates the run with a collision
/// event; the colliding step is not recorded.
SimulationTrace run_scenario(const ScenarioConfig& cfg);

/// Runs the scenario twice with traded control disabled/enabled under the
/// same seed, so per-step comparisons see identical noise realizations.
std::pair<SimulationTrace, SimulationTrace> run_pair(const ScenarioConfig& cfg);

/// Bumper-to-bumper gap implied by the spacing policy at a given speed.
double policy_gap(const AccModelParams& model, double speed);

}  // namespace tcsim
