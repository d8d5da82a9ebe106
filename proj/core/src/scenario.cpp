#include "tcsim/scenario.hpp"

#include <cmath>
#include <string>

#include "tcsim/errors.hpp"
#include "tcsim/metrics.hpp"
#include "tcsim/rng.hpp"

namespace tcsim {

double policy_gap(const AccModelParams& model, double speed) {
  return model.standstill_gap + model.time_headway * speed;
}

namespace {

constexpr std::uint64_t kRadarStreamTag = 1;
constexpr std::uint64_t kLidarStreamTag = 2;

}  // namespace

SimulationTrace run_scenario(const ScenarioConfig& cfg) {
  if (cfg.steps < 1) throw ConfigError("scenario: steps must be >= 1");
  if (!(cfg.dt > 0.0)) throw ConfigError("scenario: dt must be positive");

  SimulationTrace trace;
  trace.config = cfg;
  trace.records.reserve(cfg.steps);

  const double dt = cfg.dt;
  const double veh_len = cfg.vehicle_length;

  const DiscreteModel host_dm = discretize_acc_model(cfg.host_model);
  const DiscreteModel foll_dm = discretize_acc_model(cfg.following_model);
  MpcController host_ctl(host_dm, cfg.host_mpc);
  MpcController foll_ctl(foll_dm, cfg.following_mpc);

  const VehicleState preceding0 = step_scripted_vehicle(cfg.preceding, 0, dt);
  const double v0 = preceding0.velocity;
  const double gap_ph0 = cfg.initial_gap_preceding_host.value_or(
      policy_gap(cfg.host_model, v0));
  const double gap_hf0 = cfg.initial_gap_host_following.value_or(
      policy_gap(cfg.following_model, v0));
  if (!(gap_ph0 > 0.0) || !(gap_hf0 > 0.0)) {
    throw ConfigError("scenario: initial gaps must be positive");
  }

  VehicleState host{preceding0.position - gap_ph0 - veh_len, v0, 0.0};
  VehicleState following{host.position - gap_hf0 - veh_len, v0, 0.0};

  FusedEstimate est;
  est.gap = gap_ph0;
  est.rel_vel = 0.0;
  est.cov = cfg.perception.initial_cov;

  NoiseStream radar_stream(derive_stream_seed(cfg.rng_seed, kRadarStreamTag));
  NoiseStream lidar_stream(derive_stream_seed(cfg.rng_seed, kLidarStreamTag));
  DocWindow window(cfg.arbitrator.window_length);

  double prev_lambda_a = 1.0;

  for (int k = 0; k < cfg.steps; ++k) {
    const VehicleState preceding = step_scripted_vehicle(cfg.preceding, k, dt);
    const double gap_ph = preceding.position - host.position - veh_len;
    const double gap_hf = host.position - following.position - veh_len;

    if (gap_ph <= 0.0 || gap_hf <= 0.0) {
      trace.collision = true;
      trace.events.push_back(
          {k, EventKind::collision,
           gap_ph <= 0.0 ? "preceding-host gap closed"
                         : "host-following gap closed"});
      break;
    }

    const PerceiveOutcome seen =
        perceive(k, gap_ph, host.acceleration, dt, cfg.perception, cfg.fog,
                 est, radar_stream, lidar_stream);
    est = seen.fused;
    if (seen.radar_rejected) {
      trace.events.push_back({k, EventKind::reading_rejected, "radar"});
    }
    if (seen.lidar_rejected) {
      trace.events.push_back({k, EventKind::reading_rejected, "lidar"});
    }

    const double z = window.push(seen.radar.distance, seen.lidar.distance);
    const double doc = degree_of_conflict(z, cfg.arbitrator);
    double lambda_a = 1.0;
    double lambda_h = 0.0;
    if (cfg.traded_control_enabled) {
      std::tie(lambda_a, lambda_h) = allocate_authority(doc, cfg.arbitrator);
    }
    if (lambda_a != prev_lambda_a) {
      trace.events.push_back({k, EventKind::authority_switch,
                              lambda_a > 0.5 ? "human->automation"
                                             : "automation->human"});
      prev_lambda_a = lambda_a;
    }

    const AccErrorState host_err =
        acc_error_state(est.gap, host.velocity, host.velocity + est.rel_vel,
                        host.acceleration, cfg.host_model);
    const double host_input = host_ctl.solve(host_err);
    const double accel_agent = cfg.host_model.engine_gain * host_input;

    const double accel_human =
        idm_acceleration(host.velocity, host.velocity - preceding.velocity,
                         gap_ph, cfg.idm, cfg.limits);

    const double accel_blended =
        blend_acceleration(accel_human, accel_agent, lambda_h, lambda_a);

    StepRecord rec;
    rec.step = k;
    rec.fog = fog_active(cfg.fog, k);
    rec.preceding = preceding;
    rec.host = host;
    rec.following = following;
    rec.radar_distance = seen.radar.distance;
    rec.lidar_distance = seen.lidar.distance;
    rec.fused_gap = est.gap;
    rec.fused_rel_vel = est.rel_vel;
    rec.z = z;
    rec.doc = doc;
    rec.lambda_a = lambda_a;
    rec.lambda_h = lambda_h;
    rec.accel_human = accel_human;
    rec.accel_agent = accel_agent;
    rec.accel_blended = accel_blended;
    rec.gap_preceding_host = gap_ph;
    rec.gap_host_following = gap_hf;
    rec.compromised_safety = compromised_safety(rec, cfg.safety);
    trace.records.push_back(rec);

    // Follower control is computed on the same step's states as the host's,
    // then both integrate synchronously.
    const AccErrorState foll_err =
        acc_error_state(gap_hf, following.velocity, host.velocity,
                        following.acceleration, cfg.following_model);
    const double foll_input = foll_ctl.solve(foll_err);

    host = step_engine_lag(host, accel_blended / cfg.host_model.engine_gain,
                           cfg.host_model, cfg.limits);
    following =
        step_engine_lag(following, foll_input, cfg.following_model, cfg.limits);
  }

  return trace;
}

std::pair<SimulationTrace, SimulationTrace> run_pair(
    const ScenarioConfig& cfg) {
  ScenarioConfig no_traded = cfg;
  no_traded.traded_control_enabled = false;
  ScenarioConfig traded = cfg;
  traded.traded_control_enabled = true;
  return {run_scenario(no_traded), run_scenario(traded)};
}

}  // namespace tcsim
