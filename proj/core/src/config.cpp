#include "tcsim/config.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "tcsim/errors.hpp"

namespace tcsim {

namespace {

using Json = nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
  throw ConfigError("config: " + path + ": " + msg);
}

double as_number(const Json& j, const std::string& path) {
  if (!j.is_number()) fail(path, "expected a number");
  return j.get<double>();
}

int as_int(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) fail(path, "expected an integer");
  return j.get<int>();
}

std::uint64_t as_u64(const Json& j, const std::string& path) {
  if (!j.is_number_unsigned()) {
    fail(path, "expected an unsigned integer");
  }
  return j.get<std::uint64_t>();
}

bool as_bool(const Json& j, const std::string& path) {
  if (!j.is_boolean()) fail(path, "expected a boolean");
  return j.get<bool>();
}

using Handler = std::function<void(const Json&, const std::string&)>;
using FieldMap = std::vector<std::pair<std::string, Handler>>;

void apply_object(const Json& j, const std::string& path,
                  const FieldMap& fields) {
  if (!j.is_object()) fail(path, "expected an object");
  for (const auto& [key, value] : j.items()) {
    const Handler* handler = nullptr;
    for (const auto& [name, h] : fields) {
      if (name == key) {
        handler = &h;
        break;
      }
    }
    if (handler == nullptr) fail(path, "unknown key '" + key + "'");
    (*handler)(value, path + "." + key);
  }
}

FieldMap model_fields(AccModelParams& m) {
  return {
      {"time_headway", [&m](const Json& j, const std::string& p) { m.time_headway = as_number(j, p); }},
      {"engine_tc", [&m](const Json& j, const std::string& p) { m.engine_tc = as_number(j, p); }},
      {"engine_gain", [&m](const Json& j, const std::string& p) { m.engine_gain = as_number(j, p); }},
      {"standstill_gap", [&m](const Json& j, const std::string& p) { m.standstill_gap = as_number(j, p); }},
  };
}

FieldMap mpc_fields(MpcParams& m) {
  return {
      {"horizon", [&m](const Json& j, const std::string& p) { m.horizon = as_int(j, p); }},
      {"weight_gap_error", [&m](const Json& j, const std::string& p) { m.weight_gap_error = as_number(j, p); }},
      {"weight_vel_error", [&m](const Json& j, const std::string& p) { m.weight_vel_error = as_number(j, p); }},
      {"weight_accel", [&m](const Json& j, const std::string& p) { m.weight_accel = as_number(j, p); }},
      {"weight_input", [&m](const Json& j, const std::string& p) { m.weight_input = as_number(j, p); }},
      {"input_min", [&m](const Json& j, const std::string& p) { m.input_min = as_number(j, p); }},
      {"input_max", [&m](const Json& j, const std::string& p) { m.input_max = as_number(j, p); }},
  };
}

FieldMap sensor_fields(SensorSpec& s) {
  return {
      {"noise_std", [&s](const Json& j, const std::string& p) { s.noise_std = as_number(j, p); }},
      {"mount_offset", [&s](const Json& j, const std::string& p) { s.mount_offset = as_number(j, p); }},
  };
}

void apply_vehicle(const Json& j, const std::string& path, AccModelParams& model,
                   MpcParams& mpc) {
  apply_object(j, path,
               {
                   {"model",
                    [&model](const Json& v, const std::string& p) {
                      apply_object(v, p, model_fields(model));
                    }},
                   {"mpc",
                    [&mpc](const Json& v, const std::string& p) {
                      apply_object(v, p, mpc_fields(mpc));
                    }},
               });
}

void apply_root(const Json& j, ScenarioConfig& cfg) {
  const FieldMap fields = {
      {"steps", [&cfg](const Json& v, const std::string& p) { cfg.steps = as_int(v, p); }},
      {"dt", [&cfg](const Json& v, const std::string& p) { cfg.dt = as_number(v, p); }},
      {"vehicle_length", [&cfg](const Json& v, const std::string& p) { cfg.vehicle_length = as_number(v, p); }},
      {"seed", [&cfg](const Json& v, const std::string& p) { cfg.rng_seed = as_u64(v, p); }},
      {"traded_control", [&cfg](const Json& v, const std::string& p) { cfg.traded_control_enabled = as_bool(v, p); }},
      {"initial",
       [&cfg](const Json& v, const std::string& p) {
         apply_object(
             v, p,
             {
                 {"gap_preceding_host",
                  [&cfg](const Json& g, const std::string& gp) {
                    cfg.initial_gap_preceding_host =
                        g.is_null() ? std::nullopt
                                    : std::optional<double>(as_number(g, gp));
                  }},
                 {"gap_host_following",
                  [&cfg](const Json& g, const std::string& gp) {
                    cfg.initial_gap_host_following =
                        g.is_null() ? std::nullopt
                                    : std::optional<double>(as_number(g, gp));
                  }},
             });
       }},
      {"preceding",
       [&cfg](const Json& v, const std::string& p) {
         apply_object(
             v, p,
             {
                 {"initial_position",
                  [&cfg](const Json& x, const std::string& xp) {
                    cfg.preceding.initial_position = as_number(x, xp);
                  }},
                 {"initial_velocity",
                  [&cfg](const Json& x, const std::string& xp) {
                    cfg.preceding.initial_velocity = as_number(x, xp);
                  }},
                 {"segments",
                  [&cfg](const Json& x, const std::string& xp) {
                    if (!x.is_array()) fail(xp, "expected an array");
                    cfg.preceding.segments.clear();
                    int idx = 0;
                    for (const Json& seg : x) {
                      ProfileSegment s;
                      const std::string sp = xp + "[" + std::to_string(idx) + "]";
                      apply_object(
                          seg, sp,
                          {
                              {"duration_steps",
                               [&s](const Json& d, const std::string& dp) {
                                 s.duration_steps = as_int(d, dp);
                               }},
                              {"accel",
                               [&s](const Json& d, const std::string& dp) {
                                 s.accel = as_number(d, dp);
                               }},
                          });
                      cfg.preceding.segments.push_back(s);
                      ++idx;
                    }
                  }},
             });
       }},
      {"host",
       [&cfg](const Json& v, const std::string& p) {
         apply_vehicle(v, p, cfg.host_model, cfg.host_mpc);
       }},
      {"following",
       [&cfg](const Json& v, const std::string& p) {
         apply_vehicle(v, p, cfg.following_model, cfg.following_mpc);
       }},
      {"idm",
       [&cfg](const Json& v, const std::string& p) {
         IdmParams& m = cfg.idm;
         apply_object(
             v, p,
             {
                 {"desired_velocity", [&m](const Json& x, const std::string& xp) { m.desired_velocity = as_number(x, xp); }},
                 {"time_gap", [&m](const Json& x, const std::string& xp) { m.time_gap = as_number(x, xp); }},
                 {"max_accel", [&m](const Json& x, const std::string& xp) { m.max_accel = as_number(x, xp); }},
                 {"comfort_decel", [&m](const Json& x, const std::string& xp) { m.comfort_decel = as_number(x, xp); }},
                 {"exponent", [&m](const Json& x, const std::string& xp) { m.exponent = as_number(x, xp); }},
                 {"min_gap", [&m](const Json& x, const std::string& xp) { m.min_gap = as_number(x, xp); }},
             });
       }},
      {"limits",
       [&cfg](const Json& v, const std::string& p) {
         apply_object(
             v, p,
             {
                 {"accel_min", [&cfg](const Json& x, const std::string& xp) { cfg.limits.min_accel = as_number(x, xp); }},
                 {"accel_max", [&cfg](const Json& x, const std::string& xp) { cfg.limits.max_accel = as_number(x, xp); }},
             });
       }},
      {"sensors",
       [&cfg](const Json& v, const std::string& p) {
         PerceptionParams& s = cfg.perception;
         apply_object(
             v, p,
             {
                 {"radar",
                  [&s](const Json& x, const std::string& xp) {
                    apply_object(x, xp, sensor_fields(s.radar));
                  }},
                 {"lidar",
                  [&s](const Json& x, const std::string& xp) {
                    apply_object(x, xp, sensor_fields(s.lidar));
                  }},
                 {"radar_meas_var", [&s](const Json& x, const std::string& xp) { s.radar_meas_var = as_number(x, xp); }},
                 {"lidar_meas_var", [&s](const Json& x, const std::string& xp) { s.lidar_meas_var = as_number(x, xp); }},
                 {"process_noise",
                  [&s](const Json& x, const std::string& xp) {
                    if (!x.is_array() || x.size() != 2) {
                      fail(xp, "expected [gap_variance, rel_vel_variance]");
                    }
                    s.process_noise.setZero();
                    s.process_noise(0, 0) = as_number(x[0], xp + "[0]");
                    s.process_noise(1, 1) = as_number(x[1], xp + "[1]");
                  }},
                 {"initial_cov",
                  [&s](const Json& x, const std::string& xp) {
                    if (!x.is_array() || x.size() != 2) {
                      fail(xp, "expected [gap_variance, rel_vel_variance]");
                    }
                    s.initial_cov.setZero();
                    s.initial_cov(0, 0) = as_number(x[0], xp + "[0]");
                    s.initial_cov(1, 1) = as_number(x[1], xp + "[1]");
                  }},
             });
       }},
      {"fog",
       [&cfg](const Json& v, const std::string& p) {
         FogProfile& f = cfg.fog;
         apply_object(
             v, p,
             {
                 {"windows",
                  [&f](const Json& x, const std::string& xp) {
                    if (!x.is_array()) fail(xp, "expected an array of [start, end) pairs");
                    f.windows.clear();
                    int idx = 0;
                    for (const Json& w : x) {
                      const std::string wp = xp + "[" + std::to_string(idx) + "]";
                      if (!w.is_array() || w.size() != 2) {
                        fail(wp, "expected [start, end)");
                      }
                      f.windows.emplace_back(as_int(w[0], wp + "[0]"),
                                             as_int(w[1], wp + "[1]"));
                      ++idx;
                    }
                  }},
                 {"bias", [&f](const Json& x, const std::string& xp) { f.bias = as_number(x, xp); }},
                 {"ramp_steps", [&f](const Json& x, const std::string& xp) { f.ramp_steps = as_int(x, xp); }},
             });
       }},
      {"arbitrator",
       [&cfg](const Json& v, const std::string& p) {
         ArbitratorConfig& a = cfg.arbitrator;
         apply_object(
             v, p,
             {
                 {"threshold", [&a](const Json& x, const std::string& xp) { a.doc_threshold = as_number(x, xp); }},
                 {"window_length", [&a](const Json& x, const std::string& xp) { a.window_length = as_int(x, xp); }},
                 {"sigmoid_scale", [&a](const Json& x, const std::string& xp) { a.sigmoid_scale = as_number(x, xp); }},
                 {"sigmoid_center", [&a](const Json& x, const std::string& xp) { a.sigmoid_center = as_number(x, xp); }},
             });
       }},
      {"safety",
       [&cfg](const Json& v, const std::string& p) {
         SafetyParams& s = cfg.safety;
         apply_object(
             v, p,
             {
                 {"cs_headway", [&s](const Json& x, const std::string& xp) { s.cs_headway = as_number(x, xp); }},
                 {"cs_offset", [&s](const Json& x, const std::string& xp) { s.cs_offset = as_number(x, xp); }},
                 {"relevance_epsilon", [&s](const Json& x, const std::string& xp) { s.relevance_epsilon = as_number(x, xp); }},
             });
       }},
  };
  apply_object(j, "$", fields);
}

void check(bool ok, const std::string& path, const std::string& msg) {
  if (!ok) fail(path, msg);
}

void validate_model(const AccModelParams& m, double dt, const std::string& path) {
  check(std::isfinite(m.time_headway) && m.time_headway > 0.0, path + ".time_headway", "must be positive");
  check(std::isfinite(m.engine_tc) && m.engine_tc > 0.0, path + ".engine_tc", "must be positive");
  check(std::isfinite(m.engine_gain) && m.engine_gain > 0.0, path + ".engine_gain", "must be positive");
  check(std::isfinite(m.standstill_gap) && m.standstill_gap >= 0.0, path + ".standstill_gap", "must be non-negative");
  check(m.dt == dt, path, "model sampling time must match the scenario dt");
}

void validate_mpc(const MpcParams& m, const std::string& path) {
  check(m.horizon >= 1, path + ".horizon", "must be >= 1");
  check(m.weight_gap_error >= 0.0, path + ".weight_gap_error", "must be non-negative");
  check(m.weight_vel_error >= 0.0, path + ".weight_vel_error", "must be non-negative");
  check(m.weight_accel >= 0.0, path + ".weight_accel", "must be non-negative");
  check(m.weight_input > 0.0, path + ".weight_input", "must be positive");
  check(m.input_min < m.input_max, path, "input_min must be below input_max");
}

Json model_json(const AccModelParams& m) {
  return Json{{"time_headway", m.time_headway},
              {"engine_tc", m.engine_tc},
              {"engine_gain", m.engine_gain},
              {"standstill_gap", m.standstill_gap}};
}

Json mpc_json(const MpcParams& m) {
  return Json{{"horizon", m.horizon},
              {"weight_gap_error", m.weight_gap_error},
              {"weight_vel_error", m.weight_vel_error},
              {"weight_accel", m.weight_accel},
              {"weight_input", m.weight_input},
              {"input_min", m.input_min},
              {"input_max", m.input_max}};
}

Json sensor_json(const SensorSpec& s) {
  return Json{{"noise_std", s.noise_std}, {"mount_offset", s.mount_offset}};
}

}  // namespace

ScenarioConfig default_config() {
  ScenarioConfig cfg;
  cfg.steps = 500;
  cfg.dt = 0.1;
  cfg.vehicle_length = 4.5;
  cfg.rng_seed = 42;
  cfg.traded_control_enabled = true;

  cfg.preceding.initial_position = 0.0;
  cfg.preceding.initial_velocity = 25.0;

  cfg.host_model = AccModelParams{1.4, 0.5, 1.0, cfg.dt, 2.0};
  cfg.following_model = AccModelParams{1.6, 2.5, 1.0, cfg.dt, 2.0};
  cfg.host_mpc = MpcParams{20, 1.0, 0.5, 0.1, 0.1, -6.0, 3.0};
  cfg.following_mpc = MpcParams{20, 0.3, 0.2, 0.1, 0.5, -6.0, 3.0};

  cfg.idm = IdmParams{30.0, 1.1, 1.5, 2.0, 4.0, 2.0};
  cfg.limits = AccelLimits{-6.0, 3.0};

  cfg.perception.radar = SensorSpec{SensorKind::radar, 0.006, false, 0.93};
  cfg.perception.lidar = SensorSpec{SensorKind::lidar, 0.005, true, 0.0};
  cfg.perception.radar_meas_var = 0.25;
  cfg.perception.lidar_meas_var = 0.04;
  cfg.perception.process_noise = (Eigen::Matrix2d() << 0.01, 0.0, 0.0, 0.1).finished();
  cfg.perception.initial_cov = (Eigen::Matrix2d() << 10.0, 0.0, 0.0, 10.0).finished();

  cfg.fog.windows = {{190, 300}};
  cfg.fog.bias = 8.0;
  cfg.fog.ramp_steps = 45;

  cfg.arbitrator = ArbitratorConfig{0.5, 1, 10.0, 1.0};
  cfg.safety = SafetyParams{1.585, 2.0, 1e-6};
  return cfg;
}

void validate_config(const ScenarioConfig& cfg) {
  check(cfg.steps >= 1, "$.steps", "must be >= 1");
  check(std::isfinite(cfg.dt) && cfg.dt > 0.0, "$.dt", "must be positive");
  check(cfg.vehicle_length >= 0.0, "$.vehicle_length", "must be non-negative");
  check(cfg.preceding.initial_velocity >= 0.0, "$.preceding.initial_velocity", "must be non-negative");
  for (std::size_t i = 0; i < cfg.preceding.segments.size(); ++i) {
    check(cfg.preceding.segments[i].duration_steps >= 0,
          "$.preceding.segments[" + std::to_string(i) + "].duration_steps",
          "must be non-negative");
  }
  if (cfg.initial_gap_preceding_host) {
    check(*cfg.initial_gap_preceding_host > 0.0, "$.initial.gap_preceding_host", "must be positive");
  }
  if (cfg.initial_gap_host_following) {
    check(*cfg.initial_gap_host_following > 0.0, "$.initial.gap_host_following", "must be positive");
  }

  validate_model(cfg.host_model, cfg.dt, "$.host.model");
  validate_model(cfg.following_model, cfg.dt, "$.following.model");
  validate_mpc(cfg.host_mpc, "$.host.mpc");
  validate_mpc(cfg.following_mpc, "$.following.mpc");

  check(cfg.idm.desired_velocity > 0.0, "$.idm.desired_velocity", "must be positive");
  check(cfg.idm.time_gap >= 0.0, "$.idm.time_gap", "must be non-negative");
  check(cfg.idm.max_accel > 0.0, "$.idm.max_accel", "must be positive");
  check(cfg.idm.comfort_decel > 0.0, "$.idm.comfort_decel", "must be positive");
  check(cfg.idm.exponent > 0.0, "$.idm.exponent", "must be positive");
  check(cfg.idm.min_gap >= 0.0, "$.idm.min_gap", "must be non-negative");

  check(cfg.limits.min_accel < cfg.limits.max_accel, "$.limits", "accel_min must be below accel_max");

  check(cfg.perception.radar.noise_std >= 0.0, "$.sensors.radar.noise_std", "must be non-negative");
  check(cfg.perception.lidar.noise_std >= 0.0, "$.sensors.lidar.noise_std", "must be non-negative");
  check(!cfg.perception.radar.fog_sensitive, "$.sensors.radar", "radar is never fog-sensitive");
  check(cfg.perception.lidar.fog_sensitive, "$.sensors.lidar", "lidar is always fog-sensitive");
  check(cfg.perception.radar_meas_var > 0.0, "$.sensors.radar_meas_var", "must be positive");
  check(cfg.perception.lidar_meas_var > 0.0, "$.sensors.lidar_meas_var", "must be positive");
  check(cfg.perception.process_noise(0, 0) > 0.0 && cfg.perception.process_noise(1, 1) > 0.0,
        "$.sensors.process_noise", "diagonal must be positive");
  check(cfg.perception.initial_cov(0, 0) > 0.0 && cfg.perception.initial_cov(1, 1) > 0.0,
        "$.sensors.initial_cov", "diagonal must be positive");

  int prev_end = std::numeric_limits<int>::min();
  for (std::size_t i = 0; i < cfg.fog.windows.size(); ++i) {
    const auto& [start, end] = cfg.fog.windows[i];
    const std::string path = "$.fog.windows[" + std::to_string(i) + "]";
    check(start < end, path, "window start must be below its end");
    check(start >= prev_end, path, "windows must be ordered and disjoint");
    prev_end = end;
  }
  check(cfg.fog.bias >= 0.0, "$.fog.bias", "must be non-negative");
  check(cfg.fog.ramp_steps >= 0, "$.fog.ramp_steps", "must be non-negative");

  check(cfg.arbitrator.doc_threshold > 0.0 && cfg.arbitrator.doc_threshold < 1.0,
        "$.arbitrator.threshold", "must lie in (0, 1)");
  check(cfg.arbitrator.window_length >= 1, "$.arbitrator.window_length", "must be >= 1");
  check(cfg.arbitrator.sigmoid_scale > 0.0, "$.arbitrator.sigmoid_scale", "must be positive");

  check(cfg.safety.cs_headway > 0.0, "$.safety.cs_headway", "must be positive");
  check(cfg.safety.cs_offset >= 0.0, "$.safety.cs_offset", "must be non-negative");
  check(cfg.safety.relevance_epsilon > 0.0, "$.safety.relevance_epsilon", "must be positive");
}

ScenarioConfig parse_config(const std::string& json_text) {
  ScenarioConfig cfg = default_config();

  std::string trimmed = json_text;
  trimmed.erase(0, trimmed.find_first_not_of(" \t\r\n"));
  if (!trimmed.empty()) {
    Json j;
    try {
      j = Json::parse(json_text);
    } catch (const Json::parse_error& e) {
      throw ConfigError(std::string("config: invalid JSON: ") + e.what());
    }
    apply_root(j, cfg);
  }

  // The model blocks always run at the scenario sampling time.
  cfg.host_model.dt = cfg.dt;
  cfg.following_model.dt = cfg.dt;

  validate_config(cfg);
  return cfg;
}

ScenarioConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ConfigError("config: cannot open '" + path + "'");
  }
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str());
}

std::string serialize_config(const ScenarioConfig& cfg) {
  Json seg_array = Json::array();
  for (const ProfileSegment& s : cfg.preceding.segments) {
    seg_array.push_back(Json{{"duration_steps", s.duration_steps}, {"accel", s.accel}});
  }
  Json windows = Json::array();
  for (const auto& [start, end] : cfg.fog.windows) {
    windows.push_back(Json::array({start, end}));
  }

  Json j{
      {"steps", cfg.steps},
      {"dt", cfg.dt},
      {"vehicle_length", cfg.vehicle_length},
      {"seed", cfg.rng_seed},
      {"traded_control", cfg.traded_control_enabled},
      {"initial",
       {{"gap_preceding_host",
         cfg.initial_gap_preceding_host ? Json(*cfg.initial_gap_preceding_host) : Json(nullptr)},
        {"gap_host_following",
         cfg.initial_gap_host_following ? Json(*cfg.initial_gap_host_following) : Json(nullptr)}}},
      {"preceding",
       {{"initial_position", cfg.preceding.initial_position},
        {"initial_velocity", cfg.preceding.initial_velocity},
        {"segments", seg_array}}},
      {"host", {{"model", model_json(cfg.host_model)}, {"mpc", mpc_json(cfg.host_mpc)}}},
      {"following",
       {{"model", model_json(cfg.following_model)}, {"mpc", mpc_json(cfg.following_mpc)}}},
      {"idm",
       {{"desired_velocity", cfg.idm.desired_velocity},
        {"time_gap", cfg.idm.time_gap},
        {"max_accel", cfg.idm.max_accel},
        {"comfort_decel", cfg.idm.comfort_decel},
        {"exponent", cfg.idm.exponent},
        {"min_gap", cfg.idm.min_gap}}},
      {"limits", {{"accel_min", cfg.limits.min_accel}, {"accel_max", cfg.limits.max_accel}}},
      {"sensors",
       {{"radar", sensor_json(cfg.perception.radar)},
        {"lidar", sensor_json(cfg.perception.lidar)},
        {"radar_meas_var", cfg.perception.radar_meas_var},
        {"lidar_meas_var", cfg.perception.lidar_meas_var},
        {"process_noise",
         Json::array({cfg.perception.process_noise(0, 0), cfg.perception.process_noise(1, 1)})},
        {"initial_cov",
         Json::array({cfg.perception.initial_cov(0, 0), cfg.perception.initial_cov(1, 1)})}}},
      {"fog", {{"windows", windows}, {"bias", cfg.fog.bias}, {"ramp_steps", cfg.fog.ramp_steps}}},
      {"arbitrator",
       {{"threshold", cfg.arbitrator.doc_threshold},
        {"window_length", cfg.arbitrator.window_length},
        {"sigmoid_scale", cfg.arbitrator.sigmoid_scale},
        {"sigmoid_center", cfg.arbitrator.sigmoid_center}}},
      {"safety",
       {{"cs_headway", cfg.safety.cs_headway},
        {"cs_offset", cfg.safety.cs_offset},
        {"relevance_epsilon", cfg.safety.relevance_epsilon}}},
  };
  return j.dump(2) + "\n";
}

bool config_equal(const ScenarioConfig& a, const ScenarioConfig& b) {
  return serialize_config(a) == serialize_config(b);
}

}  // namespace tcsim
