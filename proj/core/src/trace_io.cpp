#include "tcsim/trace_io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <system_error>
#include <vector>

#include "tcsim/errors.hpp"

namespace tcsim {

namespace {

constexpr const char* kHeader =
    "step,fog,pos_preceding,vel_preceding,acc_preceding,"
    "pos_host,vel_host,acc_host,pos_following,vel_following,acc_following,"
    "radar,lidar,fused_gap,fused_rel_vel,z,doc,lambda_a,lambda_h,"
    "accel_human,accel_agent,accel_blended,"
    "gap_preceding_host,gap_host_following,compromised_safety";

std::string format_double(double v) {
  char buf[40];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc()) throw IoError("trace: failed to format a number");
  return std::string(buf, ptr);
}

double parse_double(const std::string& field, const std::string& context) {
  double v = 0.0;
  const char* begin = field.data();
  const char* end = begin + field.size();
  const auto [ptr, ec] = std::from_chars(begin, end, v);
  if (ec != std::errc() || ptr != end) {
    throw IoError("trace: bad numeric field '" + field + "' in " + context);
  }
  return v;
}

std::vector<std::string> split_csv_row(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

}  // namespace

void write_trace_csv(const SimulationTrace& trace, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("trace: cannot open '" + path + "' for writing");

  out << kHeader << "\n";
  for (const StepRecord& r : trace.records) {
    out << r.step << ',' << (r.fog ? 1 : 0) << ','
        << format_double(r.preceding.position) << ','
        << format_double(r.preceding.velocity) << ','
        << format_double(r.preceding.acceleration) << ','
        << format_double(r.host.position) << ','
        << format_double(r.host.velocity) << ','
        << format_double(r.host.acceleration) << ','
        << format_double(r.following.position) << ','
        << format_double(r.following.velocity) << ','
        << format_double(r.following.acceleration) << ','
        << format_double(r.radar_distance) << ','
        << format_double(r.lidar_distance) << ','
        << format_double(r.fused_gap) << ','
        << format_double(r.fused_rel_vel) << ','
        << format_double(r.z) << ','
        << format_double(r.doc) << ','
        << format_double(r.lambda_a) << ','
        << format_double(r.lambda_h) << ','
        << format_double(r.accel_human) << ','
        << format_double(r.accel_agent) << ','
        << format_double(r.accel_blended) << ','
        << format_double(r.gap_preceding_host) << ','
        << format_double(r.gap_host_following) << ','
        << format_double(r.compromised_safety) << "\n";
  }
  if (trace.collision) {
    int collision_step = trace.records.empty() ? 0 : trace.records.back().step + 1;
    for (const TraceEvent& e : trace.events) {
      if (e.kind == EventKind::collision) collision_step = e.step;
    }
    out << "# collision at step " << collision_step << "\n";
  }
  out.flush();
  if (!out) throw IoError("trace: write failed for '" + path + "'");
}

ParsedTrace read_trace_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("trace: cannot open '" + path + "'");

  ParsedTrace parsed;
  std::string line;
  if (!std::getline(in, line) || line != kHeader) {
    throw IoError("trace: unexpected header in '" + path + "'");
  }
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    if (line[0] == '#') {
      if (line.find("collision") != std::string::npos) parsed.collision = true;
      continue;
    }
    const std::vector<std::string> f = split_csv_row(line);
    if (f.size() != 25) {
      throw IoError("trace: expected 25 fields on line " + std::to_string(line_no));
    }
    const std::string ctx = "line " + std::to_string(line_no);
    StepRecord r;
    r.step = static_cast<int>(parse_double(f[0], ctx));
    r.fog = parse_double(f[1], ctx) != 0.0;
    r.preceding = {parse_double(f[2], ctx), parse_double(f[3], ctx), parse_double(f[4], ctx)};
    r.host = {parse_double(f[5], ctx), parse_double(f[6], ctx), parse_double(f[7], ctx)};
    r.following = {parse_double(f[8], ctx), parse_double(f[9], ctx), parse_double(f[10], ctx)};
    r.radar_distance = parse_double(f[11], ctx);
    r.lidar_distance = parse_double(f[12], ctx);
    r.fused_gap = parse_double(f[13], ctx);
    r.fused_rel_vel = parse_double(f[14], ctx);
    r.z = parse_double(f[15], ctx);
    r.doc = parse_double(f[16], ctx);
    r.lambda_a = parse_double(f[17], ctx);
    r.lambda_h = parse_double(f[18], ctx);
    r.accel_human = parse_double(f[19], ctx);
    r.accel_agent = parse_double(f[20], ctx);
    r.accel_blended = parse_double(f[21], ctx);
    r.gap_preceding_host = parse_double(f[22], ctx);
    r.gap_host_following = parse_double(f[23], ctx);
    r.compromised_safety = parse_double(f[24], ctx);
    parsed.records.push_back(r);
  }
  return parsed;
}

void write_metrics_csv(const std::vector<SweepRow>& rows,
                       const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("metrics: cannot open '" + path + "' for writing");
  out << "threshold,si_percent,rhe_percent\n";
  for (const SweepRow& row : rows) {
    out << format_double(row.threshold) << ','
        << (row.si ? format_double(*row.si * 100.0) : "nan") << ','
        << (row.rhe ? format_double(*row.rhe * 100.0) : "nan") << "\n";
  }
  out.flush();
  if (!out) throw IoError("metrics: write failed for '" + path + "'");
}

}  // namespace tcsim
