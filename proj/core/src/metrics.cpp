#include "tcsim/metrics.hpp"

#include <algorithm>
#include <string>

#include "tcsim/errors.hpp"

namespace tcsim {

double compromised_safety(const StepRecord& record, const SafetyParams& p) {
  const double safe_dist =
      p.cs_offset + p.cs_headway * record.following.velocity;
  return std::max(0.0, safe_dist - record.gap_host_following);
}

std::optional<double> safety_improvement(
    const std::vector<StepRecord>& no_traded,
    const std::vector<StepRecord>& traded, const SafetyParams& p) {
  if (no_traded.size() != traded.size()) {
    throw ContractViolation("safety_improvement: traces are not step-aligned");
  }
  double sum = 0.0;
  int relevant = 0;
  for (std::size_t i = 0; i < no_traded.size(); ++i) {
    if (no_traded[i].step != traded[i].step) {
      throw ContractViolation("safety_improvement: traces are not step-aligned");
    }
    const double cs_no = compromised_safety(no_traded[i], p);
    if (cs_no <= p.relevance_epsilon) continue;
    const double cs_tr = compromised_safety(traded[i], p);
    sum += (cs_no - cs_tr) / cs_no;
    ++relevant;
  }
  if (relevant == 0) return std::nullopt;
  return sum / static_cast<double>(relevant);
}

std::optional<double> redundant_human_engagement(
    const std::vector<StepRecord>& traded) {
  int fog_free = 0;
  int engaged = 0;
  for (const StepRecord& rec : traded) {
    if (rec.fog) continue;
    ++fog_free;
    if (rec.lambda_h > 0.5) ++engaged;
  }
  if (fog_free == 0) return std::nullopt;
  return static_cast<double>(engaged) / static_cast<double>(fog_free);
}

MetricsReport compute_metrics(const SimulationTrace& no_traded,
                              const SimulationTrace& traded,
                              const SafetyParams& p) {
  MetricsReport report;
  report.si = safety_improvement(no_traded.records, traded.records, p);
  report.rhe = redundant_human_engagement(traded.records);

  report.cs_no_traded.reserve(no_traded.records.size());
  report.cs_traded.reserve(traded.records.size());
  for (const StepRecord& rec : no_traded.records) {
    const double cs = compromised_safety(rec, p);
    report.cs_no_traded.push_back(cs);
    if (cs > p.relevance_epsilon) ++report.relevant_steps;
  }
  for (const StepRecord& rec : traded.records) {
    report.cs_traded.push_back(compromised_safety(rec, p));
    if (rec.lambda_h > 0.5) ++report.human_active_steps;
  }
  for (std::size_t i = 1; i < traded.records.size(); ++i) {
    if (traded.records[i].lambda_a != traded.records[i - 1].lambda_a) {
      ++report.switch_count;
    }
  }
  return report;
}

std::vector<SweepRow> threshold_sweep(const ScenarioConfig& cfg,
                                      std::vector<double> thresholds,
                                      const SafetyParams& p) {
  std::sort(thresholds.begin(), thresholds.end());
  std::vector<SweepRow> rows;
  rows.reserve(thresholds.size());
  for (double threshold : thresholds) {
    if (!(threshold > 0.0 && threshold < 1.0)) {
      throw ConfigError("threshold_sweep: thresholds must lie in (0, 1), got " +
                        std::to_string(threshold));
    }
    ScenarioConfig point = cfg;
    point.arbitrator.doc_threshold = threshold;
    point.safety = p;
    const auto [no_traded, traded] = run_pair(point);
    SweepRow row;
    row.threshold = threshold;
    row.si = safety_improvement(no_traded.records, traded.records, p);
    row.rhe = redundant_human_engagement(traded.records);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace tcsim
