#pragma once

#include <optional>
#include <vector>

#include "tcsim/scenario.hpp"

namespace tcsim {

/// Shortfall of the host-follower gap below the dynamic safe distance,
/// max(0, cs_offset + cs_headway * v_following - gap). Never negative.
double compromised_safety(const StepRecord& record, const SafetyParams& p);

/// Mean relative reduction in compromised safety from the baseline run to
/// the traded run, over the steps where the baseline value exceeds
/// relevance_epsilon. Empty relevant set => nullopt. Not clamped below, so
/// a regression shows up as a negative value.
/// Throws ContractViolation if the traces are not step-aligned.
std::optional<double> safety_improvement(
    const std::vector<StepRecord>& no_traded,
    const std::vector<StepRecord>& traded, const SafetyParams& p);

/// Fraction of fog-free time the human model is (unnecessarily) in control:
/// count(lambda_h = 1 and no fog) / count(no fog). All-fog trace => nullopt.
std::optional<double> redundant_human_engagement(
    const std::vector<StepRecord>& traded);

/// Full pairwise report.
struct MetricsReport {
  std::optional<double> si;
  std::optional<double> rhe;
  std::vector<double> cs_no_traded;
  std::vector<double> cs_traded;
  int relevant_steps = 0;
  int switch_count = 0;       // authority changes in the traded trace
  int human_active_steps = 0; // lambda_h = 1 steps in the traded trace
};

MetricsReport compute_metrics(const SimulationTrace& no_traded,
                              const SimulationTrace& traded,
                              const SafetyParams& p);

struct SweepRow {
  double threshold = 0.0;
  std::optional<double> si;
  std::optional<double> rhe;
};

/// Runs one traded/no-traded pair per threshold (same seed throughout) and
/// reports (threshold, SI, RHE) ordered by threshold.
std::vector<SweepRow> threshold_sweep(const ScenarioConfig& cfg,
                                      std::vector<double> thresholds,
                                      const SafetyParams& p);

}  // namespace tcsim
