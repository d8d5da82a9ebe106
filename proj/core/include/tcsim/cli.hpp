#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace tcsim {

enum class RunMode { single, pair, sweep };

/// One CLI invocation. `config_path` empty means "defaults".
struct RunManifest {
  std::string config_path;
  std::string out_dir = "out";
  RunMode mode = RunMode::single;
  std::vector<double> thresholds;  // sweep mode
  bool plots = false;
  std::optional<std::uint64_t> seed_override;
};

/// Exit codes of run_cli (stable contract).
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitRuntimeError = 3;
inline constexpr int kExitIoError = 4;

/// Executes one manifest: single -> trace.csv; pair -> two trace CSVs plus a
/// metrics CSV; sweep -> a threshold/SI/RHE table. With plots enabled, SVG
/// charts are emitted next to the CSVs. Partial outputs are removed when a
/// run fails. Returns one of the kExit* codes; diagnostics go to stderr.
int run_cli(const RunManifest& manifest);

}  // namespace tcsim
