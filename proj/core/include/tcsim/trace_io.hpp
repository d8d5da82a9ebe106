#pragma once

#include <string>
#include <vector>

#include "tcsim/metrics.hpp"
#include "tcsim/scenario.hpp"

namespace tcsim {

/// Writes one header row plus one row per step (plus a trailing comment line
/// if the run ended in a collision). Numbers are serialized with shortest
/// round-trip formatting, so re-reading the file reproduces the in-memory
/// values exactly. Column order is documented in docs/trace_format.md.
/// Throws IoError on filesystem failure.
void write_trace_csv(const SimulationTrace& trace, const std::string& path);

struct ParsedTrace {
  std::vector<StepRecord> records;
  bool collision = false;
};

/// Reads a trace CSV back. Throws IoError on missing file or malformed rows.
ParsedTrace read_trace_csv(const std::string& path);

/// Metrics table mirroring the threshold/SI/RHE presentation (percentages).
/// An undefined metric is written as "nan".
void write_metrics_csv(const std::vector<SweepRow>& rows,
                       const std::string& path);

}  // namespace tcsim
