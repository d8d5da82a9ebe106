#pragma once

#include <string>
#include <vector>

#include "tcsim/scenario.hpp"

namespace tcsim {

/// Static SVG charts of a finished trace. Output contains no timestamps or
/// other run-dependent noise, so identical traces produce identical files.
/// All writers throw IoError on filesystem failure.

/// Both bumper-to-bumper gaps over time.
void plot_gaps_svg(const SimulationTrace& trace, const std::string& path);

/// Control authority (lambda_a) timeline.
void plot_authority_svg(const SimulationTrace& trace, const std::string& path);

/// Conflict (DoC) timeline with the handover threshold drawn in.
void plot_doc_svg(const SimulationTrace& trace, const std::string& path);

}  // namespace tcsim
