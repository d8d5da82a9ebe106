#include "tcsim/cli.hpp"

#include <filesystem>
#include <iostream>
#include <vector>

#include "tcsim/config.hpp"
#include "tcsim/errors.hpp"
#include "tcsim/metrics.hpp"
#include "tcsim/plot.hpp"
#include "tcsim/trace_io.hpp"

namespace tcsim {

namespace fs = std::filesystem;

namespace {

class OutputSet {
 public:
  explicit OutputSet(fs::path dir) : dir_(std::move(dir)) {}

  std::string path(const std::string& name) {
    const fs::path p = dir_ / name;
    written_.push_back(p);
    return p.string();
  }

  void keep() { written_.clear(); }

  // Removes whatever was written by a failed run.
  ~OutputSet() {
    for (const fs::path& p : written_) {
      std::error_code ec;
      fs::remove(p, ec);
    }
  }

 private:
  fs::path dir_;
  std::vector<fs::path> written_;
};

void emit_trace_plots(const SimulationTrace& trace, OutputSet& out,
                      const std::string& suffix) {
  plot_gaps_svg(trace, out.path("gaps" + suffix + ".svg"));
  plot_authority_svg(trace, out.path("authority" + suffix + ".svg"));
  plot_doc_svg(trace, out.path("doc" + suffix + ".svg"));
}

void run_manifest(const RunManifest& manifest) {
  ScenarioConfig cfg = manifest.config_path.empty()
                           ? default_config()
                           : load_config(manifest.config_path);
  if (manifest.seed_override) {
    cfg.rng_seed = *manifest.seed_override;
  }

  std::error_code ec;
  fs::create_directories(manifest.out_dir, ec);
  if (ec) {
    throw IoError("cli: cannot create output directory '" + manifest.out_dir +
                  "': " + ec.message());
  }
  OutputSet out{fs::path(manifest.out_dir)};

  switch (manifest.mode) {
    case RunMode::single: {
      const SimulationTrace trace = run_scenario(cfg);
      write_trace_csv(trace, out.path("trace.csv"));
      if (manifest.plots) emit_trace_plots(trace, out, "");
      break;
    }
    case RunMode::pair: {
      const auto [no_traded, traded] = run_pair(cfg);
      write_trace_csv(no_traded, out.path("trace_no_traded.csv"));
      write_trace_csv(traded, out.path("trace_traded.csv"));
      SweepRow row;
      row.threshold = cfg.arbitrator.doc_threshold;
      row.si = safety_improvement(no_traded.records, traded.records, cfg.safety);
      row.rhe = redundant_human_engagement(traded.records);
      write_metrics_csv({row}, out.path("metrics.csv"));
      if (manifest.plots) {
        emit_trace_plots(no_traded, out, "_no_traded");
        emit_trace_plots(traded, out, "_traded");
      }
      break;
    }
    case RunMode::sweep: {
      if (manifest.thresholds.empty()) {
        throw ConfigError("cli: sweep mode needs at least one threshold");
      }
      const std::vector<SweepRow> rows =
          threshold_sweep(cfg, manifest.thresholds, cfg.safety);
      write_metrics_csv(rows, out.path("sweep.csv"));
      break;
    }
  }
  out.keep();
}

}  // namespace

int run_cli(const RunManifest& manifest) {
  try {
    run_manifest(manifest);
    return kExitOk;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIoError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntimeError;
  }
}

}  // namespace tcsim
