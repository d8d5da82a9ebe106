#include <CLI11.hpp>

#include <cstdint>
#include <string>
#include <vector>

#include "tcsim/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{
      "Deterministic car-following simulator with sensor-conflict-based "
      "control handover between an automated cruise controller and a "
      "driver model"};

  tcsim::RunManifest manifest;
  std::string mode = "single";
  std::uint64_t seed = 0;
  bool seed_set = false;

  app.add_option("--config", manifest.config_path,
                 "Scenario JSON file (omit for the default scenario)");
  app.add_option("--mode", mode, "single | pair | sweep")
      ->check(CLI::IsMember({"single", "pair", "sweep"}));
  app.add_option("--thresholds", manifest.thresholds,
                 "Handover thresholds for sweep mode, e.g. 0.2,0.5,0.8")
      ->delimiter(',');
  app.add_option("--seed", seed, "Override the scenario RNG seed")
      ->each([&seed_set](const std::string&) { seed_set = true; });
  app.add_option("--out", manifest.out_dir, "Output directory (default: out)");
  app.add_flag("--plots", manifest.plots, "Also write SVG charts");

  CLI11_PARSE(app, argc, argv);

  if (mode == "single") manifest.mode = tcsim::RunMode::single;
  if (mode == "pair") manifest.mode = tcsim::RunMode::pair;
  if (mode == "sweep") {
    manifest.mode = tcsim::RunMode::sweep;
    if (manifest.thresholds.empty()) {
      manifest.thresholds = {0.2, 0.5, 0.8};
    }
  }
  if (seed_set) manifest.seed_override = seed;

  return tcsim::run_cli(manifest);
}
