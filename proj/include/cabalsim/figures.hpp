#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include "cabalsim/scenario_io.hpp"

namespace cabalsim::figures {

inline constexpr std::uint64_t kDefaultSeed = 1729;
inline constexpr int kDefaultTrials = 10000;

// One CLI invocation: which outputs to produce, where, and how.
struct RunManifest {
  std::string subcommand;
  std::string scenario_path;  // empty = built-in defaults
  std::uint64_t seed = kDefaultSeed;
  int trials = kDefaultTrials;
  std::filesystem::path out_dir = "out";
  bool emit_svg = false;
  bool dump_samples = false;  // per-trial capture estimates are large
  int threads = 0;            // 0 = hardware concurrency
};

// Each command writes its CSV files under manifest.out_dir (created if
// missing) and returns nothing; failures surface as the library error types.
// Reruns with an identical manifest produce byte-identical files.

// min_meetings.csv, max_cabal.csv, identified_fraction.csv
void cmd_analytic(const RunManifest& manifest);

// bridging_success.csv: one- and three-guard leader-identification curves.
void cmd_bridging(const RunManifest& manifest);

// mle_distribution.csv, mle_error.csv
void cmd_mle(const RunManifest& manifest);

// mtor_means.csv (+ mtor_means.svg)
void cmd_sim_mtor(const RunManifest& manifest);

// capture_estimates.csv (+ capture_samples.csv, capture_estimates.svg)
void cmd_sim_capture(const RunManifest& manifest);

// All of the above with default grids.
void cmd_figures(const RunManifest& manifest);

ScenarioFile load_manifest_scenario(const RunManifest& manifest);

}  // namespace cabalsim::figures
