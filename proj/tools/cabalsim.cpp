#include <cstdio>
#include <exception>
#include <functional>
#include <string>

#include <CLI11.hpp>

#include "cabalsim/errors.hpp"
#include "cabalsim/figures.hpp"

namespace {

using cabalsim::figures::RunManifest;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitResourceCap = 2;
constexpr int kExitIo = 3;

void add_common_options(CLI::App* cmd, RunManifest& manifest) {
  cmd->add_option("--scenario", manifest.scenario_path,
                  "Scenario file (JSON; see README for the schema)");
  cmd->add_option("--seed", manifest.seed, "Master seed for simulations");
  cmd->add_option("--trials", manifest.trials, "Trials per simulation grid point")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--out", manifest.out_dir, "Output directory for CSV/SVG");
  cmd->add_option("--threads", manifest.threads,
                  "Worker threads (0 = hardware concurrency)")
      ->check(CLI::NonNegativeNumber);
  cmd->add_flag("--svg", manifest.emit_svg, "Also render SVG charts");
  cmd->add_flag("--dump-samples", manifest.dump_samples,
                "Dump per-trial capture estimates (large)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Guard-exposure, bridging, cabal-size-estimation and capture-recapture "
      "analysis for onion-routing targeting adversaries"};
  app.require_subcommand(1);

  RunManifest manifest;
  std::function<void(const RunManifest&)> action;

  struct Subcommand {
    const char* name;
    const char* description;
    void (*run)(const RunManifest&);
  };
  const Subcommand subcommands[] = {
      {"analytic", "Closed-form guard-exposure grids (CSV)",
       &cabalsim::figures::cmd_analytic},
      {"bridging", "Leader-identification probabilities (CSV)",
       &cabalsim::figures::cmd_bridging},
      {"mle", "Cabal-size MLE distributions and error curves (CSV)",
       &cabalsim::figures::cmd_mle},
      {"sim-mtor", "Seeded meeting/bridging Monte Carlo sweep (CSV)",
       &cabalsim::figures::cmd_sim_mtor},
      {"sim-capture", "Seeded capture-recapture Monte Carlo sweep (CSV)",
       &cabalsim::figures::cmd_sim_capture},
      {"figures", "All of the above with default grids",
       &cabalsim::figures::cmd_figures},
  };
  for (const auto& sub : subcommands) {
    CLI::App* cmd = app.add_subcommand(sub.name, sub.description);
    add_common_options(cmd, manifest);
    cmd->callback([&action, &sub] { action = sub.run; });
    cmd->parse_complete_callback([&manifest, &sub] { manifest.subcommand = sub.name; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitValidation;
  }

  try {
    action(manifest);
  } catch (const cabalsim::ResourceCapError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitResourceCap;
  } catch (const cabalsim::IoError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitIo;
  } catch (const cabalsim::ValidationError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitValidation;
  } catch (const cabalsim::DomainError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitValidation;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitIo;
  }
  return kExitOk;
}
