#include "cabalsim/figures.hpp"

#include <algorithm>
#include <string>
#include <vector>

#include "cabalsim/analytic.hpp"
#include "cabalsim/bridging.hpp"
#include "cabalsim/csv.hpp"
#include "cabalsim/errors.hpp"
#include "cabalsim/mle.hpp"
#include "cabalsim/sim.hpp"
#include "cabalsim/svg.hpp"

namespace cabalsim::figures {

namespace {

namespace fs = std::filesystem;

void ensure_out_dir(const RunManifest& manifest) {
  std::error_code ec;
  fs::create_directories(manifest.out_dir, ec);
  if (ec) {
    throw IoError("cannot create output directory " +
                  manifest.out_dir.string() + ": " + ec.message());
  }
}

// The percent grids match the plotted axes: every hundredth from 0.01 to 0.99.
std::vector<double> percent_grid() {
  std::vector<double> grid;
  for (int i = 1; i <= 99; ++i) grid.push_back(i / 100.0);
  return grid;
}

const std::vector<double> kFractionCurves = {0.05, 0.1, 0.15, 0.2, 0.5};
const std::vector<double> kMleMiddleFractions = {0.05, 0.1, 0.2, 0.5};
const std::vector<int> kMleMeetings = {1, 2, 5};
constexpr int kMleMaxTrueSize = 20;

CabalScenario default_mtor_scenario() {
  CabalScenario s;
  s.cabal_size = 25;
  s.meetings = 100;
  s.guards_per_client = 1;
  s.guard_pool = 2500;
  s.middle_pool = 5000;
  s.disjoint_guards = true;
  return s;
}

CaptureScenario default_capture_scenario() {
  CaptureScenario s;
  s.client_groups = {{25, 10}, {225, 2}};
  s.threshold = 3;
  s.guards_per_client = 1;
  s.guard_pool = 2500;
  s.middle_pool = 5000;
  s.disjoint_guards = false;
  return s;
}

AdversaryParams default_capture_adversary() {
  AdversaryParams a;
  a.middle_fraction = 0.25;
  a.bridge_prob = 0.0;
  a.failure_threshold = 0.5;
  return a;
}

int targeted_clients(const CaptureScenario& s) {
  // Convention for the default two-group mix: the group with the most visits
  // per window is the targeted one.
  int best = 0, visits = -1;
  for (const auto& g : s.client_groups) {
    if (g.visits_per_window > visits) {
      visits = g.visits_per_window;
      best = g.count;
    }
  }
  return best;
}

int regular_clients(const CaptureScenario& s) {
  return total_clients(s) - targeted_clients(s);
}

}  // namespace

ScenarioFile load_manifest_scenario(const RunManifest& manifest) {
  if (manifest.scenario_path.empty()) return {};
  return load_scenario_file(manifest.scenario_path);
}

void cmd_analytic(const RunManifest& manifest) {
  ensure_out_dir(manifest);

  {
    CsvWriter csv(manifest.out_dir / "min_meetings.csv",
                  "middle_fraction,cabal_size,failure_threshold,min_meetings");
    for (const int c : {5, 20, 50}) {
      for (const double T : {0.1, 0.5, 0.9}) {
        for (const double B : percent_grid()) {
          csv.row(B, c, T, analytic::min_meetings(B, c, T));
        }
      }
    }
    csv.close();
  }
  {
    CsvWriter csv(manifest.out_dir / "max_cabal.csv",
                  "middle_fraction,meetings,failure_threshold,max_cabal");
    for (const double B : {0.05, 0.1, 0.2}) {
      for (const int m : {1, 4, 8}) {
        for (const double T : percent_grid()) {
          csv.row(B, m, T, analytic::max_cabal(B, m, T));
        }
      }
    }
    csv.close();
  }
  {
    CsvWriter csv(manifest.out_dir / "identified_fraction.csv",
                  "middle_fraction,meetings,identified_fraction");
    for (const double B : kFractionCurves) {
      for (int m = 0; m <= 100; ++m) {
        csv.row(B, m, analytic::expected_identified_fraction(B, m));
      }
    }
    csv.close();
  }
}

void cmd_bridging(const RunManifest& manifest) {
  ensure_out_dir(manifest);
  CsvWriter csv(
      manifest.out_dir / "bridging_success.csv",
      "guards_per_client,bridge_prob,middle_fraction,meetings,success_probability");
  for (const int g : {1, 3}) {
    for (const double pb : {0.5, 0.95}) {
      for (const double B : {0.05, 0.1, 0.15, 0.2}) {
        for (const int m : {1, 5, 10, 20}) {
          csv.row(g, pb, B, m, bridging::multi_guard_success(g, B, pb, m));
        }
      }
    }
  }
  csv.close();
}

void cmd_mle(const RunManifest& manifest) {
  ensure_out_dir(manifest);
  CsvWriter dist(manifest.out_dir / "mle_distribution.csv",
                 "middle_fraction,meetings,true_size,mle_value,probability");
  CsvWriter err(manifest.out_dir / "mle_error.csv",
                "middle_fraction,meetings,true_size,expected_mle,expected_error,"
                "p_err_ge_1,p_err_ge_2,p_err_ge_5,p_err_ge_10");
  for (const double B : kMleMiddleFractions) {
    for (const int m : kMleMeetings) {
      for (int c = 1; c <= kMleMaxTrueSize; ++c) {
        const auto row = mle::mle_distribution(c, m, B);
        for (const auto& [value, probability] : row.mass) {
          dist.row(B, m, c, value, probability);
        }
        err.row(B, m, c, row.expected_mle, row.expected_mle - c,
                row.error_prob[0], row.error_prob[1], row.error_prob[2],
                row.error_prob[3]);
      }
    }
  }
  dist.close();
  err.close();
}

void cmd_sim_mtor(const RunManifest& manifest) {
  ensure_out_dir(manifest);
  const ScenarioFile file = load_manifest_scenario(manifest);
  const CabalScenario base = file.cabal.value_or(default_mtor_scenario());

  std::vector<sim::MtorGridPoint> grid;
  if (file.adversary) {
    // A scenario file pins a single grid point.
    grid.push_back({file.adversary->middle_fraction, file.adversary->bridge_prob,
                    base.guards_per_client});
  } else {
    for (const int k : {1, 3}) {
      for (const double B : {0.05, 0.1, 0.15, 0.2, 0.5}) {
        grid.push_back({B, 0.5, k});
      }
    }
    for (const double pb : {0.05, 0.1, 0.25, 0.5, 0.75, 0.9, 0.95}) {
      grid.push_back({0.2, pb, 3});
    }
  }

  const auto sweep = sim::run_mtor_sweep(base, grid, manifest.trials,
                                         manifest.seed, manifest.threads);

  CsvWriter csv(manifest.out_dir / "mtor_means.csv",
                "middle_fraction,bridge_prob,guards_per_client,meeting,"
                "mean_identified,stderr_identified,trials,realized_middle_fraction");
  for (const auto& curve : sweep.curves) {
    for (std::size_t m = 0; m < curve.mean_identified.size(); ++m) {
      csv.row(curve.point.middle_fraction, curve.point.bridge_prob,
              curve.point.guards_per_client, static_cast<int>(m + 1),
              curve.mean_identified[m], curve.stderr_identified[m], curve.trials,
              curve.realized_middle_fraction);
    }
  }
  csv.close();

  if (manifest.emit_svg) {
    std::vector<svg::Series> series;
    for (const auto& curve : sweep.curves) {
      svg::Series s;
      s.label = "B=" + csv_number(curve.point.middle_fraction) +
                " pb=" + csv_number(curve.point.bridge_prob) +
                " k=" + std::to_string(curve.point.guards_per_client);
      for (std::size_t m = 0; m < curve.mean_identified.size(); ++m) {
        s.x.push_back(static_cast<double>(m + 1));
        s.y.push_back(curve.mean_identified[m]);
      }
      series.push_back(std::move(s));
    }
    svg::write_line_chart(manifest.out_dir / "mtor_means.svg",
                          "Mean identified cabal members", "meeting",
                          "identified", series);
  }
}

void cmd_sim_capture(const RunManifest& manifest) {
  ensure_out_dir(manifest);
  const ScenarioFile file = load_manifest_scenario(manifest);

  std::vector<sim::CaptureGridPoint> grid;
  if (file.capture) {
    sim::CaptureGridPoint point;
    point.sweep = "scenario";
    point.label = manifest.scenario_path;
    point.scenario = *file.capture;
    point.adversary = file.adversary.value_or(default_capture_adversary());
    grid.push_back(std::move(point));
  } else {
    const CaptureScenario base = default_capture_scenario();
    const AdversaryParams adv = default_capture_adversary();
    for (int i = 1; i <= 11; ++i) {
      const double B = 0.05 * i;
      sim::CaptureGridPoint p{"middle_fraction", csv_number(B), base, adv};
      p.adversary.middle_fraction = B;
      grid.push_back(std::move(p));
    }
    for (const int threshold : {1, 2, 3, 5, 7, 10}) {
      sim::CaptureGridPoint p{"threshold", std::to_string(threshold), base, adv};
      p.scenario.threshold = threshold;
      grid.push_back(std::move(p));
    }
    for (const auto& [regular, targeted] :
         std::vector<std::pair<int, int>>{{25, 25}, {225, 25}, {475, 25},
                                          {2475, 25}, {50, 50}}) {
      sim::CaptureGridPoint p{"client_mix",
                              std::to_string(regular) + "/" +
                                  std::to_string(targeted),
                              base, adv};
      p.scenario.client_groups = {{targeted, 10}, {regular, 2}};
      grid.push_back(std::move(p));
    }
    for (const int k : {1, 2, 3, 5, 10}) {
      sim::CaptureGridPoint p{"guards_per_client", std::to_string(k), base, adv};
      p.scenario.guards_per_client = k;
      grid.push_back(std::move(p));
    }
  }

  const auto sweep = sim::run_capture_sweep(grid, manifest.trials, manifest.seed,
                                            manifest.threads);

  CsvWriter csv(manifest.out_dir / "capture_estimates.csv",
                "sweep,label,middle_fraction,threshold,guards_per_client,"
                "targeted_clients,regular_clients,trials,q1,median,q3");
  for (const auto& curve : sweep.curves) {
    csv.row(curve.point.sweep, curve.point.label,
            curve.point.adversary.middle_fraction, curve.point.scenario.threshold,
            curve.point.scenario.guards_per_client,
            targeted_clients(curve.point.scenario),
            regular_clients(curve.point.scenario), curve.trials, curve.q1,
            curve.median, curve.q3);
  }
  csv.close();

  if (manifest.dump_samples) {
    CsvWriter samples(manifest.out_dir / "capture_samples.csv",
                      "sweep,label,trial,estimate");
    for (const auto& curve : sweep.curves) {
      for (std::size_t t = 0; t < curve.estimates.size(); ++t) {
        samples.row(curve.point.sweep, curve.point.label, static_cast<int>(t),
                    curve.estimates[t]);
      }
    }
    samples.close();
  }

  if (manifest.emit_svg) {
    std::vector<svg::QuartileBox> boxes;
    for (const auto& curve : sweep.curves) {
      boxes.push_back({curve.point.sweep + "=" + curve.point.label, curve.q1,
                       curve.median, curve.q3});
    }
    svg::write_quartile_chart(manifest.out_dir / "capture_estimates.svg",
                              "Chapman estimates (quartiles)", "estimate", boxes);
  }
}

void cmd_figures(const RunManifest& manifest) {
  cmd_analytic(manifest);
  cmd_bridging(manifest);
  cmd_mle(manifest);
  cmd_sim_mtor(manifest);
  cmd_sim_capture(manifest);
}

}  // namespace cabalsim::figures
