// Acceptance suite: every release-gating check in one binary, one printed
// line per criterion. Run with --write-regression to regenerate the frozen
// capture regression CSV after an intentional engine change.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "cabalsim/analytic.hpp"
#include "cabalsim/bridging.hpp"
#include "cabalsim/csv.hpp"
#include "cabalsim/figures.hpp"
#include "cabalsim/mle.hpp"
#include "cabalsim/model.hpp"
#include "cabalsim/sim.hpp"
#include "oracles.hpp"

#ifndef CABALSIM_TEST_DATA_DIR
#define CABALSIM_TEST_DATA_DIR "tests/data"
#endif

namespace {

namespace fs = std::filesystem;
using namespace cabalsim;

struct Criterion {
  int failures = 0;
  std::vector<std::string> notes;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      ++failures;
      notes.push_back(what);
    }
  }
  void note(const std::string& what) { notes.push_back(what); }
};

int g_failed_criteria = 0;

void run_criterion(int number, const std::string& name,
                   const std::function<void(Criterion&)>& body,
                   double budget_seconds) {
  Criterion c;
  const auto start = std::chrono::steady_clock::now();
  try {
    body(c);
  } catch (const std::exception& e) {
    c.require(false, std::string("exception: ") + e.what());
  }
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  c.require(elapsed < budget_seconds,
            "runtime " + csv_number(elapsed) + " s exceeds budget " +
                csv_number(budget_seconds) + " s");
  const bool pass = c.failures == 0;
  if (!pass) ++g_failed_criteria;
  std::printf("[%s] criterion %d: %s (%.2f s)\n", pass ? "PASS" : "FAIL", number,
              name.c_str(), elapsed);
  for (const auto& note : c.notes) {
    std::printf("        - %s\n", note.c_str());
  }
  std::fflush(stdout);
}

// Distribution-free confidence interval for the median at ~3 sigma, from the
// binomial distribution of the rank of the median.
struct MedianCi {
  double median = 0.0;
  double lo = 0.0;
  double hi = 0.0;
};

MedianCi median_ci(std::vector<double> samples) {
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  const double half_width = 3.0 * std::sqrt(n) / 2.0;
  const auto rank = [&](double r) {
    return samples[static_cast<std::size_t>(
        std::clamp(r, 0.0, n - 1.0))];
  };
  MedianCi ci;
  ci.median = rank(n / 2.0);
  ci.lo = rank(n / 2.0 - half_width);
  ci.hi = rank(n / 2.0 + half_width);
  return ci;
}

std::vector<double> absolute_errors(const std::vector<double>& estimates,
                                    double target) {
  std::vector<double> errors;
  errors.reserve(estimates.size());
  for (double e : estimates) errors.push_back(std::abs(e - target));
  return errors;
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return {};
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

fs::path scratch_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("cabalsim_acceptance_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

AdversaryParams adversary(double B, double pb) {
  AdversaryParams a;
  a.middle_fraction = B;
  a.bridge_prob = pb;
  a.failure_threshold = 0.5;
  return a;
}

constexpr int kTrials = 10000;
constexpr std::uint64_t kSeed = figures::kDefaultSeed;

// --- criteria ---------------------------------------------------------------

void criterion_meeting_bound(Criterion& c) {
  const int value = analytic::min_meetings(0.1, 50, 0.1);
  c.require(value == 59, "min_meetings(0.1, 50, 0.1) = " + std::to_string(value) +
                             ", want 59");
  const int scanned = oracles::min_meetings_scan(0.1, 50, 0.1);
  c.require(value == scanned,
            "scan oracle disagrees: " + std::to_string(scanned));
}

void criterion_mr_selection(Criterion& c) {
  const double four = analytic::mr_selection_probability(0.2, 4);
  const double ten = analytic::mr_selection_probability(0.2, 10);
  c.require(four > 0.5, "P(selected in 4 sessions) = " + csv_number(four) +
                            ", want > 0.5");
  c.require(ten >= 0.88 && ten <= 0.90,
            "P(selected in 10 sessions) = " + csv_number(ten) +
                ", want in [0.88, 0.90]");
}

void criterion_guard_collisions(Criterion& c) {
  const int client_counts[] = {3, 5, 10, 20, 25};
  const double printed_one[] = {0.001, 0.004, 0.018, 0.073, 0.113};
  const double printed_three[] = {0.011, 0.035, 0.150, 0.498, 0.664};
  for (int row = 0; row < 2; ++row) {
    const int guards = row == 0 ? 1 : 3;
    const double* printed = row == 0 ? printed_one : printed_three;
    for (int i = 0; i < 5; ++i) {
      const int clients = client_counts[i];
      const double exact =
          analytic::guard_collision_probability(2500, guards, clients);
      c.require(std::abs(exact - printed[i]) < 0.003,
                "cell k=" + std::to_string(guards) + " c=" +
                    std::to_string(clients) + ": formula " + csv_number(exact) +
                    " vs printed " + csv_number(printed[i]));
      const auto mc = oracles::collision_monte_carlo(
          2500, guards, clients, 1000000, kSeed + 10 * row + i);
      const double z = mc.z_score(exact);
      c.require(std::abs(z) < 3.0,
                "cell k=" + std::to_string(guards) + " c=" +
                    std::to_string(clients) + ": MC " + csv_number(mc.value) +
                    " vs formula " + csv_number(exact) + " (z=" + csv_number(z) +
                    ")");
    }
  }
}

void criterion_deduplication(Criterion& c) {
  struct PoolCase {
    int guards, middles, same_to, within_one_to, five_pct_to;
  };
  // within_one_to < 0 means the claim set has no off-by-one threshold.
  const PoolCase cases[] = {{2500, 5000, 41, 58, 182}, {800, 2000, 24, -1, 60}};
  for (const auto& pool : cases) {
    const std::string tag = std::to_string(pool.guards) + "/" +
                            std::to_string(pool.middles) + " pools";
    for (int size = 1; size <= pool.same_to; ++size) {
      const double middles =
          analytic::expected_distinct_middles(pool.middles, pool.guards, size);
      if (std::abs(middles - size) >= 0.5) {
        c.require(false, tag + ": |middles - c| >= 0.5 at c=" +
                             std::to_string(size) + " (" + csv_number(middles) +
                             ")");
        break;
      }
    }
    if (pool.within_one_to > 0) {
      for (int size = 1; size <= pool.within_one_to; ++size) {
        const double middles =
            analytic::expected_distinct_middles(pool.middles, pool.guards, size);
        if (std::abs(middles - size) >= 1.0) {
          c.require(false, tag + ": |middles - c| >= 1.0 at c=" +
                               std::to_string(size) + " (" + csv_number(middles) +
                               ")");
          break;
        }
      }
    }
    int five_pct_holds_to = 0;
    double worst_rel = 0.0;
    for (int size = 1; size <= pool.five_pct_to; ++size) {
      const double middles =
          analytic::expected_distinct_middles(pool.middles, pool.guards, size);
      const double rel = std::abs(middles - size) / size;
      worst_rel = std::max(worst_rel, rel);
      if (rel <= 0.05 && five_pct_holds_to == size - 1) five_pct_holds_to = size;
    }
    c.require(five_pct_holds_to == pool.five_pct_to,
              tag + ": relative error <= 5% holds only to c=" +
                  std::to_string(five_pct_holds_to) + ", claim is c<=" +
                  std::to_string(pool.five_pct_to) + " (worst " +
                  csv_number(worst_rel * 100) + "% in range)");
  }
}

void criterion_bridging_consistency(Criterion& c) {
  for (int i = 0; i < 100; ++i) {
    const double B = 0.01 + 0.98 * (i / 99.0);
    const double pb = 0.05 + 0.9 * ((i * 37 % 100) / 99.0);
    const int m = 1 + (i % 25);
    const double multi = bridging::multi_guard_success(1, B, pb, m);
    const double single = bridging::one_guard_success(B, pb, m);
    if (std::abs(multi - single) > 1e-12) {
      c.require(false, "one-guard reduction off by " +
                           csv_number(std::abs(multi - single)) + " at B=" +
                           csv_number(B) + " pb=" + csv_number(pb) + " m=" +
                           std::to_string(m));
      break;
    }
  }
  for (const double B : {0.05, 0.1, 0.2, 0.3}) {
    for (const double pb : {0.5, 0.95}) {
      for (const int m : {1, 5, 10, 20, 30}) {
        const double dp = bridging::multi_guard_success(3, B, pb, m);
        const double explicit_sum =
            oracles::three_guard_success_explicit(B, pb, m);
        c.require(std::abs(dp - explicit_sum) < 1e-10,
                  "three-guard mismatch at B=" + csv_number(B) + " pb=" +
                      csv_number(pb) + " m=" + std::to_string(m) + ": " +
                      csv_number(std::abs(dp - explicit_sum)));
      }
    }
  }
  const double grid_B[] = {0.05, 0.2};
  const double grid_pb[] = {0.5, 0.95};
  const int grid_g[] = {1, 2, 3};
  int point = 0;
  for (const double B : grid_B) {
    for (const double pb : grid_pb) {
      for (const int g : grid_g) {
        const int m = 12;
        const double closed = bridging::multi_guard_success(g, B, pb, m);
        const auto mc =
            oracles::bridging_monte_carlo(g, B, pb, m, 100000, kSeed + point);
        const double z = mc.z_score(closed);
        c.require(std::abs(z) < 3.0,
                  "MC point g=" + std::to_string(g) + " B=" + csv_number(B) +
                      " pb=" + csv_number(pb) + ": z=" + csv_number(z));
        ++point;
      }
    }
  }
}

void criterion_mle_engine(Criterion& c) {
  for (const double B : {0.2, 0.5}) {
    for (int m = 1; m <= 3; ++m) {
      for (int size = 1; size <= 5; ++size) {
        const auto row = mle::mle_distribution(size, m, B);
        const auto naive = oracles::mle_distribution_naive(size, m, B);
        bool equal = row.mass.size() == naive.size();
        if (equal) {
          for (const auto& [value, probability] : naive) {
            const auto it = row.mass.find(value);
            if (it == row.mass.end() ||
                std::abs(it->second - probability) > 1e-12) {
              equal = false;
              break;
            }
          }
        }
        c.require(equal, "multiset vs naive enumeration differ at c=" +
                             std::to_string(size) + " m=" + std::to_string(m) +
                             " B=" + csv_number(B));
      }
    }
  }

  for (const double B : {0.05, 0.1, 0.2, 0.5}) {
    for (int m = 1; m <= 5; ++m) {
      for (int size = 1; size <= 20; ++size) {
        const auto row = mle::mle_distribution(size, m, B);
        double total = 0.0;
        for (const auto& [value, probability] : row.mass) total += probability;
        if (std::abs(total - 1.0) > 1e-9) {
          c.require(false, "mass sum " + csv_number(total) + " at c=" +
                               std::to_string(size) + " m=" + std::to_string(m) +
                               " B=" + csv_number(B));
        }
      }
    }
  }

  const int ratio_case = mle::mle(ObservationVector{{2}}, 0.2);
  c.require(ratio_case == 9,
            "mle(x=(2), B=0.2) = " + std::to_string(ratio_case) + ", want 9");

  // Error spread: P(|mle - c| >= 5), the scale the error-probability curves
  // use, must be strictly smaller at (m=5, B=0.2) than at (m=1, B=0.05).
  for (int size = 1; size <= 20; ++size) {
    const auto tight = mle::mle_distribution(size, 5, 0.2);
    const auto loose = mle::mle_distribution(size, 1, 0.05);
    c.require(tight.error_prob[2] < loose.error_prob[2],
              "P(|err|>=5) not smaller at c=" + std::to_string(size) + ": " +
                  csv_number(tight.error_prob[2]) + " vs " +
                  csv_number(loose.error_prob[2]));
  }

  figures::RunManifest manifest;
  manifest.out_dir = scratch_dir("mle_csv");
  figures::cmd_mle(manifest);
  c.require(fs::file_size(manifest.out_dir / "mle_distribution.csv") > 0,
            "mle_distribution.csv missing or empty");
  c.require(fs::file_size(manifest.out_dir / "mle_error.csv") > 0,
            "mle_error.csv missing or empty");
}

void criterion_mtor_simulation(Criterion& c) {
  CabalScenario scenario;
  scenario.cabal_size = 25;
  scenario.guards_per_client = 1;
  scenario.meetings = 1;

  // Full compromise, certain bridging: everyone identified at meeting 1.
  {
    int bad_trials = 0;
    for (int t = 0; t < kTrials; ++t) {
      SeededRng rng(kSeed, t);
      const auto r = sim::run_mtor_trial(scenario, adversary(1.0, 1.0), rng);
      if (r.identified_per_meeting[0] != 25) ++bad_trials;
    }
    c.require(bad_trials == 0, std::to_string(bad_trials) + " of " +
                                   std::to_string(kTrials) +
                                   " trials missed a member at meeting 1");
  }

  // Certain bridging, one guard: the mean identified fraction must track the
  // closed-form exposure at every probed meeting count.
  scenario.meetings = 50;
  {
    const std::vector<sim::MtorGridPoint> grid = {{0.05, 1.0, 1}, {0.2, 1.0, 1}};
    const auto sweep = sim::run_mtor_sweep(scenario, grid, kTrials, kSeed);
    for (const auto& curve : sweep.curves) {
      for (const int m : {1, 10, 50}) {
        const double mean = curve.mean_identified[m - 1] / 25.0;
        const double se = curve.stderr_identified[m - 1] / 25.0;
        const double closed = analytic::expected_identified_fraction(
            curve.point.middle_fraction, m);
        const double z = se > 0 ? (mean - closed) / se : 0.0;
        c.require(std::abs(z) < 3.0,
                  "closed-form mismatch at B=" +
                      csv_number(curve.point.middle_fraction) + " m=" +
                      std::to_string(m) + ": sim " + csv_number(mean) + " vs " +
                      csv_number(closed) + " (z=" + csv_number(z) + ")");
      }
    }
  }

  // Curve ordering: higher B and higher p_b dominate at every meeting index,
  // separated by at least 3 combined standard errors.
  const auto dominates = [&](const sim::MtorCurve& hi, const sim::MtorCurve& lo,
                             const std::string& what) {
    for (std::size_t m = 0; m < hi.mean_identified.size(); ++m) {
      const double gap = hi.mean_identified[m] - lo.mean_identified[m];
      const double se = std::sqrt(hi.stderr_identified[m] * hi.stderr_identified[m] +
                                  lo.stderr_identified[m] * lo.stderr_identified[m]);
      if (gap <= 3.0 * se) {
        c.require(false, what + " not separated at meeting " +
                             std::to_string(m + 1) + ": gap " + csv_number(gap) +
                             ", 3se " + csv_number(3.0 * se));
        return;
      }
    }
  };
  {
    const std::vector<sim::MtorGridPoint> grid = {{0.05, 0.5, 1}, {0.5, 0.5, 1}};
    const auto sweep = sim::run_mtor_sweep(scenario, grid, kTrials, kSeed + 1);
    dominates(sweep.curves[1], sweep.curves[0], "B=0.5 over B=0.05");
  }
  {
    const std::vector<sim::MtorGridPoint> grid = {{0.2, 0.05, 3}, {0.2, 0.95, 3}};
    const auto sweep = sim::run_mtor_sweep(scenario, grid, kTrials, kSeed + 2);
    dominates(sweep.curves[1], sweep.curves[0], "pb=0.95 over pb=0.05");
  }
}

bool g_write_regression = false;

void criterion_capture_recapture(Criterion& c) {
  using analytic::chapman_estimate;
  c.require(chapman_estimate(10, 10, 10) == 10.0, "chapman(10,10,10) != 10");
  c.require(chapman_estimate(4, 4, 0) == 24.0, "chapman(4,4,0) != 24");
  c.require(std::abs(chapman_estimate(10, 8, 4) - 18.8) < 1e-12,
            "chapman(10,8,4) != 18.8");

  CaptureScenario base;
  base.client_groups = {{25, 10}, {225, 2}};
  base.threshold = 3;
  base.guards_per_client = 1;
  const AdversaryParams adv = adversary(0.25, 0.0);
  const double target = 25.0;

  std::vector<sim::CaptureGridPoint> grid;
  grid.push_back({"middle_fraction", "0.05", base, adversary(0.05, 0.0)});
  grid.push_back({"middle_fraction", "0.5", base, adversary(0.5, 0.0)});
  for (const int threshold : {1, 2, 3, 5, 7, 10}) {
    sim::CaptureGridPoint p{"threshold", std::to_string(threshold), base, adv};
    p.scenario.threshold = threshold;
    grid.push_back(std::move(p));
  }
  for (const int k : {1, 10}) {
    sim::CaptureGridPoint p{"guards", std::to_string(k), base, adv};
    p.scenario.guards_per_client = k;
    grid.push_back(std::move(p));
  }
  {
    sim::CaptureGridPoint p{"mix", "2475/25", base, adv};
    p.scenario.client_groups = {{25, 10}, {2475, 2}};
    grid.push_back(std::move(p));
  }
  const auto sweep = sim::run_capture_sweep(grid, kTrials, kSeed);

  const auto err_ci = [&](std::size_t index) {
    return median_ci(absolute_errors(sweep.curves[index].estimates, target));
  };

  // Accuracy increases with B.
  const MedianCi low_b = err_ci(0), high_b = err_ci(1);
  c.require(high_b.hi < low_b.lo,
            "median |err| at B=0.5 (" + csv_number(high_b.median) +
                ") not below B=0.05 (" + csv_number(low_b.median) + ")");

  // Threshold 3 beats the alternatives under the default mix.
  const int threshold_values[] = {1, 2, 3, 5, 7, 10};
  const std::size_t threshold_base = 2;
  const MedianCi best = err_ci(threshold_base + 2);  // threshold 3
  for (std::size_t i = 0; i < 6; ++i) {
    if (threshold_values[i] == 3) continue;
    const MedianCi other = err_ci(threshold_base + i);
    c.require(best.hi < other.lo,
              "threshold 3 (med " + csv_number(best.median) +
                  ") not separated below threshold " +
                  std::to_string(threshold_values[i]) + " (med " +
                  csv_number(other.median) + ")");
  }

  // More guards per client degrade the estimate.
  const MedianCi one_guard = err_ci(8), ten_guards = err_ci(9);
  c.require(one_guard.hi < ten_guards.lo,
            "median |err| at k=10 (" + csv_number(ten_guards.median) +
                ") not above k=1 (" + csv_number(one_guard.median) + ")");

  // A 1%-targeted mix blows the estimate up by a large factor (the pinned
  // regression run shows ~12x; gate at 4x).
  const auto mix_estimates = sweep.curves[10].estimates;
  MedianCi mix = median_ci(mix_estimates);
  c.require(mix.median > 4.0 * target,
            "2475/25 median estimate " + csv_number(mix.median) +
                " not above 4x targeted population");
  c.note("2475/25 mix median estimate: " + csv_number(mix.median));

  // Frozen default run.
  const fs::path regression =
      fs::path(CABALSIM_TEST_DATA_DIR) / "capture_default_regression.csv";
  std::vector<sim::CaptureGridPoint> default_grid;
  default_grid.push_back({"default", "default", base, adv});
  const auto default_sweep =
      sim::run_capture_sweep(default_grid, kTrials, kSeed);
  std::ostringstream current;
  current << "trial,estimate\n";
  for (std::size_t t = 0; t < default_sweep.curves[0].estimates.size(); ++t) {
    current << t << ',' << csv_number(default_sweep.curves[0].estimates[t])
            << '\n';
  }
  if (g_write_regression) {
    fs::create_directories(regression.parent_path());
    std::ofstream out(regression, std::ios::binary);
    out << current.str();
    c.note("regression file rewritten: " + regression.string());
  } else {
    const std::string frozen = read_file(regression);
    c.require(!frozen.empty(), "missing regression file " + regression.string());
    c.require(frozen == current.str(),
              "default capture run differs from frozen regression CSV");
  }
}

void criterion_determinism(Criterion& c) {
  figures::RunManifest a;
  a.trials = 2000;
  a.seed = kSeed;
  a.threads = 1;
  a.out_dir = scratch_dir("det_a");
  figures::RunManifest b = a;
  b.threads = 4;
  b.out_dir = scratch_dir("det_b");

  figures::cmd_sim_mtor(a);
  figures::cmd_sim_mtor(b);
  c.require(read_file(a.out_dir / "mtor_means.csv") ==
                read_file(b.out_dir / "mtor_means.csv"),
            "mtor_means.csv differs between 1 and 4 workers");

  figures::cmd_sim_capture(a);
  figures::cmd_sim_capture(b);
  c.require(read_file(a.out_dir / "capture_estimates.csv") ==
                read_file(b.out_dir / "capture_estimates.csv"),
            "capture_estimates.csv differs between 1 and 4 workers");

  // Rerun in place: byte-identical files.
  const std::string before = read_file(a.out_dir / "mtor_means.csv");
  figures::cmd_sim_mtor(a);
  c.require(before == read_file(a.out_dir / "mtor_means.csv"),
            "mtor_means.csv differs between reruns");
}

}  // namespace

int main(int argc, char** argv) {
  for (int i = 1; i < argc; ++i) {
    if (std::string(argv[i]) == "--write-regression") g_write_regression = true;
  }

  run_criterion(1, "meeting-count bound inversion", criterion_meeting_bound, 1.0);
  run_criterion(2, "multicast-root selection probability", criterion_mr_selection,
                1.0);
  run_criterion(3, "guard-collision table vs formula and simulation",
                criterion_guard_collisions, 60.0);
  run_criterion(4, "deduplication accuracy thresholds", criterion_deduplication,
                1.0);
  run_criterion(5, "bridging closed forms vs oracles",
                criterion_bridging_consistency, 60.0);
  run_criterion(6, "MLE enumeration, values and error spread",
                criterion_mle_engine, 600.0);
  run_criterion(7, "meeting simulation vs closed forms and curve ordering",
                criterion_mtor_simulation, 900.0);
  run_criterion(8, "capture-recapture claims and frozen regression",
                criterion_capture_recapture, 600.0);
  run_criterion(9, "byte-identical reruns across worker counts",
                criterion_determinism, 300.0);

  if (g_failed_criteria == 0) {
    std::printf("all criteria passed\n");
    return 0;
  }
  std::printf("%d criteria failed\n", g_failed_criteria);
  return 1;
}
