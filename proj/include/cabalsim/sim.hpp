#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "cabalsim/model.hpp"
#include "cabalsim/rng.hpp"

namespace cabalsim::sim {

inline constexpr std::uint64_t kDefaultTrialBudget = 10'000'000;

struct MtorTrialResult {
  // Cum. number of identified members after each meeting; non-decreasing and
  // capped at the cabal size.
  std::vector<int> identified_per_meeting;
  std::vector<int> bridged_guards;  // guard ids, ascending
  std::vector<int> failed_guards;   // attempted but not bridged, ascending
  int compromised_middles = 0;      // realized count for this trial
};

// One recurring-meeting trial. Middles are compromised i.i.d. with
// probability B once per trial; guard sets are fixed per trial; each meeting
// every client picks a guard from its set, the first client on a guard picks
// that guard's middle for the meeting and later clients reuse it; a guard
// whose meeting middle is compromised gets exactly one lifetime bridging
// attempt with success probability p_b; after each meeting the identified set
// grows by the clients whose current guard is bridged.
MtorTrialResult run_mtor_trial(const CabalScenario& scenario,
                               const AdversaryParams& adversary, SeededRng& rng);

struct MtorGridPoint {
  double middle_fraction = 0.0;
  double bridge_prob = 0.0;
  int guards_per_client = 1;
};

struct MtorCurve {
  MtorGridPoint point;
  int trials = 0;
  std::vector<double> mean_identified;    // per meeting index
  std::vector<double> stderr_identified;  // standard error of the mean
  double realized_middle_fraction = 0.0;  // mean over trials
};

struct MtorSweepResult {
  CabalScenario scenario;
  std::uint64_t seed = 0;
  std::vector<MtorCurve> curves;
};

// Runs `trials` independent trials per grid point. Trial t of grid point i
// uses stream_id i*trials + t, and per-meeting tallies are aggregated as
// integers, so the result is identical for any worker count.
MtorSweepResult run_mtor_sweep(const CabalScenario& scenario,
                               std::span<const MtorGridPoint> grid, int trials,
                               std::uint64_t seed, int threads = 0,
                               std::uint64_t trial_budget = kDefaultTrialBudget);

struct CaptureTrialResult {
  int marked_first = 0;   // c1: guards marked in window 1
  int marked_second = 0;  // c2: guards marked in window 2
  int overlap = 0;        // m2 <= min(c1, c2)
  double estimate = 0.0;  // Chapman estimate
};

// One two-window marking trial: per window every client makes its group's
// visit count, each visit pairing a uniform guard from the client's set with
// a uniform middle; per-guard counts of visits that crossed a compromised
// middle are aggregated across clients, and guards reaching the threshold
// form the window's marked set.
CaptureTrialResult run_capture_trial(const CaptureScenario& scenario,
                                     const AdversaryParams& adversary,
                                     SeededRng& rng);

struct CaptureGridPoint {
  std::string sweep;  // which parameter this point varies
  std::string label;  // value of the varied parameter, for CSV output
  CaptureScenario scenario;
  AdversaryParams adversary;
};

struct CaptureCurve {
  CaptureGridPoint point;
  int trials = 0;
  std::vector<double> estimates;  // per-trial Chapman estimates, trial order
  double q1 = 0.0, median = 0.0, q3 = 0.0;
};

struct CaptureSweepResult {
  std::uint64_t seed = 0;
  std::vector<CaptureCurve> curves;
};

// Per-trial estimates are written into slots indexed by trial and summarized
// sequentially afterwards, so any worker count produces identical output.
CaptureSweepResult run_capture_sweep(std::span<const CaptureGridPoint> grid,
                                     int trials, std::uint64_t seed,
                                     int threads = 0,
                                     std::uint64_t trial_budget = kDefaultTrialBudget);

}  // namespace cabalsim::sim
