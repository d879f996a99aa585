#include "cabalsim/sim.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <iterator>
#include <thread>

#include "cabalsim/analytic.hpp"
#include "cabalsim/errors.hpp"

namespace cabalsim::sim {

namespace {

enum class GuardState : std::uint8_t { kUntouched, kBridged, kFailed };

// Samples `count` distinct values from [0, pool) into out. Rejection against
// an epoch-marked board; cheap because count << pool in every scenario here.
void sample_distinct(SeededRng& rng, int pool, int count, std::vector<int>& out,
                     std::vector<std::uint32_t>& board, std::uint32_t epoch) {
  out.clear();
  while (static_cast<int>(out.size()) < count) {
    const int v = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(pool)));
    if (board[v] == epoch) continue;
    board[v] = epoch;
    out.push_back(v);
  }
}

void assign_guard_sets(const int clients, const int guards_per_client,
                       const int guard_pool, const bool disjoint, SeededRng& rng,
                       std::vector<int>& guard_sets) {
  guard_sets.clear();
  std::vector<std::uint32_t> board(guard_pool, 0);
  std::vector<int> draw;
  if (disjoint) {
    sample_distinct(rng, guard_pool, clients * guards_per_client, guard_sets,
                    board, 1);
  } else {
    for (int c = 0; c < clients; ++c) {
      sample_distinct(rng, guard_pool, guards_per_client, draw, board,
                      static_cast<std::uint32_t>(c + 1));
      guard_sets.insert(guard_sets.end(), draw.begin(), draw.end());
    }
  }
}

int run_threads(int requested) {
  if (requested > 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

// Runs fn(trial_index) for every trial in [0, trials) across `threads`
// workers. fn must only write to state owned by its trial index.
template <typename Fn>
void parallel_trials(int trials, int threads, Fn&& fn) {
  threads = std::min(threads, trials);
  if (threads <= 1) {
    for (int t = 0; t < trials; ++t) fn(t);
    return;
  }
  std::vector<std::thread> workers;
  workers.reserve(threads);
  for (int w = 0; w < threads; ++w) {
    workers.emplace_back([=] {
      for (int t = w; t < trials; t += threads) fn(t);
    });
  }
  for (auto& worker : workers) worker.join();
}

void check_budget(std::size_t grid_points, int trials, std::uint64_t budget) {
  if (trials < 1) throw DomainError("trials must be >= 1");
  const std::uint64_t total = grid_points * static_cast<std::uint64_t>(trials);
  if (total > budget) {
    throw ResourceCapError("sweep of " + std::to_string(total) +
                           " trials exceeds budget of " + std::to_string(budget));
  }
}

}  // namespace

MtorTrialResult run_mtor_trial(const CabalScenario& scenario,
                               const AdversaryParams& adversary, SeededRng& rng) {
  const int clients = scenario.cabal_size;
  const int k = scenario.guards_per_client;
  const int guard_pool = scenario.guard_pool;
  const int middle_pool = scenario.middle_pool;

  MtorTrialResult result;
  result.identified_per_meeting.assign(scenario.meetings, 0);

  // Compromise status is fixed for the whole trial.
  std::vector<std::uint8_t> compromised(middle_pool, 0);
  for (int i = 0; i < middle_pool; ++i) {
    compromised[i] = rng.bernoulli(adversary.middle_fraction) ? 1 : 0;
  }
  for (std::uint8_t c : compromised) result.compromised_middles += c;

  std::vector<int> guard_sets;
  assign_guard_sets(clients, k, guard_pool, scenario.disjoint_guards, rng,
                    guard_sets);

  std::vector<GuardState> guard_state(guard_pool, GuardState::kUntouched);
  std::vector<int> guard_middle(guard_pool, 0);
  std::vector<std::uint32_t> guard_meeting(guard_pool, 0);
  std::vector<int> chosen_guard(clients, 0);
  std::vector<std::uint8_t> identified(clients, 0);
  int identified_count = 0;

  for (int meeting = 0; meeting < scenario.meetings; ++meeting) {
    const std::uint32_t epoch = static_cast<std::uint32_t>(meeting) + 1;
    for (int c = 0; c < clients; ++c) {
      chosen_guard[c] =
          guard_sets[c * k + static_cast<int>(rng.next_below(
                                 static_cast<std::uint64_t>(k)))];
    }
    // The first client on a guard fixes the guard's middle for this meeting;
    // a compromised middle triggers the guard's single lifetime bridge
    // attempt.
    for (int c = 0; c < clients; ++c) {
      const int guard = chosen_guard[c];
      if (guard_meeting[guard] != epoch) {
        guard_meeting[guard] = epoch;
        guard_middle[guard] = static_cast<int>(
            rng.next_below(static_cast<std::uint64_t>(middle_pool)));
        if (compromised[guard_middle[guard]] &&
            guard_state[guard] == GuardState::kUntouched) {
          guard_state[guard] = rng.bernoulli(adversary.bridge_prob)
                                   ? GuardState::kBridged
                                   : GuardState::kFailed;
        }
      }
    }
    // Identification uses the bridged set as of the end of this meeting.
    for (int c = 0; c < clients; ++c) {
      if (!identified[c] && guard_state[chosen_guard[c]] == GuardState::kBridged) {
        identified[c] = 1;
        ++identified_count;
      }
    }
    result.identified_per_meeting[meeting] = identified_count;
  }

  for (int g = 0; g < guard_pool; ++g) {
    if (guard_state[g] == GuardState::kBridged) result.bridged_guards.push_back(g);
    if (guard_state[g] == GuardState::kFailed) result.failed_guards.push_back(g);
  }
  return result;
}

MtorSweepResult run_mtor_sweep(const CabalScenario& scenario,
                               std::span<const MtorGridPoint> grid, int trials,
                               std::uint64_t seed, int threads,
                               std::uint64_t trial_budget) {
  validate(scenario);
  check_budget(grid.size(), trials, trial_budget);

  MtorSweepResult sweep;
  sweep.scenario = scenario;
  sweep.seed = seed;
  const int workers = run_threads(threads);

  for (std::size_t point_index = 0; point_index < grid.size(); ++point_index) {
    const MtorGridPoint& point = grid[point_index];
    CabalScenario point_scenario = scenario;
    point_scenario.guards_per_client = point.guards_per_client;
    AdversaryParams point_adversary;
    point_adversary.middle_fraction = point.middle_fraction;
    point_adversary.bridge_prob = point.bridge_prob;
    validate(point_scenario);
    validate(point_adversary);

    const int meetings = point_scenario.meetings;
    // Integer tallies make the aggregation exact and order-independent.
    std::vector<std::int64_t> sum(meetings, 0);
    std::vector<std::int64_t> sum_sq(meetings, 0);
    std::vector<std::int64_t> compromised(workers, 0);
    std::vector<std::vector<std::int64_t>> worker_sum(
        workers, std::vector<std::int64_t>(meetings, 0));
    std::vector<std::vector<std::int64_t>> worker_sum_sq(
        workers, std::vector<std::int64_t>(meetings, 0));

    parallel_trials(trials, workers, [&](int trial) {
      SeededRng rng(seed, point_index * static_cast<std::uint64_t>(trials) +
                              static_cast<std::uint64_t>(trial));
      const MtorTrialResult r =
          run_mtor_trial(point_scenario, point_adversary, rng);
      const int w = trial % workers;
      for (int m = 0; m < meetings; ++m) {
        const std::int64_t v = r.identified_per_meeting[m];
        worker_sum[w][m] += v;
        worker_sum_sq[w][m] += v * v;
      }
      compromised[w] += r.compromised_middles;
    });

    std::int64_t compromised_total = 0;
    for (int w = 0; w < workers; ++w) {
      compromised_total += compromised[w];
      for (int m = 0; m < meetings; ++m) {
        sum[m] += worker_sum[w][m];
        sum_sq[m] += worker_sum_sq[w][m];
      }
    }

    MtorCurve curve;
    curve.point = point;
    curve.trials = trials;
    curve.mean_identified.resize(meetings);
    curve.stderr_identified.resize(meetings);
    const double n = trials;
    for (int m = 0; m < meetings; ++m) {
      const double mean = static_cast<double>(sum[m]) / n;
      curve.mean_identified[m] = mean;
      if (trials > 1) {
        const double variance =
            (static_cast<double>(sum_sq[m]) - n * mean * mean) / (n - 1.0);
        curve.stderr_identified[m] = std::sqrt(std::max(0.0, variance) / n);
      }
    }
    curve.realized_middle_fraction =
        static_cast<double>(compromised_total) /
        (n * static_cast<double>(point_scenario.middle_pool));
    sweep.curves.push_back(std::move(curve));
  }
  return sweep;
}

CaptureTrialResult run_capture_trial(const CaptureScenario& scenario,
                                     const AdversaryParams& adversary,
                                     SeededRng& rng) {
  const int k = scenario.guards_per_client;
  const int guard_pool = scenario.guard_pool;
  const int middle_pool = scenario.middle_pool;
  const int clients = total_clients(scenario);

  std::vector<std::uint8_t> compromised(middle_pool, 0);
  for (int i = 0; i < middle_pool; ++i) {
    compromised[i] = rng.bernoulli(adversary.middle_fraction) ? 1 : 0;
  }

  std::vector<int> guard_sets;
  assign_guard_sets(clients, k, guard_pool, scenario.disjoint_guards, rng,
                    guard_sets);
  std::vector<int> visits_of_client;
  visits_of_client.reserve(clients);
  for (const auto& group : scenario.client_groups) {
    for (int i = 0; i < group.count; ++i) {
      visits_of_client.push_back(group.visits_per_window);
    }
  }

  // Visit counts are aggregated per guard across all clients that use it.
  std::vector<int> count(guard_pool, 0);
  std::vector<std::uint32_t> count_epoch(guard_pool, 0);
  std::array<std::vector<int>, 2> marked;

  for (int window = 0; window < 2; ++window) {
    const std::uint32_t epoch = static_cast<std::uint32_t>(window) + 1;
    for (int c = 0; c < clients; ++c) {
      for (int v = 0; v < visits_of_client[c]; ++v) {
        const int guard =
            guard_sets[c * k + static_cast<int>(rng.next_below(
                                   static_cast<std::uint64_t>(k)))];
        const int middle = static_cast<int>(
            rng.next_below(static_cast<std::uint64_t>(middle_pool)));
        if (!compromised[middle]) continue;
        if (count_epoch[guard] != epoch) {
          count_epoch[guard] = epoch;
          count[guard] = 0;
        }
        if (++count[guard] == scenario.threshold) {
          marked[window].push_back(guard);
        }
      }
    }
    std::sort(marked[window].begin(), marked[window].end());
  }

  CaptureTrialResult result;
  result.marked_first = static_cast<int>(marked[0].size());
  result.marked_second = static_cast<int>(marked[1].size());
  std::vector<int> overlap;
  std::set_intersection(marked[0].begin(), marked[0].end(), marked[1].begin(),
                        marked[1].end(), std::back_inserter(overlap));
  result.overlap = static_cast<int>(overlap.size());
  result.estimate = analytic::chapman_estimate(result.marked_first,
                                               result.marked_second, result.overlap);
  return result;
}

CaptureSweepResult run_capture_sweep(std::span<const CaptureGridPoint> grid,
                                     int trials, std::uint64_t seed, int threads,
                                     std::uint64_t trial_budget) {
  check_budget(grid.size(), trials, trial_budget);
  for (const auto& point : grid) {
    validate(point.scenario);
    validate(point.adversary);
  }

  CaptureSweepResult sweep;
  sweep.seed = seed;
  const int workers = run_threads(threads);

  for (std::size_t point_index = 0; point_index < grid.size(); ++point_index) {
    const CaptureGridPoint& point = grid[point_index];
    CaptureCurve curve;
    curve.point = point;
    curve.trials = trials;
    curve.estimates.assign(trials, 0.0);

    parallel_trials(trials, workers, [&](int trial) {
      SeededRng rng(seed, point_index * static_cast<std::uint64_t>(trials) +
                              static_cast<std::uint64_t>(trial));
      curve.estimates[trial] =
          run_capture_trial(point.scenario, point.adversary, rng).estimate;
    });

    std::vector<double> sorted = curve.estimates;
    std::sort(sorted.begin(), sorted.end());
    const auto quantile = [&](double q) {
      const double pos = q * (sorted.size() - 1);
      const std::size_t lo = static_cast<std::size_t>(pos);
      const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
      const double frac = pos - static_cast<double>(lo);
      return sorted[lo] * (1.0 - frac) + sorted[hi] * frac;
    };
    curve.q1 = quantile(0.25);
    curve.median = quantile(0.5);
    curve.q3 = quantile(0.75);
    sweep.curves.push_back(std::move(curve));
  }
  return sweep;
}

}  // namespace cabalsim::sim
