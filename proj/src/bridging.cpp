#include "cabalsim/bridging.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "cabalsim/errors.hpp"

namespace cabalsim::bridging {

namespace {

void require_domain(bool ok, const std::string& message) {
  if (!ok) throw DomainError(message);
}

void check_probabilities(double middle_fraction, double bridge_prob) {
  require_domain(middle_fraction >= 0.0 && middle_fraction <= 1.0,
                 "middle_fraction out of [0,1]");
  require_domain(bridge_prob >= 0.0 && bridge_prob <= 1.0,
                 "bridge_prob out of [0,1]");
}

// Per-meeting rate of "fresh guard and compromised middle" when j-1 guards
// have already been attempted.
double fresh_observation_rate(int guards, int observation_index,
                              double middle_fraction) {
  return (static_cast<double>(guards - observation_index + 1) / guards) *
         middle_fraction;
}

}  // namespace

double one_guard_success(double middle_fraction, double bridge_prob, int meetings) {
  check_probabilities(middle_fraction, bridge_prob);
  require_domain(meetings >= 0, "meetings must be non-negative");
  if (middle_fraction >= 1.0) {
    return meetings >= 1 ? bridge_prob : 0.0;
  }
  return -std::expm1(meetings * std::log1p(-middle_fraction)) * bridge_prob;
}

double failure_term(int guards, int observation_index, int gap,
                    double middle_fraction, double bridge_prob) {
  check_probabilities(middle_fraction, bridge_prob);
  require_domain(guards >= 1 && observation_index >= 1 &&
                     observation_index <= guards,
                 "observation_index out of [1, guards]");
  require_domain(gap >= 1, "gap must be >= 1");
  const double r = fresh_observation_rate(guards, observation_index, middle_fraction);
  return std::pow(1.0 - r, gap - 1) * r * (1.0 - bridge_prob);
}

double success_term(int guards, int observation_index, int meetings,
                    double middle_fraction, double bridge_prob) {
  check_probabilities(middle_fraction, bridge_prob);
  require_domain(guards >= 1 && observation_index >= 1 &&
                     observation_index <= guards,
                 "observation_index out of [1, guards]");
  require_domain(meetings >= 0, "meetings must be non-negative");
  const double r = fresh_observation_rate(guards, observation_index, middle_fraction);
  if (r >= 1.0) {
    return meetings >= 1 ? bridge_prob : 0.0;
  }
  return -std::expm1(meetings * std::log1p(-r)) * bridge_prob;
}

double multi_guard_success(int guards, double middle_fraction, double bridge_prob,
                           int meetings) {
  check_probabilities(middle_fraction, bridge_prob);
  require_domain(guards >= 1, "guards must be >= 1");
  require_domain(meetings >= 0, "meetings must be non-negative");
  if (meetings == 0) return 0.0;

  double total = success_term(guards, 1, meetings, middle_fraction, bridge_prob);

  // weight[t]: probability that the latest failed observation happened exactly
  // at meeting t (the fictitious 0-th observation sits at t = 0).
  std::vector<double> weight(meetings, 0.0);
  weight[0] = 1.0;
  for (int k = 2; k <= guards; ++k) {
    std::vector<double> next(meetings, 0.0);
    for (int s = k - 2; s < meetings - 1; ++s) {
      if (weight[s] == 0.0) continue;
      for (int t = s + 1; t < meetings; ++t) {
        next[t] += weight[s] * failure_term(guards, k - 1, t - s, middle_fraction,
                                            bridge_prob);
      }
    }
    for (int t = k - 1; t < meetings; ++t) {
      if (next[t] == 0.0) continue;
      total += next[t] * success_term(guards, k, meetings - t, middle_fraction,
                                      bridge_prob);
    }
    weight = std::move(next);
  }
  return total;
}

}  // namespace cabalsim::bridging
