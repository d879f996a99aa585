#include "cabalsim/mle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "cabalsim/errors.hpp"

namespace cabalsim::mle {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Two log-likelihoods within this distance are treated as tied, so the
// smallest-theta rule decides. Exact ties (consecutive-theta likelihood
// ratios equal to 1) otherwise flip on ~1e-16 rounding noise.
constexpr double kLogLikelihoodTolerance = 1e-9;

void require_domain(bool ok, const std::string& message) {
  if (!ok) throw DomainError(message);
}

double log_factorial(int n) {
  static const std::vector<double> table = [] {
    std::vector<double> t(4096);
    t[0] = 0.0;
    for (std::size_t i = 1; i < t.size(); ++i) {
      t[i] = t[i - 1] + std::log(static_cast<double>(i));
    }
    return t;
  }();
  if (n < static_cast<int>(table.size())) return table[n];
  return std::lgamma(n + 1.0);
}

double log_binomial(int n, int k) {
  return log_factorial(n) - log_factorial(k) - log_factorial(n - k);
}

int max_observation(const ObservationVector& x) {
  int best = 0;
  for (int v : x.counts) best = std::max(best, v);
  return best;
}

double binomial_pmf(int n, double p, int k) {
  if (p <= 0.0) return k == 0 ? 1.0 : 0.0;
  if (p >= 1.0) return k == n ? 1.0 : 0.0;
  return std::exp(log_binomial(n, k) + k * std::log(p) +
                  (n - k) * std::log1p(-p));
}

}  // namespace

double log_likelihood(const ObservationVector& x, int theta,
                      double middle_fraction) {
  require_domain(theta >= 0, "theta must be non-negative");
  require_domain(middle_fraction >= 0.0 && middle_fraction <= 1.0,
                 "middle_fraction out of [0,1]");
  validate(x);
  double sum = 0.0;
  for (int v : x.counts) {
    if (v > theta) return kNegInf;
    if (middle_fraction <= 0.0) {
      if (v != 0) return kNegInf;
      continue;
    }
    if (middle_fraction >= 1.0) {
      if (v != theta) return kNegInf;
      continue;
    }
    sum += log_binomial(theta, v) + v * std::log(middle_fraction) +
           (theta - v) * std::log1p(-middle_fraction);
  }
  return sum;
}

double likelihood(const ObservationVector& x, int theta, double middle_fraction) {
  return std::exp(log_likelihood(x, theta, middle_fraction));
}

MleEstimate mle_estimate(const ObservationVector& x, double middle_fraction,
                         int max_theta) {
  const int lowest = max_observation(x);
  require_domain(lowest <= max_theta, "max(x) exceeds max_theta");
  int best = lowest;
  double best_ll = log_likelihood(x, lowest, middle_fraction);
  for (int theta = lowest + 1; theta <= max_theta; ++theta) {
    const double ll = log_likelihood(x, theta, middle_fraction);
    if (ll > best_ll + kLogLikelihoodTolerance) {
      best = theta;
      best_ll = ll;
    }
  }
  return {best, best == max_theta && max_theta > lowest};
}

int mle(const ObservationVector& x, double middle_fraction, int max_theta) {
  return mle_estimate(x, middle_fraction, max_theta).value;
}

MleDistributionRow mle_distribution(int true_size, int meetings,
                                    double middle_fraction, int max_theta,
                                    std::uint64_t state_cap) {
  require_domain(true_size >= 0, "true_size must be non-negative");
  require_domain(meetings >= 1, "meetings must be >= 1");
  require_domain(middle_fraction >= 0.0 && middle_fraction <= 1.0,
                 "middle_fraction out of [0,1]");
  require_domain(true_size <= max_theta, "true_size exceeds max_theta");

  // C(c+m, m) sorted multisets; refuse oversized rows up front.
  double states = 1.0;
  for (int i = 1; i <= meetings; ++i) {
    states *= static_cast<double>(true_size + i) / i;
  }
  if (states > static_cast<double>(state_cap)) {
    throw ResourceCapError("mle_distribution: " + std::to_string(states) +
                           " observation multisets exceed cap of " +
                           std::to_string(state_cap));
  }

  std::vector<double> pmf(true_size + 1);
  for (int v = 0; v <= true_size; ++v) {
    pmf[v] = binomial_pmf(true_size, middle_fraction, v);
  }

  MleDistributionRow row;
  row.true_size = true_size;
  row.meetings = meetings;
  row.middle_fraction = middle_fraction;

  // Enumerate non-increasing observation tuples; each stands for all of its
  // permutations via the multinomial multiplicity.
  ObservationVector x;
  x.counts.assign(meetings, true_size);
  const double m_factorial = std::exp(log_factorial(meetings));
  while (true) {
    double weight = m_factorial;
    int run_value = x.counts[0];
    int run_length = 0;
    for (int v : x.counts) {
      weight *= pmf[v];
      if (v == run_value) {
        ++run_length;
      } else {
        weight /= std::exp(log_factorial(run_length));
        run_value = v;
        run_length = 1;
      }
    }
    weight /= std::exp(log_factorial(run_length));
    if (weight > 0.0) {
      row.mass[mle(x, middle_fraction, max_theta)] += weight;
    }

    // Next non-increasing tuple: decrement the rightmost positive entry and
    // reset everything after it to the new value.
    int i = meetings - 1;
    while (i >= 0 && x.counts[i] == 0) --i;
    if (i < 0) break;
    const int reset = x.counts[i] - 1;
    for (int j = i; j < meetings; ++j) x.counts[j] = reset;
  }

  for (const auto& [value, probability] : row.mass) {
    row.expected_mle += value * probability;
    for (std::size_t k = 0; k < kErrorThresholds.size(); ++k) {
      if (std::abs(value - true_size) >= kErrorThresholds[k]) {
        row.error_prob[k] += probability;
      }
    }
  }
  return row;
}

double expected_mle_error(int true_size, int meetings, double middle_fraction,
                          int max_theta) {
  const auto row = mle_distribution(true_size, meetings, middle_fraction, max_theta);
  return row.expected_mle - true_size;
}

}  // namespace cabalsim::mle
