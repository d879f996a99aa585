#include "cabalsim/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cabalsim/errors.hpp"

namespace cabalsim::analytic {

namespace {

void require_domain(bool ok, const std::string& message) {
  if (!ok) throw DomainError(message);
}

bool is_probability(double v) { return v >= 0.0 && v <= 1.0; }

// log of (1-B)^m, i.e. m * log(1-B). Exponents like m*(c-i) can reach the
// tens of thousands in sweeps, so all powers stay in log space.
double log_survive(double middle_fraction, double exponent) {
  if (exponent == 0.0) return 0.0;
  if (middle_fraction >= 1.0) return -HUGE_VAL;
  return exponent * std::log1p(-middle_fraction);
}

// 1 - (1-B)^m without cancellation.
double identified_prob(double middle_fraction, int meetings) {
  return -std::expm1(log_survive(middle_fraction, meetings));
}

double log_binomial(int n, int k) {
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

}  // namespace

double failure_probability(double middle_fraction, int meetings, int cabal_size) {
  require_domain(is_probability(middle_fraction), "middle_fraction out of [0,1]");
  require_domain(meetings >= 0, "meetings must be non-negative");
  require_domain(cabal_size >= 1, "cabal_size must be positive");
  const double p_id = identified_prob(middle_fraction, meetings);
  if (p_id <= 0.0) return 1.0;
  if (p_id >= 1.0) return 0.0;
  return -std::expm1(cabal_size * std::log(p_id));
}

int min_meetings(double middle_fraction, int cabal_size, double failure_threshold) {
  require_domain(middle_fraction > 0.0 && middle_fraction < 1.0,
                 "middle_fraction out of (0,1)");
  require_domain(cabal_size >= 1, "cabal_size must be positive");
  require_domain(failure_threshold > 0.0 && failure_threshold < 1.0,
                 "failure_threshold out of (0,1)");
  // Real-valued bound: log_{1-B}[1 - (1-T)^{1/c}].
  const double inner = -std::expm1(std::log1p(-failure_threshold) / cabal_size);
  double start = 1.0;
  if (inner > 0.0 && inner < 1.0) {
    start = std::floor(std::log(inner) / std::log1p(-middle_fraction)) - 2.0;
  }
  int m = std::max(1, static_cast<int>(start));
  while (failure_probability(middle_fraction, m, cabal_size) >= failure_threshold) {
    ++m;
  }
  // Walk back in case the starting guess already overshot the boundary.
  while (m > 1 &&
         failure_probability(middle_fraction, m - 1, cabal_size) < failure_threshold) {
    --m;
  }
  return m;
}

int max_cabal(double middle_fraction, int meetings, double failure_threshold) {
  require_domain(middle_fraction > 0.0 && middle_fraction < 1.0,
                 "middle_fraction out of (0,1)");
  require_domain(meetings >= 1, "meetings must be >= 1");
  require_domain(failure_threshold > 0.0 && failure_threshold < 1.0,
                 "failure_threshold out of (0,1)");
  if (failure_probability(middle_fraction, meetings, 1) >= failure_threshold) {
    return 0;
  }
  // Real-valued bound: log_{1-(1-B)^m}(1-T), used only as a starting guess.
  const double p_id = identified_prob(middle_fraction, meetings);
  int c = 1;
  if (p_id > 0.0 && p_id < 1.0) {
    const double guess =
        std::floor(std::log1p(-failure_threshold) / std::log(p_id)) - 2.0;
    if (guess > 1.0) c = static_cast<int>(guess);
  }
  while (c > 1 &&
         failure_probability(middle_fraction, meetings, c) >= failure_threshold) {
    --c;
  }
  while (failure_probability(middle_fraction, meetings, c + 1) < failure_threshold) {
    ++c;
  }
  return c;
}

double expected_identified_fraction(double middle_fraction, int meetings) {
  require_domain(is_probability(middle_fraction), "middle_fraction out of [0,1]");
  require_domain(meetings >= 0, "meetings must be non-negative");
  return identified_prob(middle_fraction, meetings);
}

double expected_unidentified_count(double middle_fraction, int meetings,
                                   int cabal_size) {
  require_domain(is_probability(middle_fraction), "middle_fraction out of [0,1]");
  require_domain(meetings >= 0, "meetings must be non-negative");
  require_domain(cabal_size >= 0, "cabal_size must be non-negative");
  return cabal_size * std::exp(log_survive(middle_fraction, meetings));
}

double exact_subset_exposure(double middle_fraction, int meetings, int cabal_size,
                             int subset_size) {
  require_domain(is_probability(middle_fraction), "middle_fraction out of [0,1]");
  require_domain(meetings >= 0, "meetings must be non-negative");
  require_domain(cabal_size >= 0, "cabal_size must be non-negative");
  require_domain(subset_size >= 0 && subset_size <= cabal_size,
                 "subset_size out of [0, cabal_size]");
  const double p_id = identified_prob(middle_fraction, meetings);
  const double rest_exponent =
      static_cast<double>(meetings) * (cabal_size - subset_size);
  if (subset_size == 0) {
    return std::exp(log_survive(middle_fraction, rest_exponent));
  }
  if (p_id <= 0.0) return 0.0;
  return std::exp(subset_size * std::log(p_id) +
                  log_survive(middle_fraction, rest_exponent));
}

double expected_distinct_guards(int guard_pool, int cabal_size) {
  require_domain(guard_pool >= 1, "guard_pool must be positive");
  require_domain(cabal_size >= 0, "cabal_size must be non-negative");
  if (cabal_size == 0) return 0.0;
  if (guard_pool == 1) return 1.0;
  return -guard_pool * std::expm1(cabal_size * std::log1p(-1.0 / guard_pool));
}

double expected_distinct_middles(int middle_pool, int guard_pool, int cabal_size) {
  require_domain(middle_pool >= 1, "middle_pool must be positive");
  const double guards = expected_distinct_guards(guard_pool, cabal_size);
  if (guards == 0.0) return 0.0;
  if (middle_pool == 1) return 1.0;
  return -middle_pool * std::expm1(guards * std::log1p(-1.0 / middle_pool));
}

double mr_selection_probability(double middle_fraction, int sessions) {
  require_domain(is_probability(middle_fraction), "middle_fraction out of [0,1]");
  require_domain(sessions >= 0, "sessions must be non-negative");
  return identified_prob(middle_fraction, sessions);
}

double guard_collision_probability(int guard_pool, int guards_per_client,
                                   int client_count) {
  require_domain(guard_pool >= 1, "guard_pool must be positive");
  require_domain(guards_per_client >= 1, "guards_per_client must be positive");
  require_domain(client_count >= 1, "client_count must be positive");
  require_domain(
      static_cast<long long>(guards_per_client) * client_count <= guard_pool,
      "guards_per_client * client_count exceeds guard_pool");
  const double log_denominator = log_binomial(guard_pool, guards_per_client);
  double log_no_collision = 0.0;
  for (int i = 0; i < client_count; ++i) {
    log_no_collision +=
        log_binomial(guard_pool - guards_per_client * i, guards_per_client) -
        log_denominator;
  }
  return -std::expm1(log_no_collision);
}

double chapman_estimate(int marked_first, int marked_second, int overlap) {
  require_domain(marked_first >= 0 && marked_second >= 0 && overlap >= 0,
                 "counts must be non-negative");
  require_domain(overlap <= std::min(marked_first, marked_second),
                 "overlap exceeds a sample size");
  return (marked_first + 1.0) * (marked_second + 1.0) / (overlap + 1.0) - 1.0;
}

}  // namespace cabalsim::analytic
