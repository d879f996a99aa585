#pragma once

#include <array>
#include <cstdint>
#include <map>

#include "cabalsim/model.hpp"

namespace cabalsim::mle {

// Error magnitudes reported per distribution row: P(|estimate - c| >= k).
inline constexpr std::array<int, 4> kErrorThresholds{1, 2, 5, 10};

inline constexpr int kDefaultMaxTheta = 100;

// States allowed in one distribution row before the enumeration refuses to
// run. C(c+m, m) sorted observation multisets are enumerated per row; the
// (c=20, m=5) grid corner needs 53,130.
inline constexpr std::uint64_t kDefaultStateCap = 5'000'000;

// Likelihood of observing x when the candidate group size is theta and each
// member is seen independently with probability B per meeting:
//   prod_i C(theta, x_i) B^{x_i} (1-B)^{theta - x_i},
// and 0 whenever some x_i > theta.
double likelihood(const ObservationVector& x, int theta, double middle_fraction);

// Same quantity in log space; -inf where the likelihood is 0.
double log_likelihood(const ObservationVector& x, int theta, double middle_fraction);

struct MleEstimate {
  int value = 0;
  // True when the maximizer sat at max_theta, i.e. the search bound may have
  // truncated the estimate.
  bool hit_bound = false;
};

// Smallest theta in [max(x), max_theta] maximizing the likelihood. Ties go to
// the smallest theta; the comparison uses a small log-space tolerance so that
// exact rational ties are not broken by rounding noise.
MleEstimate mle_estimate(const ObservationVector& x, double middle_fraction,
                         int max_theta = kDefaultMaxTheta);
int mle(const ObservationVector& x, double middle_fraction,
        int max_theta = kDefaultMaxTheta);

struct MleDistributionRow {
  int true_size = 0;
  int meetings = 0;
  double middle_fraction = 0.0;
  std::map<int, double> mass;  // estimate value -> probability
  double expected_mle = 0.0;
  std::array<double, kErrorThresholds.size()> error_prob{};  // P(|mle-c| >= k)
};

// Exact distribution of the estimator for a known true size: enumerates
// sorted observation multisets with multinomial multiplicities (the
// likelihood and the observation probability are both symmetric in the
// meeting order), weights each by the binomial observation model, and
// accumulates mass per estimate value.
MleDistributionRow mle_distribution(int true_size, int meetings,
                                    double middle_fraction,
                                    int max_theta = kDefaultMaxTheta,
                                    std::uint64_t state_cap = kDefaultStateCap);

// Expected estimate minus the true size.
double expected_mle_error(int true_size, int meetings, double middle_fraction,
                          int max_theta = kDefaultMaxTheta);

}  // namespace cabalsim::mle
