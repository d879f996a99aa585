#pragma once

namespace cabalsim::bridging {

// Probability of bridging a leader who uses a single guard within m meetings:
// [1 - (1-B)^m] * p_b. The adversary gets exactly one bridging attempt per
// client-guard pair.
double one_guard_success(double middle_fraction, double bridge_prob, int meetings);

// Probability that the j-th previously-unseen guard (of n) is first observed
// exactly `gap` meetings after the previous new observation and the bridging
// attempt on it fails:
//   (1 - r)^(gap-1) * r * (1 - p_b),  r = ((n-j+1)/n) * B.
double failure_term(int guards, int observation_index, int gap,
                    double middle_fraction, double bridge_prob);

// Probability that the j-th observed guard is both observed within the
// remaining `meetings` and successfully bridged:
//   [1 - (1 - r)^meetings] * p_b,  r = ((n-j+1)/n) * B.
double success_term(int guards, int observation_index, int meetings,
                    double middle_fraction, double bridge_prob);

// Total success probability for a leader with any number of guards: the sum
// over which observed guard is finally bridged and over the meeting indices
// at which the earlier observations (all failed bridges) occurred. Evaluated
// by dynamic programming over (guards failed, meetings elapsed) in O(g m^2)
// instead of enumerating index tuples.
double multi_guard_success(int guards, double middle_fraction, double bridge_prob,
                           int meetings);

}  // namespace cabalsim::bridging
