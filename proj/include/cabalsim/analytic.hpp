#pragma once

namespace cabalsim::analytic {

// Probability that the adversary fails to learn at least one guard of every
// one of c group members over m meetings: 1 - (1 - (1-B)^m)^c.
double failure_probability(double middle_fraction, int meetings, int cabal_size);

// Smallest m with failure_probability(B, m, c) < T. The real-valued logarithm
// is only used as a starting point; the answer is settled by an integer scan
// because boundary cases can land exactly on a tie.
int min_meetings(double middle_fraction, int cabal_size, double failure_threshold);

// Largest c with failure_probability(B, m, c) < T; 0 if even c = 1 fails.
int max_cabal(double middle_fraction, int meetings, double failure_threshold);

// Expected fraction of members with an identified guard: 1 - (1-B)^m.
// Independent of the group size.
double expected_identified_fraction(double middle_fraction, int meetings);

// Companion count: c * (1-B)^m members expected to have no identified guard.
double expected_unidentified_count(double middle_fraction, int meetings, int cabal_size);

// Probability that the guards of exactly a given i-subset of the c members
// are exposed after m meetings: (1-(1-B)^m)^i * (1-B)^(m(c-i)).
double exact_subset_exposure(double middle_fraction, int meetings, int cabal_size,
                             int subset_size);

// Expected number of distinct guards picked when c clients each choose one
// uniformly from a pool of g: g(1 - (1 - 1/g)^c).
double expected_distinct_guards(int guard_pool, int cabal_size);

// Expected distinct middles under deduplication: the guard formula applied
// again with the middle pool and the expected guard count as the exponent.
double expected_distinct_middles(int middle_pool, int guard_pool, int cabal_size);

// Probability a relay owner is picked as multicast root at least once in the
// given number of sessions: 1 - (1-B)^sessions.
double mr_selection_probability(double middle_fraction, int sessions);

// Probability that at least two of c clients share a guard when each
// independently samples k distinct guards from a pool of g:
// 1 - prod_{i=0}^{c-1} C(g-ki, k) / C(g, k). Exact product via log-gamma.
double guard_collision_probability(int guard_pool, int guards_per_client,
                                   int client_count);

// Chapman bias-corrected two-sample population estimate:
// (c1+1)(c2+1)/(m2+1) - 1. Well-defined for zero overlap.
double chapman_estimate(int marked_first, int marked_second, int overlap);

}  // namespace cabalsim::analytic
