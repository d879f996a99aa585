#pragma once

#include <vector>

#include "cabalsim/errors.hpp"

namespace cabalsim {

// Adversary endowment: fraction B of middle-relay bandwidth, per-guard
// bridging success probability p_b, and the failure probability T the
// adversary is willing to tolerate.
struct AdversaryParams {
  double middle_fraction = 0.0;    // B, in [0, 1]
  double bridge_prob = 0.0;        // p_b, in [0, 1]
  double failure_threshold = 0.5;  // T, in (0, 1)
};

// A recurring-meeting group and the network it runs over.
struct CabalScenario {
  int cabal_size = 25;          // c >= 1
  int meetings = 100;           // m >= 0
  int guards_per_client = 1;    // k >= 1
  int guard_pool = 2500;        // g
  int middle_pool = 5000;
  // Per-client guard sets are sampled without replacement; when true they are
  // additionally disjoint across clients, which requires c*k <= guard_pool.
  bool disjoint_guards = true;
};

// Per-meeting counts of group circuits seen at compromised middles.
// Entries must be non-negative; the bound x_i <= candidate size is enforced
// at likelihood evaluation, not here.
struct ObservationVector {
  std::vector<int> counts;
};

struct ClientGroup {
  int count = 1;              // clients of this type
  int visits_per_window = 1;  // site visits each makes per sampling window
};

// Two-window onionsite visitor experiment. Guard sets default to independent
// per-client sampling: the marking process explicitly aggregates visit counts
// across clients that share a guard.
struct CaptureScenario {
  std::vector<ClientGroup> client_groups;
  int threshold = 3;  // compromised-middle sightings needed to mark a guard
  int guards_per_client = 1;
  int guard_pool = 2500;
  int middle_pool = 5000;
  bool disjoint_guards = false;
};

int total_clients(const CaptureScenario& s);
int total_visits_per_window(const CaptureScenario& s);

// Each validate() throws ValidationError naming the violated invariant.
void validate(const AdversaryParams& p);
void validate(const CabalScenario& s);
void validate(const ObservationVector& x);
void validate(const CaptureScenario& s);

template <typename Scenario>
Scenario validated(Scenario s) {
  validate(s);
  return s;
}

}  // namespace cabalsim
