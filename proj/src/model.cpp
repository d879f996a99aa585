#include "cabalsim/model.hpp"

#include <string>

namespace cabalsim {

namespace {

void require(bool ok, const std::string& message) {
  if (!ok) throw ValidationError(message);
}

bool in_closed_unit(double v) { return v >= 0.0 && v <= 1.0; }

}  // namespace

int total_clients(const CaptureScenario& s) {
  int n = 0;
  for (const auto& g : s.client_groups) n += g.count;
  return n;
}

int total_visits_per_window(const CaptureScenario& s) {
  int n = 0;
  for (const auto& g : s.client_groups) n += g.count * g.visits_per_window;
  return n;
}

void validate(const AdversaryParams& p) {
  require(in_closed_unit(p.middle_fraction), "middle_fraction out of [0,1]");
  require(in_closed_unit(p.bridge_prob), "bridge_prob out of [0,1]");
  require(p.failure_threshold > 0.0 && p.failure_threshold < 1.0,
          "failure_threshold out of (0,1)");
}

void validate(const CabalScenario& s) {
  require(s.cabal_size >= 1, "cabal_size must be positive");
  require(s.meetings >= 0, "meetings must be non-negative");
  require(s.guards_per_client >= 1, "guards_per_client must be positive");
  require(s.guard_pool >= 1, "guard_pool must be positive");
  require(s.middle_pool >= 1, "middle_pool must be positive");
  require(s.guards_per_client <= s.guard_pool,
          "guards_per_client exceeds guard_pool");
  if (s.disjoint_guards) {
    require(static_cast<long long>(s.cabal_size) * s.guards_per_client <=
                s.guard_pool,
            "disjoint guard sets infeasible: cabal_size * guards_per_client "
            "exceeds guard_pool");
  }
}

void validate(const ObservationVector& x) {
  for (int v : x.counts) {
    require(v >= 0, "observation counts must be non-negative");
  }
}

void validate(const CaptureScenario& s) {
  require(!s.client_groups.empty(), "at least one client group required");
  for (const auto& g : s.client_groups) {
    require(g.count >= 1, "client group count must be positive");
    require(g.visits_per_window >= 1, "visits_per_window must be positive");
  }
  require(s.threshold >= 1, "threshold must be >= 1");
  require(s.guards_per_client >= 1, "guards_per_client must be positive");
  require(s.guard_pool >= 1, "guard_pool must be positive");
  require(s.middle_pool >= 1, "middle_pool must be positive");
  require(s.guards_per_client <= s.guard_pool,
          "guards_per_client exceeds guard_pool");
  if (s.disjoint_guards) {
    require(static_cast<long long>(total_clients(s)) * s.guards_per_client <=
                s.guard_pool,
            "disjoint guard sets infeasible: clients * guards_per_client "
            "exceeds guard_pool");
  }
}

}  // namespace cabalsim
