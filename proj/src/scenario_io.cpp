#include "cabalsim/scenario_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cabalsim/errors.hpp"

namespace cabalsim {

namespace {

using nlohmann::json;

template <typename T>
void read_field(const json& j, const char* key, T& target) {
  if (const auto it = j.find(key); it != j.end()) {
    it->get_to(target);
  }
}

AdversaryParams parse_adversary(const json& j) {
  AdversaryParams p;
  read_field(j, "middle_fraction", p.middle_fraction);
  read_field(j, "bridge_prob", p.bridge_prob);
  read_field(j, "failure_threshold", p.failure_threshold);
  validate(p);
  return p;
}

CabalScenario parse_cabal(const json& j) {
  CabalScenario s;
  read_field(j, "cabal_size", s.cabal_size);
  read_field(j, "meetings", s.meetings);
  read_field(j, "guards_per_client", s.guards_per_client);
  read_field(j, "guard_pool", s.guard_pool);
  read_field(j, "middle_pool", s.middle_pool);
  read_field(j, "disjoint_guards", s.disjoint_guards);
  validate(s);
  return s;
}

CaptureScenario parse_capture(const json& j) {
  CaptureScenario s;
  s.client_groups.clear();
  if (const auto it = j.find("client_groups"); it != j.end()) {
    for (const auto& entry : *it) {
      ClientGroup g;
      read_field(entry, "count", g.count);
      read_field(entry, "visits_per_window", g.visits_per_window);
      s.client_groups.push_back(g);
    }
  }
  read_field(j, "threshold", s.threshold);
  read_field(j, "guards_per_client", s.guards_per_client);
  read_field(j, "guard_pool", s.guard_pool);
  read_field(j, "middle_pool", s.middle_pool);
  read_field(j, "disjoint_guards", s.disjoint_guards);
  validate(s);
  return s;
}

json to_json(const AdversaryParams& p) {
  return json{{"middle_fraction", p.middle_fraction},
              {"bridge_prob", p.bridge_prob},
              {"failure_threshold", p.failure_threshold}};
}

json to_json(const CabalScenario& s) {
  return json{{"cabal_size", s.cabal_size},
              {"meetings", s.meetings},
              {"guards_per_client", s.guards_per_client},
              {"guard_pool", s.guard_pool},
              {"middle_pool", s.middle_pool},
              {"disjoint_guards", s.disjoint_guards}};
}

json to_json(const CaptureScenario& s) {
  json groups = json::array();
  for (const auto& g : s.client_groups) {
    groups.push_back(
        {{"count", g.count}, {"visits_per_window", g.visits_per_window}});
  }
  return json{{"client_groups", groups},
              {"threshold", s.threshold},
              {"guards_per_client", s.guards_per_client},
              {"guard_pool", s.guard_pool},
              {"middle_pool", s.middle_pool},
              {"disjoint_guards", s.disjoint_guards}};
}

}  // namespace

ScenarioFile parse_scenario(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ValidationError(std::string("scenario parse error: ") + e.what());
  }
  ScenarioFile file;
  try {
    if (j.contains("adversary")) file.adversary = parse_adversary(j["adversary"]);
    if (j.contains("cabal")) file.cabal = parse_cabal(j["cabal"]);
    if (j.contains("capture")) file.capture = parse_capture(j["capture"]);
  } catch (const json::exception& e) {
    throw ValidationError(std::string("scenario field error: ") + e.what());
  }
  return file;
}

ScenarioFile load_scenario_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open scenario file " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_scenario(buffer.str());
}

std::string serialize_scenario(const ScenarioFile& file) {
  json j;
  if (file.adversary) j["adversary"] = to_json(*file.adversary);
  if (file.cabal) j["cabal"] = to_json(*file.cabal);
  if (file.capture) j["capture"] = to_json(*file.capture);
  return j.dump(2) + "\n";
}

void save_scenario_file(const ScenarioFile& file,
                        const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << serialize_scenario(file);
  if (!out) throw IoError("write failed for " + path.string());
}

}  // namespace cabalsim
