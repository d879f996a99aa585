#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "cabalsim/model.hpp"

namespace cabalsim {

// One scenario document. Sections are optional; each subcommand reads the
// sections it needs and falls back to defaults for the rest.
struct ScenarioFile {
  std::optional<AdversaryParams> adversary;
  std::optional<CabalScenario> cabal;
  std::optional<CaptureScenario> capture;
};

// JSON with the field names of the structs; see README for the schema.
// Parsing validates every section it finds.
ScenarioFile load_scenario_file(const std::filesystem::path& path);
ScenarioFile parse_scenario(const std::string& text);
std::string serialize_scenario(const ScenarioFile& file);
void save_scenario_file(const ScenarioFile& file, const std::filesystem::path& path);

}  // namespace cabalsim
