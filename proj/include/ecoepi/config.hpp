#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "ecoepi/dynamics.hpp"
#include "ecoepi/params.hpp"

namespace ecoepi {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct OutputTargets {
  std::string csv;
  std::string svg;
  std::string report;

  bool any() const { return !csv.empty() || !svg.empty() || !report.empty(); }
  friend bool operator==(const OutputTargets&, const OutputTargets&) = default;
};

// Sections a subcommand requires in its scenario file.
struct RequiredSections {
  bool initial = false;
  bool integrate = false;
};

// A parsed scenario: [model] + [params] always, [initial] / [integrate] when
// the subcommand needs them, [output] optional.
struct ScenarioConfig {
  ParameterSet params;
  std::optional<State> initial;
  std::optional<IntegrationSettings> integrate;
  OutputTargets output;

  friend bool operator==(const ScenarioConfig&, const ScenarioConfig&) = default;
};

// Parses a key = value scenario file with bracketed section headers and
// full-line # comments. Unknown sections or keys, duplicate keys, malformed
// numbers and failed invariants are reported as ConfigError naming the file,
// line and key.
ScenarioConfig parse_scenario_file(const std::string& path, RequiredSections required);
ScenarioConfig parse_scenario_text(std::string_view text, const std::string& filename,
                                   RequiredSections required);

// Canonical rendering; reparsing the dump yields an identical ScenarioConfig.
std::string dump_scenario(const ScenarioConfig& config);

}  // namespace ecoepi
