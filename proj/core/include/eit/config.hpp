#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "eit/probe.hpp"
#include "eit/scenario.hpp"

namespace eit {

struct MeshConfig {
  double h = 0.05;
  int refine = 0;
};

struct ProbeConfig {
  double x_star_angle = 0.0;
  double delta = 0.5;
  double eps = 0.1;
  std::vector<int> j_values{4, 8, 16, 32};
  double tau = kDefaultTau;
};

/// One scenario file. The measurement arc is mandatory; [mesh] and [probe]
/// fall back to defaults.
struct ScenarioConfig {
  Scenario scenario;
  std::optional<std::size_t> unknown_region;  // region flagged `unknown = true`
  MeshConfig mesh;
  ProbeConfig probe;
};

/// Two scenarios under [scenario_a] and [scenario_b] sharing [mesh] and [probe].
struct PairConfig {
  Scenario a;
  Scenario b;
  MeshConfig mesh;
  ProbeConfig probe;
};

/// Parsers throw Error(Config) on syntax errors, unknown keys, missing
/// required keys and wrong types, and Error(InvalidScenario) when the parsed
/// scenario fails validation.
ScenarioConfig parse_scenario_config(std::string_view text, std::string_view source = "config");
PairConfig parse_pair_config(std::string_view text, std::string_view source = "config");

ScenarioConfig load_scenario_config(const std::filesystem::path& path);
PairConfig load_pair_config(const std::filesystem::path& path);

/// Whole file contents; Error(Io) when unreadable.
std::string read_file(const std::filesystem::path& path);

/// "lo:hi:step" inclusive grid, or a comma separated list.
std::vector<double> parse_grid(std::string_view spec);

}  // namespace eit
