#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "sectorlab/dynamics.hpp"
#include "sectorlab/integer_set.hpp"
#include "sectorlab/lp.hpp"
#include "sectorlab/sets.hpp"
#include "sectorlab/weights.hpp"

namespace sectorlab {

/// Scenario document after validation, with every default filled in.
struct ScenarioConfig {
  Sector sector{0.7853981633974483};
  Weight weight = Weight::exp_decay();
  double p = 1.0;
  std::optional<IntegerSet> K;
  double schedule_r0 = 1.0;
  double schedule_gamma = 1.25;
  int schedule_count = 24;
  std::size_t window = 6;
  GridResolution grid;
  std::uint64_t seed = 42;
  std::optional<RectUnionSet> set;
  std::optional<SectorFunction> function;
  nlohmann::json horizons = nlohmann::json::object();
  nlohmann::json thresholds = nlohmann::json::object();
  std::string out_dir = ".";
  /// Input document with defaults merged in.
  nlohmann::json resolved;

  RadiusSchedule schedule() const;
  /// Schedule reaching `horizon` with the configured r0 and gamma.
  RadiusSchedule schedule_to(double horizon) const;
};

/// Throws ConfigError on any schema violation.
ScenarioConfig load_scenario(const nlohmann::json& doc);
ScenarioConfig load_scenario_file(const std::string& path);

/// "3+1i", "2-i", "1.5", [x, y] or {"x": .., "y": ..}.
Complex parse_complex(const nlohmann::json& j);
Weight parse_weight(const nlohmann::json& j);
IntegerSet parse_integer_set(const nlohmann::json& j);
/// JSON array of {r_lo, r_hi, th_lo, th_hi}.
RectUnionSet parse_set_literal(const nlohmann::json& j, const Sector& sector);
nlohmann::json to_json(const RectUnionSet& set);
/// {kind, params, offset}.
SectorFunction parse_function(const nlohmann::json& j, const Sector& sector);

/// Packaged scenario text for a reproducer id, embedded at build time.
std::optional<std::string> builtin_scenario(const std::string& id);

}  // namespace sectorlab
