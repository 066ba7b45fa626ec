#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "wildfire/domain.hpp"

namespace wildfire {

inline constexpr int kScenarioSchemaVersion = 1;

struct GenConfig {
  int n_sensors = 200;
  int n_edges = 5;
  int n_hotspots = 3;
  double hotspot_fraction = 0.6;
  double hotspot_sigma_m = 800.0;
  int fire_history_max = 100;
  std::pair<double, double> alpha_range_mb{1.0, 5.0};
  std::pair<double, double> beta_range_mi{100.0, 500.0};
  std::pair<double, double> edge_capacity_range_mips{5000.0, 10000.0};
  std::uint64_t seed = 0;
};

/// Throws std::invalid_argument on a malformed configuration.
void validate(const GenConfig& cfg);

struct Hotspot {
  Point2D center;
  double sigma_m = 0.0;

  friend bool operator==(const Hotspot&, const Hotspot&) = default;
};

struct ScenarioMeta {
  std::uint64_t seed = 0;
  std::string edge_placement = "uniform";
  std::vector<Hotspot> hotspots;
  /// Hotspot index each sensor was drawn from, -1 for background sensors.
  std::vector<int> sensor_hotspot;

  friend bool operator==(const ScenarioMeta&, const ScenarioMeta&) = default;
};

struct Scenario {
  std::vector<Sensor> sensors;
  std::vector<EdgeNode> edges;
  PhysicalParams physical;
  ScenarioMeta meta;

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

/// Gaussian-mixture hotspots over a uniform background, edges uniform over the square.
Scenario generate(const GenConfig& cfg, const PhysicalParams& p);

/// Checks every Scenario invariant; throws std::invalid_argument.
void validate(const Scenario& s);

class ScenarioParseError : public std::runtime_error {
 public:
  ScenarioParseError(std::string field, std::size_t line, const std::string& message)
      : std::runtime_error(format(field, line, message)), field_(std::move(field)), line_(line) {}

  const std::string& field() const { return field_; }
  /// 1-based line of the offending entry, 0 when unknown.
  std::size_t line() const { return line_; }

 private:
  static std::string format(const std::string& field, std::size_t line, const std::string& msg) {
    return "scenario parse error at line " + std::to_string(line) + ", field '" + field +
           "': " + msg;
  }

  std::string field_;
  std::size_t line_;
};

/// One sensor or edge per line so files diff cleanly.
std::string to_json_text(const Scenario& s);
Scenario from_json_text(const std::string& text);

void save(const Scenario& s, const std::filesystem::path& path);
Scenario load(const std::filesystem::path& path);

}  // namespace wildfire
