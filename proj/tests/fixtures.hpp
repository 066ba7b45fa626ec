#pragma once

#include <vector>

#include "wildfire/scenario.hpp"

namespace wftest {

using namespace wildfire;

inline Sensor sensor(int id, double x, double y, int h = 0, double alpha = 1.0, double beta = 100.0) {
  Sensor s;
  s.id = id;
  s.pos = {x, y};
  s.fire_history = h;
  s.request = {alpha, beta};
  return s;
}

inline EdgeNode edge(int id, double x, double y, double cap = 5000.0) {
  EdgeNode e;
  e.id = id;
  e.pos = {x, y};
  e.capacity_mips = cap;
  return e;
}

inline Scenario scenario(std::vector<Sensor> sensors, std::vector<EdgeNode> edges,
                         PhysicalParams p = {}) {
  Scenario s;
  s.sensors = std::move(sensors);
  s.edges = std::move(edges);
  s.physical = p;
  s.meta.sensor_hotspot.assign(s.sensors.size(), -1);
  return s;
}

inline Scenario default_scenario(std::uint64_t seed, int n = 200) {
  GenConfig cfg;
  cfg.seed = seed;
  cfg.n_sensors = n;
  return generate(cfg, PhysicalParams{});
}

}  // namespace wftest
