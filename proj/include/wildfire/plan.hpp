#pragma once

#include <string>
#include <vector>

#include "wildfire/clustering.hpp"
#include "wildfire/domain.hpp"
#include "wildfire/edge_assignment.hpp"
#include "wildfire/routing.hpp"

namespace wildfire {

/// Output of any planner: fleet size, clusters, edge mapping and one patrol route per UAV.
struct Plan {
  std::string method;
  int m = 0;
  SensorPartition partition;
  Clustering clustering;
  Assignment assignment;
  std::vector<Route> routes;  // routes[j] serves cluster j
  double planning_time_s = 0.0;

  double total_length_m() const;
  double total_energy_wh() const;
};

}  // namespace wildfire
