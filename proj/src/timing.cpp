#include "wildfire/timing.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace wildfire {

double Plan::total_length_m() const {
  double total = 0.0;
  for (const auto& r : routes) total += r.length_m;
  return total;
}

double Plan::total_energy_wh() const {
  double total = 0.0;
  for (const auto& r : routes) total += r.energy_wh;
  return total;
}

double expected_wait(double route_length_m, const PhysicalParams& p) {
  const double revisit = route_length_m / p.v_g;
  const double window = 2.0 * link_ranges(p).sensor_uav / p.v_g;
  return std::max(0.0, (revisit - window) / 2.0);
}

ResponseBreakdown response_time(int sensor_id, const Plan& plan, const Scenario& scenario) {
  if (sensor_id < 0 || static_cast<std::size_t>(sensor_id) >= scenario.sensors.size())
    throw std::invalid_argument("response_time: unknown sensor " + std::to_string(sensor_id));
  const auto& p = scenario.physical;
  const auto& s = scenario.sensors[static_cast<std::size_t>(sensor_id)];
  ResponseBreakdown b;
  int edge = -1;
  if (auto it = plan.assignment.direct_map.find(sensor_id); it != plan.assignment.direct_map.end()) {
    edge = it->second;
    b.path_kind = PathKind::kDirect;
    b.t_lat = p.per_hop_latency_s;
  } else {
    const int j = plan.clustering.cluster_of(sensor_id);
    if (j < 0 || static_cast<std::size_t>(j) >= plan.assignment.cluster_map.size())
      throw std::invalid_argument("response_time: sensor " + std::to_string(sensor_id) +
                                  " is not covered by the plan");
    edge = plan.assignment.cluster_map[static_cast<std::size_t>(j)];
    b.path_kind = PathKind::kUavMediated;
    b.t_lat = 2.0 * p.per_hop_latency_s;
    b.t_wait = expected_wait(plan.routes[static_cast<std::size_t>(j)].length_m, p);
    const auto& center = plan.clustering.centers[static_cast<std::size_t>(j)];
    b.t_moving = moving_time(distance(center, scenario.edges[static_cast<std::size_t>(edge)].pos), p.v_g);
  }
  b.t_tra = transmission_time(s.request.data_size_mb, p.data_rate_mbps);
  b.t_exe = execution_time(s.request.compute_mi,
                           scenario.edges[static_cast<std::size_t>(edge)].capacity_mips);
  b.t_total = b.t_lat + b.t_tra + b.t_exe + b.t_wait + b.t_moving;
  return b;
}

std::vector<ResponseBreakdown> response_times(const Plan& plan, const Scenario& scenario) {
  std::vector<ResponseBreakdown> out;
  out.reserve(scenario.sensors.size());
  for (const auto& s : scenario.sensors) out.push_back(response_time(s.id, plan, scenario));
  return out;
}

double mean_response_time(const Plan& plan, const Scenario& scenario) {
  const auto all = response_times(plan, scenario);
  double total = 0.0;
  for (const auto& b : all) total += b.t_total;
  return total / static_cast<double>(all.size());
}

double objective(const Plan& plan, const Scenario& scenario, double lambda) {
  double processing = 0.0;
  for (const auto& b : response_times(plan, scenario)) processing += b.t_tra + b.t_exe;
  return plan.total_length_m() + lambda * processing;
}

}  // namespace wildfire
