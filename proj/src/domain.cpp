#include "wildfire/domain.hpp"

#include <string>

namespace wildfire {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(std::string("invalid parameter: ") + what);
}

}  // namespace

void validate(const PhysicalParams& p) {
  require(p.area_km2 > 0.0, "area_km2 must be > 0");
  require(p.r_s > 0.0 && p.r_g > 0.0 && p.r_e > 0.0, "communication ranges must be > 0");
  require(p.data_rate_mbps > 0.0, "data_rate_mbps must be > 0");
  require(p.v_g > 0.0, "v_g must be > 0");
  require(p.p_fly_w > 0.0 && p.p_comm_w > 0.0, "power draws must be > 0");
  require(p.e_max_wh > 0.0, "e_max_wh must be > 0");
  require(p.t_max_s > 0.0 && p.t_period_s > 0.0 && p.t_urgent_s > 0.0, "time limits must be > 0");
  require(p.t_urgent_s <= p.t_max_s, "t_urgent_s must not exceed t_max_s");
  require(p.m_max >= 1, "m_max must be >= 1");
  require(p.per_hop_latency_s >= 0.0, "per_hop_latency_s must be >= 0");
}

void validate(const AlgoParams& a) {
  require(a.omega_h >= 0.0, "omega_h must be >= 0");
  require(a.omega_d >= 0.0 && a.omega_d <= 1.0 && a.omega_l >= 0.0 && a.omega_l <= 1.0,
          "omega_d and omega_l must lie in [0,1]");
  require(std::abs(a.omega_d + a.omega_l - 1.0) <= 1e-9, "omega_d + omega_l must equal 1");
  require(a.theta_max > 0.0 && a.theta_max <= 1.0, "theta_max must lie in (0,1]");
  require(a.epsilon_m > 0.0, "epsilon_m must be > 0");
  require(a.lambda >= 0.0, "lambda must be >= 0");
  require(a.kmeans_max_iters >= 1, "kmeans_max_iters must be >= 1");
}

SensorPartition partition_sensors(std::span<const Sensor> sensors, std::span<const EdgeNode> edges,
                                  const PhysicalParams& p) {
  const double r_se = link_ranges(p).sensor_edge;
  SensorPartition out;
  for (const auto& s : sensors) {
    bool reachable = false;
    for (const auto& e : edges) {
      if (distance(s.pos, e.pos) <= r_se) {
        reachable = true;
        break;
      }
    }
    (reachable ? out.direct : out.uav).push_back(s.id);
  }
  return out;
}

}  // namespace wildfire
