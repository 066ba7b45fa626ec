#pragma once

#include <stdexcept>
#include <vector>

#include "wildfire/plan.hpp"
#include "wildfire/scenario.hpp"

namespace wildfire {

enum class PathKind { kDirect, kUavMediated };

struct ResponseBreakdown {
  double t_lat = 0.0;
  double t_tra = 0.0;
  double t_exe = 0.0;
  double t_wait = 0.0;
  double t_moving = 0.0;
  double t_total = 0.0;
  PathKind path_kind = PathKind::kDirect;
};

inline double transmission_time(double alpha_mb, double dr_mbps) {
  if (!(dr_mbps > 0.0)) throw std::invalid_argument("transmission_time: data rate must be > 0");
  return alpha_mb * kMegabitsPerMegabyte / dr_mbps;
}

inline double execution_time(double beta_mi, double c_mips) {
  if (!(c_mips > 0.0)) throw std::invalid_argument("execution_time: capacity must be > 0");
  return beta_mi / c_mips;
}

/// Mean wait for a patrolling UAV: half of the revisit period not covered by the radio window.
/// Clamped at zero once the window covers the whole period.
double expected_wait(double route_length_m, const PhysicalParams& p);

inline double moving_time(double d_m, double v_g) { return d_m / v_g; }

/// End-to-end response of one sensor's request under the plan. Throws std::invalid_argument if
/// the plan does not cover the sensor.
ResponseBreakdown response_time(int sensor_id, const Plan& plan, const Scenario& scenario);

/// Breakdowns for every sensor, indexed by sensor id.
std::vector<ResponseBreakdown> response_times(const Plan& plan, const Scenario& scenario);

double mean_response_time(const Plan& plan, const Scenario& scenario);

/// Total route length plus lambda-weighted transmission and execution time over all requests.
double objective(const Plan& plan, const Scenario& scenario, double lambda);

}  // namespace wildfire
