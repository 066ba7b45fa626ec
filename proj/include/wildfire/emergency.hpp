#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "wildfire/edge_assignment.hpp"
#include "wildfire/plan.hpp"
#include "wildfire/random.hpp"
#include "wildfire/scenario.hpp"

namespace wildfire {

enum class UavMode { kPatrol, kToAlert, kToEdge, kReturning };

/// Snapshot of one UAV at a decision instant.
struct UavState {
  int uav_id = 0;
  UavMode mode = UavMode::kPatrol;
  double arc_position = 0.0;  // meters along the closed tour while patrolling
  Point2D pos;
};

struct EmergencyEvent {
  int sensor_id = 0;
  double alert_time_s = 0.0;

  friend bool operator==(const EmergencyEvent&, const EmergencyEvent&) = default;
};

/// Closed polyline depot -> waypoints -> depot of a route.
std::vector<Point2D> tour_polyline(const Route& route, std::span<const Sensor> sensors,
                                   std::span<const EdgeNode> edges);

/// Point at arc length s (taken modulo the perimeter) along a closed polyline.
Point2D point_at_arc(std::span<const Point2D> polyline, double s);

/// Position of a patrolling UAV after t_s seconds from arc offset phase_m.
Point2D uav_position_at(const Route& route, std::span<const Sensor> sensors,
                        std::span<const EdgeNode> edges, double v_g, double t_s,
                        double phase_m = 0.0);

/// Available UAV minimizing d(uav, sensor) + d(sensor, nearest edge); ties to the lowest id.
/// Returns -1 when no UAV is patrolling.
int select_dispatch_uav(std::span<const UavState> uavs, Point2D sensor,
                        std::span<const EdgeNode> edges);

struct DeliveryChoice {
  int edge_id = -1;
  bool fallback = false;  // every edge was at or above the threshold
};

/// Nearest edge with utilization below theta_max, else the least-utilized edge (flagged).
DeliveryChoice select_delivery_edge(Point2D sensor, std::span<const EdgeNode> edges,
                                    const EdgeLoadState& load, double theta_max);

/// Index into route.waypoints of the waypoint nearest to pos; ties to the earliest index.
/// Returns -1 (the depot) for an empty route.
int resume_waypoint(Point2D pos, const Route& route, std::span<const Sensor> sensors);

/// Lowest-score reachable edge under the placement score with utilization as the load term.
/// Throws std::runtime_error when nothing is reachable.
int fallback_edge(Point2D uav_pos, std::span<const EdgeNode> edges, const EdgeLoadState& load,
                  std::span<const bool> reachable, const EdgeScoring& scoring);

enum class DispatchPolicy {
  kMinDetour,   // any patrolling UAV, chosen by total detour
  kOwnCluster,  // only the UAV of the alert sensor's cluster
};

struct SimOptions {
  double horizon_s = 86400.0;
  DispatchPolicy policy = DispatchPolicy::kMinDetour;
};

struct EmergencyTrace {
  int event_index = 0;
  int sensor_id = 0;
  double alert_time_s = 0.0;
  int priority = 0;           // fire history of the sensor
  int uav_id = -1;            // -1 for direct sensors
  int own_uav_id = -1;        // UAV whose cluster contains the sensor
  int edge_id = -1;
  bool edge_fallback = false;
  bool direct = false;        // served by an edge without dispatch
  double t_queue = 0.0;
  double t_dispatch_travel = 0.0;
  double t_tra = 0.0;
  double t_delivery_travel = 0.0;
  double t_exe = 0.0;
  double response_time_s = 0.0;
  double dispatch_time_s = 0.0;
  double resume_time_s = 0.0;
  int resume_waypoint = -1;   // sensor id, -1 for the depot
  bool deadline_met = false;
};

struct NormalImpactReport {
  double mean_without_s = 0.0;
  double mean_with_s = 0.0;
  double delta_s = 0.0;
  double delta_fraction = 0.0;
  std::vector<double> absence_s;  // per UAV, total time off patrol
};

struct SimResult {
  std::vector<EmergencyTrace> traces;
  NormalImpactReport impact;
  std::vector<double> initial_phase_m;
};

/// Event-driven run of normal patrol plus the dispatch, delivery and resumption protocol.
/// Events must be sorted by alert time and lie in [0, horizon). Phases are drawn from rng.
SimResult simulate(const Plan& plan, const Scenario& scenario, std::span<const EmergencyEvent> events,
                   const SimOptions& opts, double theta_max, Rng& rng);

/// Worst-case response for an own-cluster dispatch: 2 R_max/v + d_max_se/v + max t_tra + max t_exe.
double theorem2_bound(const Plan& plan, const Scenario& scenario, double theta_max);

/// Up to `count` UAV-served sensors with fire history above min_history, highest first (ties by
/// id), alerted at uniform times in [0, horizon) returned in time order.
std::vector<EmergencyEvent> auto_events(const Plan& plan, const Scenario& scenario, double horizon_s,
                                        Rng& rng, int count = 5, int min_history = 50);

}  // namespace wildfire
