#pragma once

#include <span>
#include <vector>

#include "wildfire/domain.hpp"

namespace wildfire {

/// Closed patrol tour that leaves from and returns to its depot edge.
struct Route {
  int uav_id = 0;
  int depot = 0;               // edge id
  std::vector<int> waypoints;  // sensor ids in visiting order
  double length_m = 0.0;
  double revisit_s = 0.0;
  double energy_wh = 0.0;
};

/// Visiting order (indices into points) built greedily from the depot; ties to the lowest index.
std::vector<int> nearest_neighbor_tour(Point2D depot, std::span<const Point2D> points);

/// Length of depot -> points[order...] -> depot.
double tour_length(Point2D depot, std::span<const Point2D> points, std::span<const int> order);

/// First-improvement 2-opt over the closed tour, depot legs included and the depot pinned.
/// Restarts the scan after every applied reversal; returns a 2-opt local optimum.
std::vector<int> two_opt(std::vector<int> order, Point2D depot, std::span<const Point2D> points);

/// Flight plus radio energy in Wh for a tour of length_m collecting total_alpha_mb.
double route_energy(double length_m, double total_alpha_mb, const PhysicalParams& p);

enum class RouteImprovement { kNone, kTwoOpt };

/// Nearest-neighbor tour over the members, optionally improved by 2-opt, with metrics filled in.
Route build_route(int uav_id, const EdgeNode& depot, std::span<const int> members,
                  std::span<const Sensor> sensors, const PhysicalParams& p,
                  RouteImprovement improve);

/// Metrics for a fixed waypoint order.
Route make_route(int uav_id, const EdgeNode& depot, std::vector<int> waypoints,
                 std::span<const Sensor> sensors, const PhysicalParams& p);

}  // namespace wildfire
