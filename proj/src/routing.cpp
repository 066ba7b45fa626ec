#include "wildfire/routing.hpp"

#include <algorithm>
#include <limits>

namespace wildfire {

namespace {

// Reversals must shorten the tour by more than this many meters; guards against flip-flopping
// on rounding noise.
constexpr double kMinGain = 1e-9;

}  // namespace

std::vector<int> nearest_neighbor_tour(Point2D depot, std::span<const Point2D> points) {
  const auto n = points.size();
  std::vector<int> order;
  order.reserve(n);
  std::vector<char> used(n, 0);
  Point2D at = depot;
  for (std::size_t step = 0; step < n; ++step) {
    std::size_t best = n;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
      if (used[i]) continue;
      const double d = distance(at, points[i]);
      if (d < best_d) {
        best_d = d;
        best = i;
      }
    }
    used[best] = 1;
    order.push_back(static_cast<int>(best));
    at = points[best];
  }
  return order;
}

double tour_length(Point2D depot, std::span<const Point2D> points, std::span<const int> order) {
  double total = 0.0;
  Point2D at = depot;
  for (int i : order) {
    total += distance(at, points[static_cast<std::size_t>(i)]);
    at = points[static_cast<std::size_t>(i)];
  }
  return total + distance(at, depot);
}

std::vector<int> two_opt(std::vector<int> order, Point2D depot, std::span<const Point2D> points) {
  const auto n = order.size();
  if (n < 3) return order;
  // Closed sequence: node 0 and node n + 1 are the depot.
  auto node = [&](std::size_t i) {
    return (i == 0 || i == n + 1) ? depot : points[static_cast<std::size_t>(order[i - 1])];
  };
  bool improved = true;
  while (improved) {
    improved = false;
    for (std::size_t i = 0; i + 2 <= n && !improved; ++i) {
      for (std::size_t k = i + 2; k <= n; ++k) {
        if (i == 0 && k == n) continue;  // both edges touch the depot
        const double before = distance(node(i), node(i + 1)) + distance(node(k), node(k + 1));
        const double after = distance(node(i), node(k)) + distance(node(i + 1), node(k + 1));
        if (after < before - kMinGain) {
          std::reverse(order.begin() + static_cast<std::ptrdiff_t>(i),
                       order.begin() + static_cast<std::ptrdiff_t>(k));
          improved = true;
          break;
        }
      }
    }
  }
  return order;
}

double route_energy(double length_m, double total_alpha_mb, const PhysicalParams& p) {
  const double flight_s = length_m / p.v_g;
  const double radio_s = total_alpha_mb * kMegabitsPerMegabyte / p.data_rate_mbps;
  return (p.p_fly_w * flight_s + p.p_comm_w * radio_s) / kSecondsPerHour;
}

Route make_route(int uav_id, const EdgeNode& depot, std::vector<int> waypoints,
                 std::span<const Sensor> sensors, const PhysicalParams& p) {
  Route r;
  r.uav_id = uav_id;
  r.depot = depot.id;
  r.waypoints = std::move(waypoints);
  double alpha = 0.0;
  Point2D at = depot.pos;
  for (int id : r.waypoints) {
    const auto& s = sensors[static_cast<std::size_t>(id)];
    r.length_m += distance(at, s.pos);
    at = s.pos;
    alpha += s.request.data_size_mb;
  }
  r.length_m += distance(at, depot.pos);
  r.revisit_s = r.length_m / p.v_g;
  r.energy_wh = route_energy(r.length_m, alpha, p);
  return r;
}

Route build_route(int uav_id, const EdgeNode& depot, std::span<const int> members,
                  std::span<const Sensor> sensors, const PhysicalParams& p,
                  RouteImprovement improve) {
  std::vector<Point2D> pts;
  pts.reserve(members.size());
  for (int id : members) pts.push_back(sensors[static_cast<std::size_t>(id)].pos);
  auto order = nearest_neighbor_tour(depot.pos, pts);
  if (improve == RouteImprovement::kTwoOpt) order = two_opt(std::move(order), depot.pos, pts);
  std::vector<int> waypoints;
  waypoints.reserve(order.size());
  for (int i : order) waypoints.push_back(members[static_cast<std::size_t>(i)]);
  return make_route(uav_id, depot, std::move(waypoints), sensors, p);
}

}  // namespace wildfire
