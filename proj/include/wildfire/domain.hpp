#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace wildfire {

// Unit canon: meters, seconds, watt-hours, megabytes (8 megabits each), MI, MIPS.
inline constexpr double kMegabitsPerMegabyte = 8.0;
inline constexpr double kSecondsPerHour = 3600.0;

struct Point2D {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point2D&, const Point2D&) = default;
};

inline double distance(Point2D a, Point2D b) { return std::hypot(a.x - b.x, a.y - b.y); }

struct RequestProfile {
  double data_size_mb = 1.0;  // alpha
  double compute_mi = 100.0;  // beta

  friend bool operator==(const RequestProfile&, const RequestProfile&) = default;
};

struct Sensor {
  int id = 0;
  Point2D pos;
  int fire_history = 0;
  RequestProfile request;

  friend bool operator==(const Sensor&, const Sensor&) = default;
};

struct EdgeNode {
  int id = 0;
  Point2D pos;
  double capacity_mips = 5000.0;

  friend bool operator==(const EdgeNode&, const EdgeNode&) = default;
};

struct PhysicalParams {
  double area_km2 = 100.0;
  double r_s = 500.0;
  double r_g = 1000.0;
  double r_e = 2000.0;
  double data_rate_mbps = 10.0;
  double v_g = 15.0;
  double p_fly_w = 100.0;
  double p_comm_w = 5.0;
  double e_max_wh = 500.0;
  double t_max_s = 3600.0;
  double t_period_s = 3600.0;
  double t_urgent_s = 300.0;
  int m_max = 20;
  double per_hop_latency_s = 0.0;

  friend bool operator==(const PhysicalParams&, const PhysicalParams&) = default;

  /// Side of the square monitoring region in meters.
  double side_m() const { return std::sqrt(area_km2 * 1.0e6); }
  double diagonal_m() const { return side_m() * std::sqrt(2.0); }
};

enum class FleetInitMode { kOne, kDiskCoverage };

struct AlgoParams {
  double omega_h = 1.5;
  double omega_d = 0.7;
  double omega_l = 0.3;
  double lambda = 0.1;
  double epsilon_m = 10.0;
  double theta_max = 0.8;
  std::uint64_t seed = 0;
  FleetInitMode fleet_init_mode = FleetInitMode::kOne;
  int kmeans_max_iters = 300;
};

/// Throws std::invalid_argument naming the first violated invariant.
void validate(const PhysicalParams& p);
void validate(const AlgoParams& a);

struct LinkRanges {
  double sensor_uav = 0.0;   // r_sg
  double uav_edge = 0.0;     // r_ge
  double sensor_edge = 0.0;  // r_se

  friend bool operator==(const LinkRanges&, const LinkRanges&) = default;
};

/// Each link is limited by its shorter-range endpoint.
inline LinkRanges link_ranges(const PhysicalParams& p) {
  return {std::min(p.r_g, p.r_s), std::min(p.r_g, p.r_e), std::min(p.r_s, p.r_e)};
}

inline bool inside_square(Point2D q, double side) {
  return std::isfinite(q.x) && std::isfinite(q.y) && q.x >= 0.0 && q.y >= 0.0 && q.x <= side &&
         q.y <= side;
}

/// Sensors reachable by some edge within r_se (inclusive) versus those needing a UAV relay.
/// Both lists hold sensor ids in ascending order.
struct SensorPartition {
  std::vector<int> direct;
  std::vector<int> uav;
};

SensorPartition partition_sensors(std::span<const Sensor> sensors, std::span<const EdgeNode> edges,
                                  const PhysicalParams& p);

}  // namespace wildfire
