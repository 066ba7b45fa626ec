#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "wildfire/domain.hpp"
#include "wildfire/random.hpp"
#include "wildfire/scenario.hpp"

namespace wildfire {

/// Partition of the UAV-served sensors into m clusters.
struct Clustering {
  int m = 0;
  std::vector<int> sensor_ids;  // clustered sensors, ascending id
  std::vector<int> labels;      // labels[i] is the cluster of sensor_ids[i]
  std::vector<Point2D> centers;
  int iterations_run = 0;

  /// Sensor ids per cluster, each list ascending.
  std::vector<std::vector<int>> groups() const;
  /// Cluster of a sensor id, -1 if the sensor is not clustered.
  int cluster_of(int sensor_id) const;
};

struct WeightedSensor {
  int id = 0;
  Point2D pos;
  double weight = 1.0;
};

inline double sensor_weight(int fire_history, double omega_h) {
  return 1.0 + omega_h * static_cast<double>(fire_history);
}

/// Risk-scaled distance: factor (2 - w/w_max) lies in [1, 2] and shrinks for risky sensors.
inline double weighted_distance(double d, double w, double w_max) { return d * (2.0 - w / w_max); }

std::vector<WeightedSensor> weigh(std::span<const Sensor> sensors, std::span<const int> ids,
                                  double omega_h);

/// m <= p: m distinct edge positions drawn without replacement.
/// m > p: every edge position, then the (m - p) heaviest sensors (ties by lowest id).
std::vector<Point2D> init_centers(int m, std::span<const EdgeNode> edges,
                                  std::span<const WeightedSensor> sensors, Rng& rng);

struct KMeansOptions {
  double epsilon_m = 10.0;
  int max_iters = 300;
};

/// Lloyd iterations from the given centers: assign by risk-scaled distance (ties to the lowest
/// center id), refill empty clusters with the weighted-farthest sensor, then move each center to
/// its members' weighted centroid. Stops once every center moves less than epsilon_m.
Clustering weighted_kmeans_from(std::span<const WeightedSensor> sensors,
                                std::vector<Point2D> centers, const KMeansOptions& opts);

Clustering weighted_kmeans(std::span<const WeightedSensor> sensors, int m,
                           std::span<const EdgeNode> edges, const KMeansOptions& opts, Rng& rng);

/// Weighted centroid of the given sensors.
Point2D weighted_centroid(std::span<const WeightedSensor> members);

/// Sum over clustered sensors of w * d(s, c)^2 for the given labels and centers.
double weighted_sse(std::span<const WeightedSensor> sensors, std::span<const int> labels,
                    std::span<const Point2D> centers);

/// Max member-to-center distance per cluster; 0 for empty clusters.
std::vector<double> cluster_radius(const Clustering& c, std::span<const Sensor> sensors);

struct Theorem1Result {
  double lhs = 0.0;  // mean high-risk radius, weighted clustering
  double rhs = 0.0;  // factor * mean high-risk radius, unweighted clustering
  bool holds = false;
  double factor = 1.0;
  double mean_high_weight = 0.0;
  double max_weight = 0.0;
  double weighted_radius = 0.0;
  double unweighted_radius = 0.0;
  std::vector<double> per_seed_weighted;
  std::vector<double> per_seed_unweighted;
};

/// Runs weighted and unweighted k-means from identical initial centers for each seed and compares
/// the mean cluster radius seen by sensors with fire history against the risk-aware bound.
/// Throws std::invalid_argument when no UAV-served sensor has fire history.
Theorem1Result theorem1_check(const Scenario& scenario, int m, double omega_h,
                              std::span<const std::uint64_t> seeds,
                              const KMeansOptions& opts = {});

}  // namespace wildfire
