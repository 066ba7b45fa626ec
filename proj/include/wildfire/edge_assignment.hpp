#pragma once

#include <map>
#include <optional>
#include <span>
#include <vector>

#include "wildfire/domain.hpp"

namespace wildfire {

/// Per-edge demand in MIPS (sum of beta / T_period) against capacity.
struct EdgeLoadState {
  std::vector<double> load;
  std::vector<double> capacity;

  explicit EdgeLoadState(std::span<const EdgeNode> edges = {});

  double utilization(int k) const {
    return load[static_cast<std::size_t>(k)] / capacity[static_cast<std::size_t>(k)];
  }
  double excess() const;
  bool overloaded() const { return excess() > 0.0; }
};

struct Assignment {
  std::map<int, int> direct_map;  // sensor id -> edge id
  std::vector<int> cluster_map;   // cluster id -> edge id
  EdgeLoadState load;
};

/// Scoring knobs shared by cluster placement, overload repair and fallback delivery.
struct EdgeScoring {
  double omega_d = 0.7;
  double omega_l = 0.3;
  double distance_norm_m = 1.0;  // diagonal of the monitoring square
};

struct DirectAssignment {
  std::map<int, int> direct_map;
  EdgeLoadState load;
};

/// Each direct sensor goes to its nearest edge within r_se (ties to the lowest edge id).
DirectAssignment assign_direct(std::span<const Sensor> sensors, std::span<const int> direct_ids,
                               std::span<const EdgeNode> edges, const PhysicalParams& p);

/// Aggregate demand of a cluster in MIPS.
double cluster_demand(std::span<const Sensor> sensors, std::span<const int> members,
                      double t_period_s);

/// Mean member-to-edge distance; 0 for an empty cluster.
double mean_distance(std::span<const Sensor> sensors, std::span<const int> members, Point2D at);

/// Placement score of a cluster on an edge given the edge's load before placement.
double placement_score(double mean_dist_m, double load_before, double demand, double capacity,
                       const EdgeScoring& scoring);

/// Clusters in ascending id order, each to the lowest-score edge; loads updated after each one.
std::vector<int> assign_clusters(const std::vector<std::vector<int>>& clusters,
                                 std::span<const Sensor> sensors, std::span<const EdgeNode> edges,
                                 EdgeLoadState& load, const PhysicalParams& p,
                                 const EdgeScoring& scoring);

struct RepairResult {
  bool ok = false;
  std::vector<int> cluster_map;
  EdgeLoadState load;
  int moves = 0;
};

/// Repeatedly takes the most overloaded edge and moves its least-demanding cluster to the
/// lowest-score edge that can absorb it. Fails when no cluster on that edge can move.
RepairResult repair_overload(std::vector<int> cluster_map,
                             const std::vector<std::vector<int>>& clusters,
                             std::span<const Sensor> sensors, std::span<const EdgeNode> edges,
                             EdgeLoadState load, const PhysicalParams& p,
                             const EdgeScoring& scoring);

/// Direct phase, cluster phase and repair. Empty when the repair fails.
std::optional<Assignment> assign_edges(const std::vector<std::vector<int>>& clusters,
                                       std::span<const Sensor> sensors,
                                       std::span<const int> direct_ids,
                                       std::span<const EdgeNode> edges, const PhysicalParams& p,
                                       const EdgeScoring& scoring);

}  // namespace wildfire
