#include "wildfire/edge_assignment.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace wildfire {

EdgeLoadState::EdgeLoadState(std::span<const EdgeNode> edges)
    : load(edges.size(), 0.0), capacity() {
  capacity.reserve(edges.size());
  for (const auto& e : edges) capacity.push_back(e.capacity_mips);
}

double EdgeLoadState::excess() const {
  double total = 0.0;
  for (std::size_t k = 0; k < load.size(); ++k) total += std::max(0.0, load[k] - capacity[k]);
  return total;
}

DirectAssignment assign_direct(std::span<const Sensor> sensors, std::span<const int> direct_ids,
                               std::span<const EdgeNode> edges, const PhysicalParams& p) {
  const double r_se = link_ranges(p).sensor_edge;
  DirectAssignment out{{}, EdgeLoadState(edges)};
  for (int id : direct_ids) {
    const auto& s = sensors[static_cast<std::size_t>(id)];
    int best = -1;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < edges.size(); ++k) {
      const double d = distance(s.pos, edges[k].pos);
      if (d <= r_se && d < best_d) {
        best_d = d;
        best = static_cast<int>(k);
      }
    }
    if (best < 0) throw std::invalid_argument("assign_direct: sensor has no edge within r_se");
    out.direct_map.emplace(id, best);
    out.load.load[static_cast<std::size_t>(best)] += s.request.compute_mi / p.t_period_s;
  }
  return out;
}

double cluster_demand(std::span<const Sensor> sensors, std::span<const int> members,
                      double t_period_s) {
  double beta = 0.0;
  for (int id : members) beta += sensors[static_cast<std::size_t>(id)].request.compute_mi;
  return beta / t_period_s;
}

double mean_distance(std::span<const Sensor> sensors, std::span<const int> members, Point2D at) {
  if (members.empty()) return 0.0;
  double total = 0.0;
  for (int id : members) total += distance(sensors[static_cast<std::size_t>(id)].pos, at);
  return total / static_cast<double>(members.size());
}

double placement_score(double mean_dist_m, double load_before, double demand, double capacity,
                       const EdgeScoring& scoring) {
  return scoring.omega_d * (mean_dist_m / scoring.distance_norm_m) +
         scoring.omega_l * (load_before + demand) / capacity;
}

std::vector<int> assign_clusters(const std::vector<std::vector<int>>& clusters,
                                 std::span<const Sensor> sensors, std::span<const EdgeNode> edges,
                                 EdgeLoadState& load, const PhysicalParams& p,
                                 const EdgeScoring& scoring) {
  std::vector<int> map;
  map.reserve(clusters.size());
  for (const auto& members : clusters) {
    const double beta = cluster_demand(sensors, members, p.t_period_s);
    int best = 0;
    double best_score = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < edges.size(); ++k) {
      const double score = placement_score(mean_distance(sensors, members, edges[k].pos),
                                           load.load[k], beta, load.capacity[k], scoring);
      if (score < best_score) {
        best_score = score;
        best = static_cast<int>(k);
      }
    }
    load.load[static_cast<std::size_t>(best)] += beta;
    map.push_back(best);
  }
  return map;
}

RepairResult repair_overload(std::vector<int> cluster_map,
                             const std::vector<std::vector<int>>& clusters,
                             std::span<const Sensor> sensors, std::span<const EdgeNode> edges,
                             EdgeLoadState load, const PhysicalParams& p,
                             const EdgeScoring& scoring) {
  RepairResult res{false, std::move(cluster_map), std::move(load), 0};
  auto& map = res.cluster_map;
  auto& ld = res.load;
  std::vector<double> demand;
  for (const auto& members : clusters) demand.push_back(cluster_demand(sensors, members, p.t_period_s));

  while (true) {
    int worst = -1;
    double worst_over = 0.0;
    for (std::size_t k = 0; k < ld.load.size(); ++k) {
      const double over = ld.load[k] - ld.capacity[k];
      if (over > worst_over) {
        worst_over = over;
        worst = static_cast<int>(k);
      }
    }
    if (worst < 0) {
      res.ok = true;
      return res;
    }

    // Movable clusters on the worst edge, least demanding first.
    std::vector<int> candidates;
    for (std::size_t j = 0; j < map.size(); ++j)
      if (map[j] == worst && demand[j] > 0.0) candidates.push_back(static_cast<int>(j));
    std::stable_sort(candidates.begin(), candidates.end(), [&](int a, int b) {
      return demand[static_cast<std::size_t>(a)] < demand[static_cast<std::size_t>(b)];
    });

    bool moved = false;
    for (int j : candidates) {
      const double beta = demand[static_cast<std::size_t>(j)];
      const auto& members = clusters[static_cast<std::size_t>(j)];
      int target = -1;
      double best_score = std::numeric_limits<double>::infinity();
      for (std::size_t k = 0; k < edges.size(); ++k) {
        if (static_cast<int>(k) == worst || ld.load[k] + beta > ld.capacity[k]) continue;
        const double score = placement_score(mean_distance(sensors, members, edges[k].pos),
                                             ld.load[k], beta, ld.capacity[k], scoring);
        if (score < best_score) {
          best_score = score;
          target = static_cast<int>(k);
        }
      }
      if (target < 0) continue;
      ld.load[static_cast<std::size_t>(worst)] -= beta;
      ld.load[static_cast<std::size_t>(target)] += beta;
      map[static_cast<std::size_t>(j)] = target;
      ++res.moves;
      moved = true;
      break;
    }
    if (!moved) return res;
  }
}

std::optional<Assignment> assign_edges(const std::vector<std::vector<int>>& clusters,
                                       std::span<const Sensor> sensors,
                                       std::span<const int> direct_ids,
                                       std::span<const EdgeNode> edges, const PhysicalParams& p,
                                       const EdgeScoring& scoring) {
  auto direct = assign_direct(sensors, direct_ids, edges, p);
  auto map = assign_clusters(clusters, sensors, edges, direct.load, p, scoring);
  if (!direct.load.overloaded())
    return Assignment{std::move(direct.direct_map), std::move(map), std::move(direct.load)};
  auto repaired = repair_overload(std::move(map), clusters, sensors, edges, std::move(direct.load),
                                  p, scoring);
  if (!repaired.ok) return std::nullopt;
  return Assignment{std::move(direct.direct_map), std::move(repaired.cluster_map),
                    std::move(repaired.load)};
}

}  // namespace wildfire
