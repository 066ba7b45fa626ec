#include "wildfire/clustering.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace wildfire {

std::vector<std::vector<int>> Clustering::groups() const {
  std::vector<std::vector<int>> out(static_cast<std::size_t>(m));
  for (std::size_t i = 0; i < sensor_ids.size(); ++i)
    out[static_cast<std::size_t>(labels[i])].push_back(sensor_ids[i]);
  return out;
}

int Clustering::cluster_of(int sensor_id) const {
  auto it = std::lower_bound(sensor_ids.begin(), sensor_ids.end(), sensor_id);
  if (it == sensor_ids.end() || *it != sensor_id) return -1;
  return labels[static_cast<std::size_t>(it - sensor_ids.begin())];
}

std::vector<WeightedSensor> weigh(std::span<const Sensor> sensors, std::span<const int> ids,
                                  double omega_h) {
  std::vector<WeightedSensor> out;
  out.reserve(ids.size());
  for (int id : ids) {
    const auto& s = sensors[static_cast<std::size_t>(id)];
    out.push_back({s.id, s.pos, sensor_weight(s.fire_history, omega_h)});
  }
  return out;
}

std::vector<Point2D> init_centers(int m, std::span<const EdgeNode> edges,
                                  std::span<const WeightedSensor> sensors, Rng& rng) {
  if (m < 1) throw std::invalid_argument("init_centers: m must be >= 1");
  const auto p = static_cast<int>(edges.size());
  if (m > p + static_cast<int>(sensors.size()))
    throw std::invalid_argument("init_centers: not enough edges and sensors to seed m centers");

  std::vector<Point2D> centers;
  if (m <= p) {
    // Partial Fisher-Yates: one draw per chosen center.
    std::vector<int> idx(static_cast<std::size_t>(p));
    std::iota(idx.begin(), idx.end(), 0);
    for (int i = 0; i < m; ++i) {
      const auto j = static_cast<int>(rng.uniform_int(i, p - 1));
      std::swap(idx[static_cast<std::size_t>(i)], idx[static_cast<std::size_t>(j)]);
      centers.push_back(edges[static_cast<std::size_t>(idx[static_cast<std::size_t>(i)])].pos);
    }
    return centers;
  }
  for (const auto& e : edges) centers.push_back(e.pos);
  std::vector<std::size_t> order(sensors.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (sensors[a].weight != sensors[b].weight) return sensors[a].weight > sensors[b].weight;
    return sensors[a].id < sensors[b].id;
  });
  for (int i = 0; i < m - p; ++i) centers.push_back(sensors[order[static_cast<std::size_t>(i)]].pos);
  return centers;
}

Point2D weighted_centroid(std::span<const WeightedSensor> members) {
  double sx = 0.0, sy = 0.0, sw = 0.0;
  for (const auto& s : members) {
    sx += s.weight * s.pos.x;
    sy += s.weight * s.pos.y;
    sw += s.weight;
  }
  return {sx / sw, sy / sw};
}

double weighted_sse(std::span<const WeightedSensor> sensors, std::span<const int> labels,
                    std::span<const Point2D> centers) {
  double total = 0.0;
  for (std::size_t i = 0; i < sensors.size(); ++i) {
    const double d = distance(sensors[i].pos, centers[static_cast<std::size_t>(labels[i])]);
    total += sensors[i].weight * d * d;
  }
  return total;
}

Clustering weighted_kmeans_from(std::span<const WeightedSensor> sensors,
                                std::vector<Point2D> centers, const KMeansOptions& opts) {
  const auto m = static_cast<int>(centers.size());
  const auto n = sensors.size();
  if (m < 1) throw std::invalid_argument("weighted_kmeans: m must be >= 1");
  if (n < static_cast<std::size_t>(m))
    throw std::invalid_argument("weighted_kmeans: fewer sensors than clusters");

  double w_max = 0.0;
  for (const auto& s : sensors) w_max = std::max(w_max, s.weight);

  Clustering out;
  out.m = m;
  out.labels.assign(n, 0);
  for (const auto& s : sensors) out.sensor_ids.push_back(s.id);

  std::vector<double> scaled(n, 0.0);
  std::vector<int> counts(static_cast<std::size_t>(m), 0);
  for (int iter = 1; iter <= opts.max_iters; ++iter) {
    std::fill(counts.begin(), counts.end(), 0);
    for (std::size_t i = 0; i < n; ++i) {
      double best = std::numeric_limits<double>::infinity();
      int arg = 0;
      for (int j = 0; j < m; ++j) {
        const double d = weighted_distance(distance(sensors[i].pos, centers[static_cast<std::size_t>(j)]),
                                           sensors[i].weight, w_max);
        if (d < best) {
          best = d;
          arg = j;
        }
      }
      out.labels[i] = arg;
      scaled[i] = best;
      ++counts[static_cast<std::size_t>(arg)];
    }

    for (int j = 0; j < m; ++j) {
      if (counts[static_cast<std::size_t>(j)] > 0) continue;
      // Refill from the sensor farthest (risk-scaled) from its center, never emptying a cluster.
      std::size_t pick = n;
      for (std::size_t i = 0; i < n; ++i) {
        if (counts[static_cast<std::size_t>(out.labels[i])] < 2) continue;
        if (pick == n || scaled[i] > scaled[pick]) pick = i;
      }
      if (pick == n) break;
      --counts[static_cast<std::size_t>(out.labels[pick])];
      out.labels[pick] = j;
      ++counts[static_cast<std::size_t>(j)];
      scaled[pick] = 0.0;
      centers[static_cast<std::size_t>(j)] = sensors[pick].pos;
    }

    std::vector<double> sx(static_cast<std::size_t>(m), 0.0), sy(sx), sw(sx);
    for (std::size_t i = 0; i < n; ++i) {
      const auto j = static_cast<std::size_t>(out.labels[i]);
      sx[j] += sensors[i].weight * sensors[i].pos.x;
      sy[j] += sensors[i].weight * sensors[i].pos.y;
      sw[j] += sensors[i].weight;
    }
    double max_move = 0.0;
    for (std::size_t j = 0; j < static_cast<std::size_t>(m); ++j) {
      const Point2D next{sx[j] / sw[j], sy[j] / sw[j]};
      max_move = std::max(max_move, distance(next, centers[j]));
      centers[j] = next;
    }
    out.iterations_run = iter;
    if (max_move < opts.epsilon_m) break;
  }
  out.centers = std::move(centers);
  return out;
}

Clustering weighted_kmeans(std::span<const WeightedSensor> sensors, int m,
                           std::span<const EdgeNode> edges, const KMeansOptions& opts, Rng& rng) {
  if (m < 1) throw std::invalid_argument("weighted_kmeans: m must be >= 1");
  if (sensors.size() < static_cast<std::size_t>(m))
    throw std::invalid_argument("weighted_kmeans: fewer sensors than clusters");
  return weighted_kmeans_from(sensors, init_centers(m, edges, sensors, rng), opts);
}

std::vector<double> cluster_radius(const Clustering& c, std::span<const Sensor> sensors) {
  std::vector<double> r(static_cast<std::size_t>(c.m), 0.0);
  for (std::size_t i = 0; i < c.sensor_ids.size(); ++i) {
    const auto j = static_cast<std::size_t>(c.labels[i]);
    const auto& pos = sensors[static_cast<std::size_t>(c.sensor_ids[i])].pos;
    r[j] = std::max(r[j], distance(pos, c.centers[j]));
  }
  return r;
}

Theorem1Result theorem1_check(const Scenario& scenario, int m, double omega_h,
                              std::span<const std::uint64_t> seeds, const KMeansOptions& opts) {
  if (seeds.empty()) throw std::invalid_argument("theorem1_check: at least one seed is required");
  const auto part = partition_sensors(scenario.sensors, scenario.edges, scenario.physical);
  const auto weighted = weigh(scenario.sensors, part.uav, omega_h);
  auto unweighted = weighted;
  for (auto& s : unweighted) s.weight = 1.0;

  Theorem1Result res;
  std::vector<std::size_t> high;
  double sum_w = 0.0;
  for (std::size_t i = 0; i < weighted.size(); ++i) {
    res.max_weight = std::max(res.max_weight, weighted[i].weight);
    if (scenario.sensors[static_cast<std::size_t>(weighted[i].id)].fire_history > 0) {
      high.push_back(i);
      sum_w += weighted[i].weight;
    }
  }
  if (high.empty()) throw std::invalid_argument("theorem1_check: no sensor with fire history");
  res.mean_high_weight = sum_w / static_cast<double>(high.size());
  res.factor = 2.0 / (1.0 + res.mean_high_weight / res.max_weight);

  auto mean_high_radius = [&](const Clustering& c) {
    const auto radius = cluster_radius(c, scenario.sensors);
    double total = 0.0;
    for (auto i : high) total += radius[static_cast<std::size_t>(c.labels[i])];
    return total / static_cast<double>(high.size());
  };

  for (auto seed : seeds) {
    Rng rng(derive_seed(seed, "theorem1", static_cast<std::uint64_t>(m)));
    const auto init = init_centers(m, scenario.edges, weighted, rng);
    res.per_seed_weighted.push_back(mean_high_radius(weighted_kmeans_from(weighted, init, opts)));
    res.per_seed_unweighted.push_back(
        mean_high_radius(weighted_kmeans_from(unweighted, init, opts)));
  }
  const auto avg = [](const std::vector<double>& v) {
    return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
  };
  res.weighted_radius = avg(res.per_seed_weighted);
  res.unweighted_radius = avg(res.per_seed_unweighted);
  res.lhs = res.weighted_radius;
  res.rhs = res.factor * res.unweighted_radius;
  // Relative slack absorbs rounding when both arms cluster identically.
  res.holds = res.lhs <= res.rhs * (1.0 + 1e-12) + 1e-9;
  return res;
}

}  // namespace wildfire
