#include "wildfire/planner.hpp"

#include <chrono>
#include <cmath>
#include <numbers>
#include <set>

namespace wildfire {

const char* to_string(Variant v) {
  switch (v) {
    case Variant::kFull: return "full";
    case Variant::kNo2Opt: return "no-2opt";
    case Variant::kNoKMeans: return "no-kmeans";
    case Variant::kNoBoth: return "no-both";
  }
  return "?";
}

std::optional<Variant> parse_variant(std::string_view name) {
  for (auto v : {Variant::kFull, Variant::kNo2Opt, Variant::kNoKMeans, Variant::kNoBoth})
    if (name == to_string(v)) return v;
  return std::nullopt;
}

std::string Infeasible::message() const {
  std::string out = "infeasible up to m = " + std::to_string(m_reached) + "; binding:";
  for (const auto& b : binding) out += " " + b;
  return out;
}

int initial_fleet_size(const Scenario& scenario, FleetInitMode mode) {
  if (mode == FleetInitMode::kOne) return 1;
  const auto& p = scenario.physical;
  const double r = link_ranges(p).sensor_uav;
  const double disk = std::numbers::pi * r * r;
  const auto m = static_cast<int>(std::ceil(p.area_km2 * 1.0e6 / disk));
  return std::clamp(m, 1, p.m_max);
}

RouteBuilder nearest_neighbor_builder(std::span<const Sensor> sensors, RouteImprovement improve) {
  return [sensors, improve](int, const EdgeNode& depot, std::span<const int> members) {
    std::vector<Point2D> pts;
    pts.reserve(members.size());
    for (int id : members) pts.push_back(sensors[static_cast<std::size_t>(id)].pos);
    auto order = nearest_neighbor_tour(depot.pos, pts);
    if (improve == RouteImprovement::kTwoOpt) order = two_opt(std::move(order), depot.pos, pts);
    std::vector<int> ids;
    ids.reserve(order.size());
    for (int i : order) ids.push_back(members[static_cast<std::size_t>(i)]);
    return ids;
  };
}

std::vector<std::string> Attempt::binding() const {
  std::vector<std::string> out;
  if (!clusterable) out.emplace_back("clusters");
  if (capacity_violations) out.emplace_back("capacity");
  if (revisit_violations) out.emplace_back("revisit");
  if (energy_violations) out.emplace_back("energy");
  return out;
}

Attempt realize(const Scenario& scenario, const AlgoParams& algo, const SensorPartition& partition,
                Clustering clustering, const RouteBuilder& builder, std::string method) {
  const auto& p = scenario.physical;
  const EdgeScoring scoring{algo.omega_d, algo.omega_l, p.diagonal_m()};
  const auto groups = clustering.groups();

  Attempt a;
  auto& plan = a.plan;
  plan.method = std::move(method);
  plan.m = clustering.m;
  plan.partition = partition;

  auto direct = assign_direct(scenario.sensors, partition.direct, scenario.edges, p);
  auto map = assign_clusters(groups, scenario.sensors, scenario.edges, direct.load, p, scoring);
  if (direct.load.overloaded()) {
    auto repaired = repair_overload(map, groups, scenario.sensors, scenario.edges, direct.load, p,
                                    scoring);
    if (repaired.ok) {
      map = std::move(repaired.cluster_map);
      direct.load = std::move(repaired.load);
    } else {
      for (std::size_t k = 0; k < direct.load.load.size(); ++k)
        if (direct.load.load[k] > direct.load.capacity[k]) ++a.capacity_violations;
    }
  }
  plan.assignment = Assignment{std::move(direct.direct_map), std::move(map), std::move(direct.load)};

  for (int j = 0; j < clustering.m; ++j) {
    const auto& depot =
        scenario.edges[static_cast<std::size_t>(plan.assignment.cluster_map[static_cast<std::size_t>(j)])];
    const auto& members = groups[static_cast<std::size_t>(j)];
    auto route = make_route(j, depot, builder(j, depot, members), scenario.sensors, p);
    if (route.revisit_s > p.t_max_s) ++a.revisit_violations;
    if (route.energy_wh > p.e_max_wh) ++a.energy_violations;
    plan.routes.push_back(std::move(route));
  }
  plan.clustering = std::move(clustering);
  return a;
}

PlanResult fleet_loop(const Scenario& scenario, const AlgoParams& algo,
                      const std::function<Attempt(int m, const SensorPartition&)>& attempt) {
  const auto start = std::chrono::steady_clock::now();
  const auto& p = scenario.physical;
  const auto partition = partition_sensors(scenario.sensors, scenario.edges, p);
  int m = initial_fleet_size(scenario, algo.fleet_init_mode);
  if (!partition.uav.empty()) m = std::min(m, static_cast<int>(partition.uav.size()));

  Infeasible fail{m, {}};
  for (; m <= p.m_max; ++m) {
    auto a = attempt(m, partition);
    fail = Infeasible{m, a.binding()};
    if (a.feasible()) {
      a.plan.planning_time_s =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      return std::move(a.plan);
    }
    if (!a.clusterable) break;
  }
  return fail;
}

Clustering random_clustering(std::span<const Sensor> sensors, std::span<const int> ids, int m,
                             Rng& rng) {
  Clustering c;
  c.m = m;
  c.sensor_ids.assign(ids.begin(), ids.end());
  auto draw = [&] {
    std::vector<int> counts(static_cast<std::size_t>(m), 0);
    c.labels.clear();
    for (std::size_t i = 0; i < ids.size(); ++i) {
      c.labels.push_back(static_cast<int>(rng.uniform_int(0, m - 1)));
      ++counts[static_cast<std::size_t>(c.labels.back())];
    }
    return std::find(counts.begin(), counts.end(), 0) == counts.end();
  };
  if (!draw()) draw();
  (void)sensors;
  return c;
}

std::vector<Point2D> member_centroids(const Clustering& c, std::span<const Sensor> sensors,
                                      double side_m) {
  std::vector<double> sx(static_cast<std::size_t>(c.m), 0.0), sy(sx), n(sx);
  for (std::size_t i = 0; i < c.sensor_ids.size(); ++i) {
    const auto j = static_cast<std::size_t>(c.labels[i]);
    const auto& pos = sensors[static_cast<std::size_t>(c.sensor_ids[i])].pos;
    sx[j] += pos.x;
    sy[j] += pos.y;
    n[j] += 1.0;
  }
  std::vector<Point2D> out;
  for (std::size_t j = 0; j < sx.size(); ++j)
    out.push_back(n[j] > 0.0 ? Point2D{sx[j] / n[j], sy[j] / n[j]} : Point2D{side_m / 2, side_m / 2});
  return out;
}

Attempt attempt_proposed(const Scenario& scenario, const AlgoParams& algo, Variant variant, int m,
                         const SensorPartition& partition) {
  const auto& sensors = scenario.sensors;
  const auto n_uav = static_cast<int>(partition.uav.size());
  const bool use_kmeans = variant == Variant::kFull || variant == Variant::kNo2Opt;
  const bool use_2opt = variant == Variant::kFull || variant == Variant::kNoKMeans;
  const auto builder = nearest_neighbor_builder(
      sensors, use_2opt ? RouteImprovement::kTwoOpt : RouteImprovement::kNone);
  const std::string method = variant == Variant::kFull ? "proposed"
                                                       : std::string("proposed/") + to_string(variant);

  if (n_uav > 0 && m > n_uav) {
    Attempt a;
    a.clusterable = false;
    a.plan.method = method;
    a.plan.m = m;
    return a;
  }

  Clustering clustering;
  if (n_uav == 0) {
    clustering.m = m;
    clustering.centers = member_centroids(clustering, sensors, scenario.physical.side_m());
  } else if (use_kmeans) {
    Rng rng(derive_seed(algo.seed, "kmeans", static_cast<std::uint64_t>(m)));
    const auto weighted = weigh(sensors, partition.uav, algo.omega_h);
    clustering = weighted_kmeans(weighted, m, scenario.edges,
                                 {algo.epsilon_m, algo.kmeans_max_iters}, rng);
  } else {
    Rng rng(derive_seed(algo.seed, "random-assign", static_cast<std::uint64_t>(m)));
    clustering = random_clustering(sensors, partition.uav, m, rng);
    clustering.centers = member_centroids(clustering, sensors, scenario.physical.side_m());
  }
  return realize(scenario, algo, partition, std::move(clustering), builder, method);
}

PlanResult plan(const Scenario& scenario, const AlgoParams& algo, Variant variant) {
  validate(algo);
  return fleet_loop(scenario, algo, [&](int m, const SensorPartition& partition) {
    return attempt_proposed(scenario, algo, variant, m, partition);
  });
}

ConstraintReport validate(const Plan& plan, const Scenario& scenario) {
  const auto& p = scenario.physical;
  const auto& sensors = scenario.sensors;
  const auto& edges = scenario.edges;
  ConstraintReport rep;
  const double inf = std::numeric_limits<double>::infinity();
  rep.revisit.margin = inf;
  rep.energy.margin = inf;
  rep.capacity.margin = inf;

  int problems = 0;
  const auto part = partition_sensors(sensors, edges, p);
  const double r_se = link_ranges(p).sensor_edge;
  std::vector<int> served(sensors.size(), 0);
  std::vector<double> load(edges.size(), 0.0);
  auto valid_edge = [&](int k) { return k >= 0 && static_cast<std::size_t>(k) < edges.size(); };

  for (const auto& [sid, k] : plan.assignment.direct_map) {
    if (sid < 0 || static_cast<std::size_t>(sid) >= sensors.size() || !valid_edge(k) ||
        distance(sensors[static_cast<std::size_t>(sid)].pos, edges[static_cast<std::size_t>(k)].pos) > r_se) {
      ++problems;
      continue;
    }
    ++served[static_cast<std::size_t>(sid)];
    load[static_cast<std::size_t>(k)] += sensors[static_cast<std::size_t>(sid)].request.compute_mi / p.t_period_s;
  }

  const std::set<int> uav_set(part.uav.begin(), part.uav.end());
  if (plan.routes.size() != static_cast<std::size_t>(plan.m) ||
      plan.assignment.cluster_map.size() != static_cast<std::size_t>(plan.m))
    ++problems;
  for (std::size_t j = 0; j < plan.routes.size(); ++j) {
    const auto& r = plan.routes[j];
    if (!valid_edge(r.depot) ||
        (j < plan.assignment.cluster_map.size() && plan.assignment.cluster_map[j] != r.depot)) {
      ++problems;
      continue;
    }
    const auto& depot = edges[static_cast<std::size_t>(r.depot)];
    std::vector<Point2D> pts;
    std::vector<int> order;
    double alpha = 0.0, beta = 0.0;
    for (int sid : r.waypoints) {
      if (!uav_set.count(sid)) {
        ++problems;
        continue;
      }
      const auto& s = sensors[static_cast<std::size_t>(sid)];
      ++served[static_cast<std::size_t>(sid)];
      if (plan.clustering.cluster_of(sid) != static_cast<int>(j)) ++problems;
      order.push_back(static_cast<int>(pts.size()));
      pts.push_back(s.pos);
      alpha += s.request.data_size_mb;
      beta += s.request.compute_mi;
    }
    load[static_cast<std::size_t>(r.depot)] += beta / p.t_period_s;
    const double length = tour_length(depot.pos, pts, order);
    const double revisit = length / p.v_g;
    const double energy = route_energy(length, alpha, p);
    rep.revisit.margin = std::min(rep.revisit.margin, p.t_max_s - revisit);
    rep.energy.margin = std::min(rep.energy.margin, p.e_max_wh - energy);
  }
  for (std::size_t k = 0; k < edges.size(); ++k)
    rep.capacity.margin = std::min(rep.capacity.margin, edges[k].capacity_mips - load[k]);
  for (int c : served)
    if (c != 1) ++problems;

  rep.fleet.margin = static_cast<double>(p.m_max - plan.m);
  rep.coverage.margin = -static_cast<double>(problems);
  rep.revisit.pass = rep.revisit.margin >= 0.0;
  rep.energy.pass = rep.energy.margin >= 0.0;
  rep.capacity.pass = rep.capacity.margin >= 0.0;
  rep.fleet.pass = rep.fleet.margin >= 0.0;
  rep.coverage.pass = problems == 0;
  for (const auto* c : {&rep.revisit, &rep.energy, &rep.capacity, &rep.fleet, &rep.coverage})
    if (!c->pass) ++rep.violations;
  return rep;
}

}  // namespace wildfire
