#include "wildfire/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include "wildfire/timing.hpp"

namespace wildfire {

namespace {

Attempt unclusterable(const char* method, int m) {
  Attempt a;
  a.clusterable = false;
  a.plan.method = method;
  a.plan.m = m;
  return a;
}

Clustering labelled(std::span<const int> ids, std::vector<int> labels, int m,
                    std::span<const Sensor> sensors, double side_m) {
  Clustering c;
  c.m = m;
  c.sensor_ids.assign(ids.begin(), ids.end());
  c.labels = std::move(labels);
  c.centers = member_centroids(c, sensors, side_m);
  return c;
}

/// Visits each cluster in ascending priority, ties by sensor id.
RouteBuilder priority_builder(std::span<const int> ids, std::span<const double> priority) {
  return [ids, priority](int, const EdgeNode&, std::span<const int> members) {
    std::vector<std::pair<double, int>> keyed;
    keyed.reserve(members.size());
    for (int sid : members) {
      const auto pos = std::lower_bound(ids.begin(), ids.end(), sid) - ids.begin();
      keyed.emplace_back(priority[static_cast<std::size_t>(pos)], sid);
    }
    std::sort(keyed.begin(), keyed.end());
    std::vector<int> order;
    order.reserve(keyed.size());
    for (const auto& [_, sid] : keyed) order.push_back(sid);
    return order;
  };
}

}  // namespace

Clustering greedy_clustering(std::span<const Sensor> sensors, std::span<const int> ids,
                             std::span<const EdgeNode> edges, int m) {
  std::vector<Point2D> ends;
  for (int j = 0; j < m; ++j) ends.push_back(edges[static_cast<std::size_t>(j) % edges.size()].pos);
  std::vector<int> labels;
  labels.reserve(ids.size());
  for (int sid : ids) {
    const auto& pos = sensors[static_cast<std::size_t>(sid)].pos;
    int best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (int j = 0; j < m; ++j) {
      const double d = distance(ends[static_cast<std::size_t>(j)], pos);
      if (d < best_d) {
        best_d = d;
        best = j;
      }
    }
    labels.push_back(best);
    ends[static_cast<std::size_t>(best)] = pos;
  }
  Clustering c;
  c.m = m;
  c.sensor_ids.assign(ids.begin(), ids.end());
  c.labels = std::move(labels);
  return c;
}

PlanResult greedy_plan(const Scenario& scenario, const AlgoParams& algo) {
  validate(algo);
  const auto builder = nearest_neighbor_builder(scenario.sensors, RouteImprovement::kNone);
  return fleet_loop(scenario, algo, [&](int m, const SensorPartition& part) {
    const auto n = static_cast<int>(part.uav.size());
    if (n > 0 && m > n) return unclusterable("greedy", m);
    auto c = greedy_clustering(scenario.sensors, part.uav, scenario.edges, m);
    c.centers = member_centroids(c, scenario.sensors, scenario.physical.side_m());
    return realize(scenario, algo, part, std::move(c), builder, "greedy");
  });
}

double penalized_fitness(const Attempt& a, const Scenario& scenario, double lambda) {
  return objective(a.plan, scenario, lambda) + kViolationPenalty * a.violations();
}

GaRun run_ga(int n_genes, int m, const GaConfig& cfg,
             const std::function<double(const Chromosome&)>& fitness, Rng& rng) {
  if (cfg.population < 2) throw std::invalid_argument("GA population must be >= 2");
  const auto n = static_cast<std::size_t>(n_genes);
  auto random_individual = [&] {
    Chromosome c;
    c.assign.resize(n);
    c.priority.resize(n);
    for (auto& g : c.assign) g = static_cast<int>(rng.uniform_int(0, m - 1));
    for (auto& g : c.priority) g = rng.uniform01();
    return c;
  };

  std::vector<Chromosome> pop;
  std::vector<double> fit;
  for (int i = 0; i < cfg.population; ++i) {
    pop.push_back(random_individual());
    fit.push_back(fitness(pop.back()));
  }
  auto best_index = [&] {
    return static_cast<std::size_t>(std::min_element(fit.begin(), fit.end()) - fit.begin());
  };
  GaRun run;
  run.history.push_back(fit[best_index()]);

  auto tournament = [&]() -> const Chromosome& {
    std::size_t win = static_cast<std::size_t>(rng.uniform_int(0, cfg.population - 1));
    for (int t = 1; t < cfg.tournament_size; ++t) {
      const auto c = static_cast<std::size_t>(rng.uniform_int(0, cfg.population - 1));
      if (fit[c] < fit[win] || (fit[c] == fit[win] && c < win)) win = c;
    }
    return pop[win];
  };
  // Genes 0..n-1 are assignments, n..2n-1 priorities.
  auto mutate = [&](Chromosome& c) {
    for (auto& g : c.assign)
      if (rng.uniform01() < cfg.mutation_rate) g = static_cast<int>(rng.uniform_int(0, m - 1));
    for (auto& g : c.priority)
      if (rng.uniform01() < cfg.mutation_rate) g = rng.uniform01();
  };

  for (int gen = 0; gen < cfg.generations; ++gen) {
    std::vector<Chromosome> next;
    std::vector<double> next_fit;
    const auto elite = best_index();
    next.push_back(pop[elite]);
    next_fit.push_back(fit[elite]);
    while (static_cast<int>(next.size()) < cfg.population) {
      Chromosome a = tournament();
      Chromosome b = tournament();
      if (n > 0 && rng.uniform01() < cfg.crossover_rate) {
        const auto cut = static_cast<std::size_t>(rng.uniform_int(1, static_cast<std::int64_t>(2 * n) - 1));
        for (std::size_t g = cut; g < 2 * n; ++g) {
          if (g < n) std::swap(a.assign[g], b.assign[g]);
          else std::swap(a.priority[g - n], b.priority[g - n]);
        }
      }
      for (auto* child : {&a, &b}) {
        if (static_cast<int>(next.size()) >= cfg.population) break;
        mutate(*child);
        next_fit.push_back(fitness(*child));
        next.push_back(std::move(*child));
      }
    }
    pop = std::move(next);
    fit = std::move(next_fit);
    run.history.push_back(fit[best_index()]);
  }
  const auto b = best_index();
  run.best = pop[b];
  run.best_fitness = fit[b];
  return run;
}

PsoRun run_pso(std::size_t dims, double lo, double hi, const PsoConfig& cfg,
               const std::function<double(std::span<const double>)>& fitness, Rng& rng,
               const std::vector<std::vector<double>>* initial_positions,
               const std::vector<std::vector<double>>* initial_velocities) {
  if (cfg.swarm < 2) throw std::invalid_argument("PSO swarm must be >= 2");
  const auto swarm = static_cast<std::size_t>(cfg.swarm);
  const double span = hi - lo;
  std::vector<std::vector<double>> x(swarm, std::vector<double>(dims));
  std::vector<std::vector<double>> v(swarm, std::vector<double>(dims));
  for (std::size_t i = 0; i < swarm; ++i) {
    for (std::size_t d = 0; d < dims; ++d) {
      x[i][d] = initial_positions ? (*initial_positions)[i][d] : rng.uniform(lo, hi);
      v[i][d] = initial_velocities ? (*initial_velocities)[i][d] : rng.uniform(-span / 2, span / 2);
    }
  }
  auto pbest = x;
  std::vector<double> pfit;
  for (const auto& xi : x) pfit.push_back(fitness(xi));
  PsoRun run;
  std::size_t g = static_cast<std::size_t>(std::min_element(pfit.begin(), pfit.end()) - pfit.begin());
  run.gbest = pbest[g];
  run.gbest_fitness = pfit[g];
  run.history.push_back(run.gbest_fitness);

  for (int it = 0; it < cfg.iterations; ++it) {
    for (std::size_t i = 0; i < swarm; ++i) {
      for (std::size_t d = 0; d < dims; ++d) {
        const double r1 = rng.uniform01();
        const double r2 = rng.uniform01();
        double vel = cfg.inertia * v[i][d] + cfg.c1 * r1 * (pbest[i][d] - x[i][d]) +
                     cfg.c2 * r2 * (run.gbest[d] - x[i][d]);
        v[i][d] = std::clamp(vel, -span, span);
        x[i][d] = std::clamp(x[i][d] + v[i][d], lo, hi);
      }
      const double f = fitness(x[i]);
      if (f < pfit[i]) {
        pfit[i] = f;
        pbest[i] = x[i];
        if (f < run.gbest_fitness) {
          run.gbest_fitness = f;
          run.gbest = x[i];
        }
      }
    }
    run.history.push_back(run.gbest_fitness);
  }
  return run;
}

std::vector<int> decode_particle(std::span<const double> x, int m) {
  std::vector<int> labels;
  labels.reserve(x.size());
  for (double xi : x) {
    const double c = std::clamp(xi, 1.0, static_cast<double>(m));
    labels.push_back(static_cast<int>(std::floor(c + 0.5)) - 1);
  }
  return labels;
}

namespace {

/// Remembers the best feasible attempt seen during a search.
struct FeasibleKeeper {
  std::optional<Attempt> best;
  double best_fitness = std::numeric_limits<double>::infinity();

  void offer(Attempt&& a, double f) {
    if (a.feasible() && f < best_fitness) {
      best_fitness = f;
      best = std::move(a);
    }
  }
};

}  // namespace

PlanResult ga_plan(const Scenario& scenario, const AlgoParams& algo, const GaConfig& ga) {
  validate(algo);
  const double side = scenario.physical.side_m();
  return fleet_loop(scenario, algo, [&](int m, const SensorPartition& part) {
    const auto n = static_cast<int>(part.uav.size());
    if (n > 0 && m > n) return unclusterable("ga", m);
    const auto improve = ga.two_opt_routes ? RouteImprovement::kTwoOpt : RouteImprovement::kNone;
    const auto nn = nearest_neighbor_builder(scenario.sensors, improve);
    FeasibleKeeper keeper;
    auto decode = [&](const Chromosome& c) -> RouteBuilder {
      if (ga.route_order == GaRouteOrder::kNearestNeighbor) return nn;
      auto by_priority = priority_builder(part.uav, c.priority);
      if (!ga.two_opt_routes) return by_priority;
      return [&scenario, by_priority](int j, const EdgeNode& depot, std::span<const int> members) {
        auto order = by_priority(j, depot, members);
        std::vector<Point2D> pts;
        for (int sid : order) pts.push_back(scenario.sensors[static_cast<std::size_t>(sid)].pos);
        std::vector<int> idx(order.size());
        for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<int>(i);
        idx = two_opt(std::move(idx), depot.pos, pts);
        std::vector<int> out;
        for (int i : idx) out.push_back(order[static_cast<std::size_t>(i)]);
        return out;
      };
    };
    auto evaluate = [&](const Chromosome& c) {
      auto clustering = labelled(part.uav, c.assign, m, scenario.sensors, side);
      const auto builder = decode(c);
      auto a = realize(scenario, algo, part, std::move(clustering), builder, "ga");
      const double f = penalized_fitness(a, scenario, algo.lambda);
      keeper.offer(std::move(a), f);
      return f;
    };
    Rng rng(derive_seed(algo.seed, "ga", static_cast<std::uint64_t>(m)));
    const auto run = run_ga(n, m, ga, evaluate, rng);
    if (keeper.best) return std::move(*keeper.best);
    auto clustering = labelled(part.uav, run.best.assign, m, scenario.sensors, side);
    return realize(scenario, algo, part, std::move(clustering), decode(run.best), "ga");
  });
}

PlanResult pso_plan(const Scenario& scenario, const AlgoParams& algo, const PsoConfig& pso) {
  validate(algo);
  const double side = scenario.physical.side_m();
  const auto builder = nearest_neighbor_builder(
      scenario.sensors, pso.two_opt_routes ? RouteImprovement::kTwoOpt : RouteImprovement::kNone);
  return fleet_loop(scenario, algo, [&](int m, const SensorPartition& part) {
    const auto n = static_cast<int>(part.uav.size());
    if (n > 0 && m > n) return unclusterable("pso", m);
    FeasibleKeeper keeper;
    auto evaluate = [&](std::span<const double> x) {
      auto clustering = labelled(part.uav, decode_particle(x, m), m, scenario.sensors, side);
      auto a = realize(scenario, algo, part, std::move(clustering), builder, "pso");
      const double f = penalized_fitness(a, scenario, algo.lambda);
      keeper.offer(std::move(a), f);
      return f;
    };
    Rng rng(derive_seed(algo.seed, "pso", static_cast<std::uint64_t>(m)));
    const auto run = run_pso(part.uav.size(), 1.0, static_cast<double>(m), pso, evaluate, rng);
    if (keeper.best) return std::move(*keeper.best);
    auto clustering = labelled(part.uav, decode_particle(run.gbest, m), m, scenario.sensors, side);
    return realize(scenario, algo, part, std::move(clustering), builder, "pso");
  });
}

}  // namespace wildfire
