#include <algorithm>

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "wildfire/baselines.hpp"
#include "wildfire/io.hpp"
#include "wildfire/timing.hpp"

using namespace wildfire;
using namespace wftest;

namespace {

Scenario small(std::uint64_t seed, int n = 40) {
  GenConfig cfg;
  cfg.seed = seed;
  cfg.n_sensors = n;
  return generate(cfg, PhysicalParams{});
}

GaConfig quick_ga() {
  GaConfig g;
  g.population = 12;
  g.generations = 10;
  return g;
}

PsoConfig quick_pso() {
  PsoConfig p;
  p.swarm = 10;
  p.iterations = 10;
  return p;
}

}  // namespace

TEST(Greedy, SingleUavIsOneNearestNeighborTour) {
  const auto s = small(3, 20);
  const auto r = greedy_plan(s, AlgoParams{});
  ASSERT_TRUE(feasible(r));
  const auto& p = std::get<Plan>(r);
  ASSERT_EQ(p.m, 1);
  const auto& route = p.routes[0];
  std::vector<Point2D> pts;
  for (int id : p.partition.uav) pts.push_back(s.sensors[id].pos);
  std::vector<int> expected;
  for (int i : nearest_neighbor_tour(s.edges[route.depot].pos, pts)) expected.push_back(p.partition.uav[i]);
  EXPECT_EQ(route.waypoints, expected);
}

TEST(Greedy, ClusteringFollowsRouteEnds) {
  const std::vector<Sensor> sensors{sensor(0, 100, 0), sensor(1, 900, 0), sensor(2, 200, 0), sensor(3, 800, 0)};
  const std::vector<EdgeNode> edges{edge(0, 0, 0), edge(1, 1000, 0)};
  const std::vector<int> ids{0, 1, 2, 3};
  const auto c = greedy_clustering(sensors, ids, edges, 2);
  EXPECT_EQ(c.labels, (std::vector<int>{0, 1, 0, 1}));
  // Three clusters over two edges: the third end starts at edge 0 again.
  const auto c3 = greedy_clustering(sensors, ids, edges, 3);
  EXPECT_EQ(c3.labels[0], 0);
}

TEST(Greedy, NeverBeatsProposedOnLengthOrFleet) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto s = default_scenario(seed);
    AlgoParams a;
    a.seed = seed;
    const auto g = std::get<Plan>(greedy_plan(s, a));
    const auto p = std::get<Plan>(plan(s, a));
    EXPECT_GE(g.total_length_m(), p.total_length_m()) << "seed " << seed;
    EXPECT_GE(g.m, p.m) << "seed " << seed;
  }
}

TEST(Greedy, SharesEdgeAssignment) {
  const auto s = default_scenario(5);
  AlgoParams a;
  a.seed = 5;
  const auto p = std::get<Plan>(greedy_plan(s, a));
  const auto again = assign_edges(p.clustering.groups(), s.sensors, p.partition.direct, s.edges, s.physical,
                                  {a.omega_d, a.omega_l, s.physical.diagonal_m()});
  ASSERT_TRUE(again.has_value());
  EXPECT_EQ(again->cluster_map, p.assignment.cluster_map);
  EXPECT_EQ(again->direct_map, p.assignment.direct_map);
}

TEST(Ga, ZeroGenerationsKeepsBestInitial) {
  GaConfig cfg = quick_ga();
  cfg.generations = 0;
  std::vector<double> seen;
  Rng rng(4);
  const auto run = run_ga(15, 3, cfg, [&](const Chromosome& c) {
    double f = 0;
    for (std::size_t i = 0; i < c.assign.size(); ++i) f += c.assign[i] * c.priority[i];
    seen.push_back(f);
    return f;
  }, rng);
  ASSERT_EQ(seen.size(), static_cast<std::size_t>(cfg.population));
  EXPECT_EQ(run.best_fitness, *std::min_element(seen.begin(), seen.end()));
  EXPECT_EQ(run.history.size(), 1u);
}

TEST(Ga, BestFitnessNeverWorsens) {
  Rng rng(6);
  GaConfig cfg;
  cfg.population = 20;
  cfg.generations = 40;
  const auto run = run_ga(30, 4, cfg, [](const Chromosome& c) {
    double f = 0;
    for (std::size_t i = 0; i < c.assign.size(); ++i) f += std::abs(c.assign[i] - static_cast<int>(i % 4));
    return f;
  }, rng);
  ASSERT_EQ(run.history.size(), 41u);
  for (std::size_t i = 1; i < run.history.size(); ++i) EXPECT_LE(run.history[i], run.history[i - 1]);
  EXPECT_EQ(run.history.back(), run.best_fitness);
  for (int g : run.best.assign) {
    EXPECT_GE(g, 0);
    EXPECT_LT(g, 4);
  }
}

TEST(Ga, RejectsTinyPopulation) {
  GaConfig cfg;
  cfg.population = 1;
  Rng rng(1);
  EXPECT_THROW(run_ga(3, 2, cfg, [](const Chromosome&) { return 0.0; }, rng), std::invalid_argument);
}

TEST(Pso, FrozenSwarmStaysPut) {
  PsoConfig cfg = quick_pso();
  const std::vector<std::vector<double>> pos(cfg.swarm, std::vector<double>{1.2, 2.6, 3.0});
  const std::vector<std::vector<double>> vel(cfg.swarm, std::vector<double>{0, 0, 0});
  Rng rng(1);
  const auto run = run_pso(3, 1.0, 3.0, cfg, [](std::span<const double> x) { return x[0] + x[1] + x[2]; },
                           rng, &pos, &vel);
  EXPECT_EQ(run.gbest, pos[0]);
  EXPECT_EQ(decode_particle(run.gbest, 3), (std::vector<int>{0, 2, 2}));
}

TEST(Pso, GlobalBestNeverWorsens) {
  Rng rng(2);
  PsoConfig cfg;
  cfg.iterations = 50;
  const auto run = run_pso(5, 1.0, 4.0, cfg, [](std::span<const double> x) {
    double f = 0;
    for (double v : x) f += (v - 2.2) * (v - 2.2);
    return f;
  }, rng);
  ASSERT_EQ(run.history.size(), 51u);
  for (std::size_t i = 1; i < run.history.size(); ++i) EXPECT_LE(run.history[i], run.history[i - 1]);
  for (double v : run.gbest) {
    EXPECT_GE(v, 1.0);
    EXPECT_LE(v, 4.0);
  }
}

TEST(Pso, DecodeRoundsHalfUpAndClamps) {
  const std::vector<double> x{0.2, 1.49, 1.5, 2.5, 3.7, 9.0};
  EXPECT_EQ(decode_particle(x, 3), (std::vector<int>{0, 0, 1, 2, 2, 2}));
}

TEST(Baselines, PlansAreValidAndDeterministic) {
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    const auto s = small(seed);
    AlgoParams a;
    a.seed = seed;
    const PlanResult results[] = {greedy_plan(s, a), ga_plan(s, a, quick_ga()), pso_plan(s, a, quick_pso())};
    const PlanResult again[] = {greedy_plan(s, a), ga_plan(s, a, quick_ga()), pso_plan(s, a, quick_pso())};
    for (int k = 0; k < 3; ++k) {
      ASSERT_TRUE(feasible(results[k]));
      const auto& p = std::get<Plan>(results[k]);
      EXPECT_TRUE(validate(p, s).all_pass()) << p.method;
      EXPECT_EQ(plan_to_json_text(p, s), plan_to_json_text(std::get<Plan>(again[k]), s));
    }
  }
}

TEST(Baselines, PriorityDecodingAndTwoOptKnob) {
  const auto s = small(1);
  AlgoParams a;
  a.seed = 1;
  GaConfig g = quick_ga();
  g.route_order = GaRouteOrder::kPriority;
  g.two_opt_routes = true;
  const auto r = ga_plan(s, a, g);
  ASSERT_TRUE(feasible(r));
  EXPECT_TRUE(validate(std::get<Plan>(r), s).all_pass());
}

TEST(Baselines, PenaltyAddsPerViolation) {
  const auto s = small(2);
  AlgoParams a;
  const auto part = partition_sensors(s.sensors, s.edges, s.physical);
  auto att = attempt_proposed(s, a, Variant::kFull, 1, part);
  const double base = objective(att.plan, s, a.lambda);
  EXPECT_DOUBLE_EQ(penalized_fitness(att, s, a.lambda), base + kViolationPenalty * att.violations());
}
