#include <numbers>

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "wildfire/io.hpp"
#include "wildfire/planner.hpp"

using namespace wildfire;
using namespace wftest;

TEST(InitialFleet, Examples) {
  auto s = default_scenario(0, 10);
  EXPECT_EQ(initial_fleet_size(s, FleetInitMode::kOne), 1);
  EXPECT_EQ(initial_fleet_size(s, FleetInitMode::kDiskCoverage), 20);  // ceil(1e8 / 785398.16) = 128
  s.physical.m_max = 200;
  EXPECT_EQ(initial_fleet_size(s, FleetInitMode::kDiskCoverage), 128);
  s.physical.area_km2 = std::numbers::pi * 0.25;
  EXPECT_EQ(initial_fleet_size(s, FleetInitMode::kDiskCoverage), 1);
}

TEST(Variant, NamesRoundTrip) {
  for (auto v : {Variant::kFull, Variant::kNo2Opt, Variant::kNoKMeans, Variant::kNoBoth})
    EXPECT_EQ(parse_variant(to_string(v)), v);
  EXPECT_FALSE(parse_variant("bogus").has_value());
}

TEST(Plan, DefaultScenarioFeasibleAndValid) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto s = default_scenario(seed);
    AlgoParams a;
    a.seed = seed;
    const auto r = plan(s, a);
    ASSERT_TRUE(feasible(r));
    const auto& p = std::get<Plan>(r);
    EXPECT_EQ(static_cast<int>(p.routes.size()), p.m);
    for (const auto& route : p.routes) {
      EXPECT_LE(route.revisit_s, s.physical.t_max_s);
      EXPECT_LE(route.energy_wh, s.physical.e_max_wh);
    }
    const auto rep = validate(p, s);
    EXPECT_TRUE(rep.all_pass());
    double worst = 0;
    for (const auto& route : p.routes) worst = std::max(worst, route.revisit_s);
    EXPECT_DOUBLE_EQ(rep.revisit.margin, s.physical.t_max_s - worst);
  }
}

TEST(Plan, NoUavSensorsGivesEmptyRoutes) {
  const auto s = scenario({sensor(0, 5000, 5100)}, {edge(0, 5000, 5000)});
  const auto r = plan(s, AlgoParams{});
  ASSERT_TRUE(feasible(r));
  const auto& p = std::get<Plan>(r);
  EXPECT_EQ(p.m, 1);
  for (const auto& route : p.routes) EXPECT_TRUE(route.waypoints.empty());
  EXPECT_TRUE(validate(p, s).all_pass());
}

TEST(Plan, EnergyForcesSecondUav) {
  PhysicalParams phys;
  phys.e_max_wh = 25;
  const auto s = scenario({sensor(0, 500, 5000), sensor(1, 9500, 5000)}, {edge(0, 5000, 5000)}, phys);
  // One UAV must fly the whole loop; the best order is 18 km, i.e. 33.3 Wh of flight.
  const std::vector<Point2D> both{s.sensors[0].pos, s.sensors[1].pos};
  EXPECT_GT(route_energy(brute_force_tour(s.edges[0].pos, both), 2.0, phys), phys.e_max_wh);
  // Two UAVs, one sensor each: 9 km loops.
  EXPECT_LT(route_energy(9000, 1.0, phys), phys.e_max_wh);

  const auto r = plan(s, AlgoParams{});
  ASSERT_TRUE(feasible(r));
  EXPECT_EQ(std::get<Plan>(r).m, 2);
}

TEST(Plan, MinimalFleetUnderModeOne) {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const auto s = default_scenario(seed, 80);
    AlgoParams a;
    a.seed = seed;
    const auto r = plan(s, a);
    ASSERT_TRUE(feasible(r));
    const int m = std::get<Plan>(r).m;
    if (m == 1) continue;
    const auto part = partition_sensors(s.sensors, s.edges, s.physical);
    EXPECT_FALSE(attempt_proposed(s, a, Variant::kFull, m - 1, part).feasible());
  }
}

TEST(Plan, Deterministic) {
  const auto s = default_scenario(9);
  AlgoParams a;
  a.seed = 9;
  for (auto v : {Variant::kFull, Variant::kNoKMeans}) {
    const auto x = std::get<Plan>(plan(s, a, v));
    const auto y = std::get<Plan>(plan(s, a, v));
    EXPECT_EQ(plan_to_json_text(x, s), plan_to_json_text(y, s));
  }
}

TEST(Plan, InfeasibleReportsBinding) {
  auto s = default_scenario(0);
  s.physical.m_max = 1;
  const auto r = plan(s, AlgoParams{});
  ASSERT_FALSE(feasible(r));
  const auto& inf = std::get<Infeasible>(r);
  EXPECT_EQ(inf.m_reached, 1);
  EXPECT_FALSE(inf.binding.empty());
  EXPECT_NE(inf.message().find("revisit"), std::string::npos);
}

TEST(Plan, AblationArmsAreValid) {
  const auto s = default_scenario(4);
  AlgoParams a;
  a.seed = 4;
  for (auto v : {Variant::kNo2Opt, Variant::kNoKMeans, Variant::kNoBoth}) {
    const auto r = plan(s, a, v);
    ASSERT_TRUE(feasible(r));
    const auto& p = std::get<Plan>(r);
    EXPECT_EQ(p.method, std::string("proposed/") + to_string(v));
    EXPECT_TRUE(validate(p, s).all_pass());
  }
}

TEST(Plan, DiskCoverageModeStartsAtBound) {
  const auto s = default_scenario(2);
  AlgoParams a;
  a.fleet_init_mode = FleetInitMode::kDiskCoverage;
  const auto r = plan(s, a);
  ASSERT_TRUE(feasible(r));
  EXPECT_EQ(std::get<Plan>(r).m, 20);
}

namespace {

Plan single_route_plan(const Scenario& s, std::vector<int> waypoints) {
  Plan p;
  p.m = 1;
  p.partition = partition_sensors(s.sensors, s.edges, s.physical);
  p.clustering.m = 1;
  p.clustering.sensor_ids = p.partition.uav;
  p.clustering.labels.assign(p.partition.uav.size(), 0);
  p.clustering.centers = {{0, 0}};
  p.assignment.cluster_map = {0};
  p.assignment.load = EdgeLoadState(s.edges);
  p.routes = {make_route(0, s.edges[0], std::move(waypoints), s.sensors, s.physical)};
  return p;
}

}  // namespace

TEST(Validate, RevisitJustOverLimit) {
  PhysicalParams phys;
  phys.area_km2 = 1000;
  const double half = (phys.v_g * phys.t_max_s + 1.0) / 2.0;
  const auto s = scenario({sensor(0, 100 + half, 100)}, {edge(0, 100, 100)}, phys);
  auto p = single_route_plan(s, {0});
  p.routes[0].length_m = 0;  // cached values are ignored
  const auto rep = validate(p, s);
  EXPECT_FALSE(rep.revisit.pass);
  EXPECT_NEAR(rep.revisit.margin, -1.0 / phys.v_g, 1e-9);
  EXPECT_TRUE(rep.energy.pass);
}

TEST(Validate, FleetAboveLimit) {
  auto s = default_scenario(1);
  AlgoParams a;
  a.seed = 1;
  const auto p = std::get<Plan>(plan(s, a));
  s.physical.m_max = p.m - 1;
  const auto rep = validate(p, s);
  EXPECT_FALSE(rep.fleet.pass);
  EXPECT_EQ(rep.fleet.margin, -1.0);
}

TEST(Validate, CoverageCatchesMissingSensor) {
  const auto s = scenario({sensor(0, 3000, 3000), sensor(1, 6000, 6000)}, {edge(0, 100, 100)});
  const auto p = single_route_plan(s, {0});
  const auto rep = validate(p, s);
  EXPECT_FALSE(rep.coverage.pass);
  EXPECT_FALSE(rep.all_pass());
}
