#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "wildfire/plan.hpp"
#include "wildfire/scenario.hpp"

namespace wildfire {

enum class Variant { kFull, kNo2Opt, kNoKMeans, kNoBoth };

const char* to_string(Variant v);
std::optional<Variant> parse_variant(std::string_view name);

/// Reported when no fleet size up to M_max satisfies every constraint.
struct Infeasible {
  int m_reached = 0;
  std::vector<std::string> binding;  // constraints violated by the last attempt
  std::string message() const;
};

using PlanResult = std::variant<Plan, Infeasible>;

inline bool feasible(const PlanResult& r) { return std::holds_alternative<Plan>(r); }

/// kOne starts at a single UAV; kDiskCoverage uses the disk-coverage lower bound
/// ceil(A / (pi r_sg^2)) clamped to [1, M_max].
int initial_fleet_size(const Scenario& scenario, FleetInitMode mode);

/// Orders a cluster's members into a patrol (sensor ids), starting from the depot edge.
using RouteBuilder =
    std::function<std::vector<int>(int cluster, const EdgeNode& depot, std::span<const int> members)>;

/// Nearest-neighbor construction, optionally followed by 2-opt.
RouteBuilder nearest_neighbor_builder(std::span<const Sensor> sensors, RouteImprovement improve);

/// One pass of the fleet loop body at a fixed m.
struct Attempt {
  Plan plan;
  bool clusterable = true;     // false when m exceeds the number of UAV-served sensors
  int capacity_violations = 0;  // overloaded edges left after repair
  int revisit_violations = 0;
  int energy_violations = 0;

  int violations() const { return capacity_violations + revisit_violations + energy_violations; }
  bool feasible() const { return clusterable && violations() == 0; }
  std::vector<std::string> binding() const;
};

/// Edge assignment (direct phase, cluster phase, repair), routing and constraint checks for a
/// fixed clustering. Always returns a plan; when repair fails the unrepaired mapping is kept and
/// the overloaded edges are counted as violations.
Attempt realize(const Scenario& scenario, const AlgoParams& algo, const SensorPartition& partition,
                Clustering clustering, const RouteBuilder& builder, std::string method);

/// Increments m from the initial fleet size until an attempt is feasible or M_max is exceeded.
/// Measures wall-clock planning time.
PlanResult fleet_loop(const Scenario& scenario, const AlgoParams& algo,
                      const std::function<Attempt(int m, const SensorPartition&)>& attempt);

/// Clustering with m clusters where every member is assigned uniformly at random; a draw with an
/// empty cluster is re-rolled once and then accepted.
Clustering random_clustering(std::span<const Sensor> sensors, std::span<const int> ids, int m,
                             Rng& rng);

/// Plain centroid of each cluster's members; empty clusters get the middle of the square.
std::vector<Point2D> member_centroids(const Clustering& c, std::span<const Sensor> sensors,
                                      double side_m);

/// Loop body of the integrated planner (or one of its ablation arms) at a fixed m.
Attempt attempt_proposed(const Scenario& scenario, const AlgoParams& algo, Variant variant, int m,
                         const SensorPartition& partition);

/// Integrated planning: weighted clustering, two-phase edge assignment with repair, NN + 2-opt
/// patrols, growing the fleet until revisit, energy and capacity limits all hold.
PlanResult plan(const Scenario& scenario, const AlgoParams& algo, Variant variant = Variant::kFull);

struct ConstraintCheck {
  bool pass = true;
  double margin = 0.0;  // positive means slack
};

struct ConstraintReport {
  ConstraintCheck revisit;   // seconds, worst route
  ConstraintCheck energy;    // Wh, worst route
  ConstraintCheck capacity;  // MIPS, worst edge
  ConstraintCheck fleet;     // UAVs
  ConstraintCheck coverage;  // every sensor served exactly once; margin = -problems
  std::optional<ConstraintCheck> deadline;  // filled in by the emergency simulation
  int violations = 0;

  bool all_pass() const { return violations == 0; }
};

/// Recomputes every checked quantity from the scenario, ignoring values cached in the plan.
ConstraintReport validate(const Plan& plan, const Scenario& scenario);

}  // namespace wildfire
