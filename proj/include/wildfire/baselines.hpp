#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "wildfire/planner.hpp"

namespace wildfire {

/// How a GA individual's clusters are turned into tours.
enum class GaRouteOrder { kNearestNeighbor, kPriority };

struct GaConfig {
  int population = 50;
  int generations = 100;
  double crossover_rate = 0.8;
  double mutation_rate = 0.1;
  int tournament_size = 3;
  GaRouteOrder route_order = GaRouteOrder::kNearestNeighbor;
  bool two_opt_routes = false;  // improve decoded tours with 2-opt
};

struct PsoConfig {
  int swarm = 30;
  int iterations = 100;
  double inertia = 0.7;
  double c1 = 1.5;
  double c2 = 1.5;
  bool two_opt_routes = false;
};

/// Additive fitness penalty per violated revisit, energy or capacity constraint.
inline constexpr double kViolationPenalty = 1.0e6;

/// Seeds m route ends at edge positions (cycling through edges), then hands each sensor in
/// ascending id order to the cluster whose current route end is nearest.
Clustering greedy_clustering(std::span<const Sensor> sensors, std::span<const int> ids,
                             std::span<const EdgeNode> edges, int m);

/// Greedy clustering, nearest-neighbor routes, shared edge assignment and fleet loop.
PlanResult greedy_plan(const Scenario& scenario, const AlgoParams& algo);

/// Sensor-to-UAV genes (0-based cluster ids) followed by visit priorities in [0, 1).
struct Chromosome {
  std::vector<int> assign;
  std::vector<double> priority;

  friend bool operator==(const Chromosome&, const Chromosome&) = default;
};

struct GaRun {
  Chromosome best;
  double best_fitness = 0.0;
  std::vector<double> history;  // best fitness after initialization and after each generation
};

/// Generational GA with elitism of one, tournament selection, single-point crossover over the
/// concatenated gene vector and per-gene mutation.
GaRun run_ga(int n_genes, int m, const GaConfig& cfg,
             const std::function<double(const Chromosome&)>& fitness, Rng& rng);

struct PsoRun {
  std::vector<double> gbest;
  double gbest_fitness = 0.0;
  std::vector<double> history;  // gbest fitness after initialization and after each iteration
};

/// Global-best PSO on a box. Velocities start uniform in +-(hi - lo)/2 unless given, are capped
/// at +-(hi - lo), and positions are clamped to the box after every move.
PsoRun run_pso(std::size_t dims, double lo, double hi, const PsoConfig& cfg,
               const std::function<double(std::span<const double>)>& fitness, Rng& rng,
               const std::vector<std::vector<double>>* initial_positions = nullptr,
               const std::vector<std::vector<double>>* initial_velocities = nullptr);

/// Round-half-up of each coordinate clamped to [1, m], returned as 0-based cluster ids.
std::vector<int> decode_particle(std::span<const double> x, int m);

/// Planning objective plus kViolationPenalty per violation.
double penalized_fitness(const Attempt& a, const Scenario& scenario, double lambda);

PlanResult ga_plan(const Scenario& scenario, const AlgoParams& algo, const GaConfig& ga = {});
PlanResult pso_plan(const Scenario& scenario, const AlgoParams& algo, const PsoConfig& pso = {});

}  // namespace wildfire
