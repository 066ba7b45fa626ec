#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wildfire/baselines.hpp"
#include "wildfire/planner.hpp"
#include "wildfire/scenario.hpp"

namespace wildfire {

enum class Method { kProposed, kGa, kPso, kGreedy };

const char* to_string(Method m);
std::optional<Method> parse_method(std::string_view name);

struct MethodConfig {
  Variant variant = Variant::kFull;  // proposed only
  GaConfig ga;
  PsoConfig pso;
};

PlanResult run_method(Method method, const Scenario& scenario, const AlgoParams& algo,
                      const MethodConfig& cfg = {});

struct CompareSpec {
  std::vector<Method> methods{Method::kProposed, Method::kGa, Method::kPso, Method::kGreedy};
  std::vector<std::uint64_t> seeds;
  std::vector<int> sensor_counts;  // empty: gen.n_sensors only
  GenConfig gen;
  PhysicalParams physical;
  AlgoParams algo;
  MethodConfig method_cfg;
  int threads = 1;
};

/// One (sensor count, seed, method) run.
struct Cell {
  Method method = Method::kProposed;
  int n_sensors = 0;
  std::uint64_t seed = 0;
  bool ok = false;
  std::string error;
  int fleet_size = 0;
  double total_length_m = 0.0;
  double total_energy_wh = 0.0;
  double mean_response_s = 0.0;
  double planning_time_s = 0.0;
  std::vector<double> responses;  // per sensor, by id
};

/// Runs every cell, fanning out over spec.threads workers. Cells come back ordered by
/// sensor count, seed, then method position in spec.methods.
std::vector<Cell> run_compare(const CompareSpec& spec);

/// Worker count from FW_THREADS, defaulting to the hardware concurrency (at least 1).
int threads_from_env();

struct CompareReport {
  std::string table;         // human-readable means and CIs
  std::string cells_csv;     // one row per cell
  std::string summary_csv;   // per method and sensor count
  std::string paired_csv;    // proposed minus each baseline, per seed
  std::string cdf_csv;       // method,n_sensors,response_s,cum_fraction
  std::string summary_json;
  bool ci_omitted = false;   // fewer than two seeds
};

/// Timing appears only in columns whose name ends in planning_time_s.
CompareReport make_report(const CompareSpec& spec, const std::vector<Cell>& cells);

}  // namespace wildfire
