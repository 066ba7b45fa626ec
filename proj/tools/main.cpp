#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "wildfire/emergency.hpp"
#include "wildfire/experiment.hpp"
#include "wildfire/io.hpp"
#include "wildfire/timing.hpp"

namespace fs = std::filesystem;
using namespace wildfire;

namespace {

enum Exit { kOk = 0, kIo = 1, kUsage = 2, kInfeasible = 3, kBadExperiment = 4 };

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ExperimentError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  PhysicalParams physical;
  AlgoParams algo;
  GenConfig gen;
  MethodConfig method_cfg;
  std::uint64_t seed = 0;
  std::string fleet_init = "one";
  std::string ga_route_order = "nn";
  bool baseline_two_opt = false;

  std::string out_dir = ".";
  std::string output;
  std::string scenario_path;
  std::string plan_path;
  std::string events_path;
  std::string method = "proposed";
  std::string variant = "full";
  std::string policy = "min-detour";
  double horizon_s = 86400.0;
  int n_seeds = 20;
  std::string methods = "proposed,ga,pso,greedy";
  std::string sweep;
};

std::vector<CLI::Option*> physical_options;

void add_shared(CLI::App& app, Options& o) {
  auto& p = o.physical;
  physical_options = {
      app.add_option("--area-km2", p.area_km2, "Monitoring area"),
      app.add_option("--r-sensor", p.r_s, "Sensor radio range, m"),
      app.add_option("--r-uav", p.r_g, "UAV radio range, m"),
      app.add_option("--r-edge", p.r_e, "Edge radio range, m"),
      app.add_option("--data-rate", p.data_rate_mbps, "Link data rate, Mbps"),
      app.add_option("--speed", p.v_g, "UAV speed, m/s"),
      app.add_option("--p-fly", p.p_fly_w, "Flight power, W"),
      app.add_option("--p-comm", p.p_comm_w, "Radio power, W"),
      app.add_option("--e-max", p.e_max_wh, "Battery budget, Wh"),
      app.add_option("--t-max", p.t_max_s, "Maximum revisit period, s"),
      app.add_option("--t-period", p.t_period_s, "Request period, s"),
      app.add_option("--t-urgent", p.t_urgent_s, "Emergency deadline, s"),
      app.add_option("--m-max", p.m_max, "Fleet limit"),
      app.add_option("--per-hop-latency", p.per_hop_latency_s, "Network latency per hop, s"),
  };
  for (auto* opt : physical_options) opt->capture_default_str()->group("Physical");

  auto& a = o.algo;
  app.add_option("--omega-h", a.omega_h, "Fire-history weight")->capture_default_str()->group("Algorithm");
  app.add_option("--omega-d", a.omega_d, "Edge distance weight")->capture_default_str()->group("Algorithm");
  app.add_option("--omega-l", a.omega_l, "Edge load weight")->capture_default_str()->group("Algorithm");
  app.add_option("--lambda", a.lambda, "Service-time weight in the objective")
      ->capture_default_str()->group("Algorithm");
  app.add_option("--epsilon", a.epsilon_m, "K-means convergence, m")->capture_default_str()->group("Algorithm");
  app.add_option("--theta-max", a.theta_max, "Delivery utilization threshold")
      ->capture_default_str()->group("Algorithm");
  app.add_option("--kmeans-max-iters", a.kmeans_max_iters)->capture_default_str()->group("Algorithm");
  app.add_option("--fleet-init", o.fleet_init, "Initial fleet size: one or coverage")
      ->check(CLI::IsMember({"one", "coverage"}))->capture_default_str()->group("Algorithm");

  auto& g = o.gen;
  app.add_option("--sensors", g.n_sensors, "Sensor count")->capture_default_str()->group("Generator");
  app.add_option("--edges", g.n_edges, "Edge count")->capture_default_str()->group("Generator");
  app.add_option("--hotspots", g.n_hotspots)->capture_default_str()->group("Generator");
  app.add_option("--hotspot-fraction", g.hotspot_fraction)->capture_default_str()->group("Generator");
  app.add_option("--hotspot-sigma", g.hotspot_sigma_m)->capture_default_str()->group("Generator");
  app.add_option("--fire-history-max", g.fire_history_max)->capture_default_str()->group("Generator");
  app.add_option("--alpha-min", g.alpha_range_mb.first)->capture_default_str()->group("Generator");
  app.add_option("--alpha-max", g.alpha_range_mb.second)->capture_default_str()->group("Generator");
  app.add_option("--beta-min", g.beta_range_mi.first)->capture_default_str()->group("Generator");
  app.add_option("--beta-max", g.beta_range_mi.second)->capture_default_str()->group("Generator");
  app.add_option("--capacity-min", g.edge_capacity_range_mips.first)->capture_default_str()->group("Generator");
  app.add_option("--capacity-max", g.edge_capacity_range_mips.second)->capture_default_str()->group("Generator");

  auto& ga = o.method_cfg.ga;
  auto& pso = o.method_cfg.pso;
  app.add_option("--ga-population", ga.population)->capture_default_str()->group("Baselines");
  app.add_option("--ga-generations", ga.generations)->capture_default_str()->group("Baselines");
  app.add_option("--ga-crossover", ga.crossover_rate)->capture_default_str()->group("Baselines");
  app.add_option("--ga-mutation", ga.mutation_rate)->capture_default_str()->group("Baselines");
  app.add_option("--ga-tournament", ga.tournament_size)->capture_default_str()->group("Baselines");
  app.add_option("--ga-route-order", o.ga_route_order, "nn or priority")
      ->check(CLI::IsMember({"nn", "priority"}))->capture_default_str()->group("Baselines");
  app.add_option("--pso-swarm", pso.swarm)->capture_default_str()->group("Baselines");
  app.add_option("--pso-iterations", pso.iterations)->capture_default_str()->group("Baselines");
  app.add_option("--pso-inertia", pso.inertia)->capture_default_str()->group("Baselines");
  app.add_option("--pso-c1", pso.c1)->capture_default_str()->group("Baselines");
  app.add_option("--pso-c2", pso.c2)->capture_default_str()->group("Baselines");
  app.add_flag("--baseline-two-opt", o.baseline_two_opt, "Apply 2-opt to GA and PSO tours")->group("Baselines");

  app.add_option("--seed", o.seed, "Run seed; every sub-seed derives from it")->capture_default_str();
}

/// Scenario physical parameters, with any flag or config entry taking precedence.
PhysicalParams effective_physical(const Scenario& s, const Options& o) {
  PhysicalParams p = s.physical;
  const PhysicalParams& f = o.physical;
  const double* from[] = {&f.area_km2, &f.r_s, &f.r_g, &f.r_e, &f.data_rate_mbps, &f.v_g, &f.p_fly_w,
                          &f.p_comm_w, &f.e_max_wh, &f.t_max_s, &f.t_period_s, &f.t_urgent_s};
  double* to[] = {&p.area_km2, &p.r_s, &p.r_g, &p.r_e, &p.data_rate_mbps, &p.v_g, &p.p_fly_w,
                  &p.p_comm_w, &p.e_max_wh, &p.t_max_s, &p.t_period_s, &p.t_urgent_s};
  for (std::size_t i = 0; i < std::size(from); ++i)
    if (physical_options[i]->count() > 0) *to[i] = *from[i];
  if (physical_options[12]->count() > 0) p.m_max = f.m_max;
  if (physical_options[13]->count() > 0) p.per_hop_latency_s = f.per_hop_latency_s;
  return p;
}

void finalize(Options& o) {
  o.algo.seed = o.seed;
  o.gen.seed = o.seed;
  o.algo.fleet_init_mode = o.fleet_init == "coverage" ? FleetInitMode::kDiskCoverage : FleetInitMode::kOne;
  o.method_cfg.ga.route_order =
      o.ga_route_order == "priority" ? GaRouteOrder::kPriority : GaRouteOrder::kNearestNeighbor;
  o.method_cfg.ga.two_opt_routes = o.baseline_two_opt;
  o.method_cfg.pso.two_opt_routes = o.baseline_two_opt;
  const auto v = parse_variant(o.variant);
  if (!v) throw std::invalid_argument("unknown variant " + o.variant);
  o.method_cfg.variant = *v;
  validate(o.physical);
  validate(o.algo);
  validate(o.gen);
}

Scenario load_scenario(const Options& o) {
  Scenario s;
  try {
    s = load(o.scenario_path);
  } catch (const ScenarioParseError&) {
    throw;
  } catch (const std::exception& e) {
    throw IoError(e.what());
  }
  s.physical = effective_physical(s, o);
  validate(s.physical);
  return s;
}

void write(const fs::path& path, const std::string& text) {
  try {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    write_text(path, text);
  } catch (const std::exception& e) {
    throw IoError(e.what());
  }
}

int cmd_generate(const Options& o) {
  const auto s = generate(o.gen, o.physical);
  write(o.output, to_json_text(s));
  std::printf("generated n=%zu p=%zu hotspots=%zu seed=%llu -> %s\n", s.sensors.size(), s.edges.size(),
              s.meta.hotspots.size(), static_cast<unsigned long long>(o.seed), o.output.c_str());
  return kOk;
}

int cmd_plan(const Options& o) {
  const auto s = load_scenario(o);
  const auto method = parse_method(o.method);
  if (!method) throw std::invalid_argument("unknown method " + o.method);
  const auto r = run_method(*method, s, o.algo, o.method_cfg);
  if (const auto* inf = std::get_if<Infeasible>(&r)) {
    std::fprintf(stderr, "%s\n", inf->message().c_str());
    return kInfeasible;
  }
  const auto& p = std::get<Plan>(r);
  const fs::path dir = o.out_dir;
  write(dir / "plan.json", plan_to_json_text(p, s));
  write(dir / "routes.csv", route_geometry_csv(p, s));
  const auto row = metrics_row(p, s, o.seed);
  write(dir / "metrics.csv", std::string(kMetricsHeader) + "\n" + row + "\n");
  std::printf("%s\n%s\n", kMetricsHeader, row.c_str());
  return kOk;
}

int cmd_simulate(const Options& o) {
  const auto s = load_scenario(o);
  Plan p;
  try {
    p = plan_from_json_text(read_text(o.plan_path), s);
  } catch (const std::exception& e) {
    throw IoError(e.what());
  }
  std::vector<EmergencyEvent> events;
  if (!o.events_path.empty()) {
    try {
      events = events_from_json_text(read_text(o.events_path));
    } catch (const std::exception& e) {
      throw IoError(e.what());
    }
  } else {
    Rng rng(derive_seed(o.seed, "events", 0));
    events = auto_events(p, s, o.horizon_s, rng);
    if (events.empty()) throw ExperimentError("no UAV-served sensor with fire history > 50 and no event file");
  }
  SimOptions so;
  so.horizon_s = o.horizon_s;
  so.policy = o.policy == "own-cluster" ? DispatchPolicy::kOwnCluster : DispatchPolicy::kMinDetour;
  Rng rng(derive_seed(o.seed, "simulate", 0));
  SimResult res;
  try {
    res = simulate(p, s, events, so, o.algo.theta_max, rng);
  } catch (const std::invalid_argument& e) {
    throw ExperimentError(e.what());
  }
  const fs::path dir = o.out_dir;
  write(dir / "events.json", events_to_json_text(events));
  write(dir / "trace.csv", trace_csv(res.traces));
  int met = 0;
  double sum = 0.0;
  for (const auto& t : res.traces) {
    met += t.deadline_met;
    sum += t.response_time_s;
  }
  const auto& im = res.impact;
  const double mean = res.traces.empty() ? 0.0 : sum / static_cast<double>(res.traces.size());
  const double hit = res.traces.empty() ? 1.0 : static_cast<double>(met) / static_cast<double>(res.traces.size());
  std::string summary =
      "events,mean_emergency_response_s,deadline_hit_rate,bound_s,normal_without_s,normal_with_s,"
      "normal_delta_s,normal_delta_fraction\n" +
      std::to_string(res.traces.size()) + "," + fmt_num(mean) + "," + fmt_num(hit) + "," +
      fmt_num(theorem2_bound(p, s, o.algo.theta_max)) + "," + fmt_num(im.mean_without_s) + "," +
      fmt_num(im.mean_with_s) + "," + fmt_num(im.delta_s) + "," + fmt_num(im.delta_fraction) + "\n";
  write(dir / "impact.csv", summary);
  std::cout << summary;
  return kOk;
}

std::vector<int> parse_sweep(const std::string& spec) {
  int a = 0, b = 0, c = 0;
  char tail = 0;
  if (std::sscanf(spec.c_str(), "%d:%d:%d%c", &a, &b, &c, &tail) != 3 || a <= 0 || b < a || c <= 0)
    throw ExperimentError("sweep must be start:stop:step with 0 < start <= stop and step > 0");
  std::vector<int> out;
  for (int n = a; n <= b; n += c) out.push_back(n);
  return out;
}

int cmd_compare(const Options& o) {
  CompareSpec spec;
  spec.gen = o.gen;
  spec.physical = o.physical;
  spec.algo = o.algo;
  spec.method_cfg = o.method_cfg;
  spec.threads = threads_from_env();
  if (o.n_seeds < 1) throw ExperimentError("--seeds must be >= 1");
  for (int i = 0; i < o.n_seeds; ++i) spec.seeds.push_back(o.seed + static_cast<std::uint64_t>(i));
  if (!o.sweep.empty()) spec.sensor_counts = parse_sweep(o.sweep);
  spec.methods.clear();
  std::string rest = o.methods;
  while (!rest.empty()) {
    const auto cut = rest.find(',');
    const auto name = rest.substr(0, cut);
    const auto m = parse_method(name);
    if (!m) throw ExperimentError("unknown method " + name);
    spec.methods.push_back(*m);
    rest = cut == std::string::npos ? "" : rest.substr(cut + 1);
  }
  if (spec.methods.empty()) throw ExperimentError("no methods selected");

  const auto cells = run_compare(spec);
  const auto rep = make_report(spec, cells);
  if (rep.ci_omitted) std::fprintf(stderr, "warning: fewer than two seeds, confidence intervals omitted\n");
  const fs::path dir = o.out_dir;
  write(dir / "cells.csv", rep.cells_csv);
  write(dir / "summary.csv", rep.summary_csv);
  write(dir / "paired.csv", rep.paired_csv);
  write(dir / "cdf.csv", rep.cdf_csv);
  write(dir / "summary.json", rep.summary_json);
  std::cout << rep.table;

  std::map<std::pair<int, std::uint64_t>, bool> done;
  for (const auto& c : cells) done[{c.n_sensors, c.seed}] |= c.ok;
  for (const auto& [key, any] : done)
    if (!any) {
      std::fprintf(stderr, "no method completed for n=%d seed=%llu\n", key.first,
                   static_cast<unsigned long long>(key.second));
      return kInfeasible;
    }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"UAV wildfire patrol planner and emergency simulator"};
  app.set_config("--config", "", "Flat key=value file; flags override it");
  app.allow_config_extras(CLI::config_extras_mode::error);
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  add_shared(app, o);

  auto* gen = app.add_subcommand("generate", "Write a synthetic scenario");
  gen->add_option("-o,--output", o.output, "Scenario JSON path")->required();

  auto* plan_cmd = app.add_subcommand("plan", "Plan patrols for a scenario");
  plan_cmd->add_option("-s,--scenario", o.scenario_path)->required();
  plan_cmd->add_option("--method", o.method)->check(CLI::IsMember({"proposed", "ga", "pso", "greedy"}))
      ->capture_default_str();
  plan_cmd->add_option("--variant", o.variant, "Ablation arm of the proposed planner")
      ->check(CLI::IsMember({"full", "no-2opt", "no-kmeans", "no-both"}))->capture_default_str();
  plan_cmd->add_option("--out-dir", o.out_dir)->capture_default_str();

  auto* sim = app.add_subcommand("simulate", "Inject emergencies into a plan");
  sim->add_option("-s,--scenario", o.scenario_path)->required();
  sim->add_option("-p,--plan", o.plan_path)->required();
  sim->add_option("--events", o.events_path, "JSON list of {sensor_id, alert_time_s}");
  sim->add_option("--horizon", o.horizon_s, "Simulated time, s")->check(CLI::PositiveNumber)->capture_default_str();
  sim->add_option("--policy", o.policy)->check(CLI::IsMember({"min-detour", "own-cluster"}))->capture_default_str();
  sim->add_option("--out-dir", o.out_dir)->capture_default_str();

  auto* cmp = app.add_subcommand("compare", "Run methods over seeds and sensor counts");
  cmp->add_option("--seeds", o.n_seeds, "Number of consecutive seeds from --seed")->capture_default_str();
  cmp->add_option("--sweep-sensors", o.sweep, "start:stop:step");
  cmp->add_option("--methods", o.methods)->capture_default_str();
  cmp->add_option("--variant", o.variant)
      ->check(CLI::IsMember({"full", "no-2opt", "no-kmeans", "no-both"}))->capture_default_str();
  cmp->add_option("--out-dir", o.out_dir)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::FileError& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return kIo;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    finalize(o);
    if (gen->parsed()) return cmd_generate(o);
    if (plan_cmd->parsed()) return cmd_plan(o);
    if (sim->parsed()) return cmd_simulate(o);
    return cmd_compare(o);
  } catch (const IoError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kIo;
  } catch (const ScenarioParseError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kIo;
  } catch (const ExperimentError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kBadExperiment;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kUsage;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kIo;
  }
}
