#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "wetplan/clustering.hpp"
#include "wetplan/config.hpp"
#include "wetplan/eh_channel.hpp"
#include "wetplan/model.hpp"
#include "wetplan/power_alloc.hpp"
#include "wetplan/simulation.hpp"
#include "wetplan/sweep.hpp"

namespace {

using nlohmann::json;
using namespace wetplan;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;

ScenarioFile load_scenario_checked(const std::string& path) {
  if (path.empty()) throw ConfigError("no config given (use --config)");
  return load_scenario(path);
}

// Reading/parsing problems in any user-supplied input file are config-class
// failures, whatever exception type the loader used.
template <typename Fn>
auto as_config_error(Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(e.what());
  }
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
  if (!out.flush()) throw std::runtime_error("short write to " + path);
}

std::string suffixed_path(const std::string& base, const std::string& tag) {
  std::filesystem::path p(base);
  const std::string ext = p.extension().string();
  std::filesystem::path q = p.parent_path() / (p.stem().string() + "-" + tag + ext);
  return q.string();
}

json scenario_json(const Scenario& sc) {
  json j;
  j["area_width_m"] = sc.area_width_m;
  j["area_height_m"] = sc.area_height_m;
  j["num_devices"] = sc.num_devices();
  j["num_beacons"] = sc.num_beacons;
  j["slot_duration_s"] = sc.slot_duration_s;
  j["e_max_J"] = sc.e_max_j;
  j["e_th_J"] = sc.e_th_j;
  j["p_max_W"] = sc.p_max_w;
  j["p_sleep_W"] = sc.p_sleep_w;
  j["p_active_W"] = sc.p_active_w;
  j["frequency_Hz"] = sc.radio.frequency_hz;
  j["combined_gain"] = sc.radio.combined_gain;
  j["pathloss_exponent"] = sc.radio.pathloss_exponent;
  j["min_distance_m"] = sc.radio.min_distance_m;
  j["eh_saturation_W"] = sc.eh.saturation_w;
  j["eh_c0"] = sc.eh.c0;
  j["eh_c1"] = sc.eh.c1;
  j["activation_beta_a"] = sc.activation.beta_a;
  j["activation_beta_b"] = sc.activation.beta_b;
  json devices = json::array();
  for (const Position& p : sc.devices) devices.push_back({p.x, p.y});
  j["devices"] = devices;
  return j;
}

struct DeployArgs {
  std::string config;
  std::string deployer = "both";
  std::string out = "deployment.txt";
  std::uint64_t seed = 1;
  int beacons = 0;  // 0: take the config's value
};

int run_deploy(const DeployArgs& a) {
  ScenarioFile f = load_scenario_checked(a.config);
  Scenario sc = f.scenario;
  if (a.beacons > 0) {
    sc.num_beacons = a.beacons;
    validate_scenario(sc);
  }

  const bool want_mean = a.deployer == "mean" || a.deployer == "both";
  const bool want_cheb = a.deployer == "chebyshev" || a.deployer == "both";
  const bool both = want_mean && want_cheb;

  Deployment mean_dep, cheb_dep;
  if (want_mean) {
    mean_dep = deploy_beacons(sc, a.seed, false);
    const std::string path = both ? suffixed_path(a.out, "mean") : a.out;
    save_deployment(mean_dep, path);
    std::printf("wrote %s (%zu beacons, %zu devices)\n", path.c_str(),
                mean_dep.beacon_positions.size(), mean_dep.assignment.size());
  }
  if (want_cheb) {
    cheb_dep = deploy_beacons(sc, a.seed, true);
    const std::string path = both ? suffixed_path(a.out, "chebyshev") : a.out;
    save_deployment(cheb_dep, path);
    std::printf("wrote %s (%zu beacons, %zu devices)\n", path.c_str(),
                cheb_dep.beacon_positions.size(), cheb_dep.assignment.size());
  }

  if (both) {
    std::printf("\ncluster  devices  mean_radius_m  chebyshev_radius_m\n");
    std::vector<int> sizes(mean_dep.beacon_positions.size(), 0);
    for (int c : mean_dep.assignment) sizes[static_cast<std::size_t>(c)] += 1;
    double worst_mean = 0.0, worst_cheb = 0.0;
    for (std::size_t c = 0; c < mean_dep.beacon_positions.size(); ++c) {
      std::printf("%7zu  %7d  %13.4f  %18.4f\n", c, sizes[c], mean_dep.cluster_radii[c],
                  cheb_dep.cluster_radii[c]);
      worst_mean = std::max(worst_mean, mean_dep.cluster_radii[c]);
      worst_cheb = std::max(worst_cheb, cheb_dep.cluster_radii[c]);
    }
    std::printf("max radius: mean %.4f m, chebyshev %.4f m\n", worst_mean, worst_cheb);
  }
  return kExitOk;
}

struct AllocateArgs {
  std::string config;
  std::string deployment;
  std::string batteries;
  std::string allocator = "both";
  std::string out = "allocation.json";
};

int run_allocate(const AllocateArgs& a) {
  ScenarioFile f = load_scenario_checked(a.config);
  const Scenario& sc = f.scenario;
  if (a.deployment.empty()) throw ConfigError("no deployment file given (use --deployment)");
  if (a.batteries.empty()) throw ConfigError("no battery file given (use --batteries)");

  const Deployment dep = as_config_error([&] { return load_deployment(a.deployment); });
  if (dep.beacon_positions.size() != static_cast<std::size_t>(sc.num_beacons)) {
    throw ConfigError(a.deployment + ": deployment has " +
                      std::to_string(dep.beacon_positions.size()) +
                      " beacons but the config says " + std::to_string(sc.num_beacons));
  }
  if (dep.assignment.size() != sc.num_devices()) {
    throw ConfigError(a.deployment + ": deployment covers " +
                      std::to_string(dep.assignment.size()) + " devices but the config has " +
                      std::to_string(sc.num_devices()));
  }
  const std::vector<double> batteries = load_batteries(a.batteries);
  if (batteries.size() != sc.num_devices()) {
    throw ConfigError(a.batteries + ": " + std::to_string(batteries.size()) +
                      " battery levels for " + std::to_string(sc.num_devices()) + " devices");
  }
  for (std::size_t j = 0; j < batteries.size(); ++j) {
    if (batteries[j] > sc.e_max_j) {
      throw ConfigError(a.batteries + ": battery " + std::to_string(j) +
                        " exceeds e_max");
    }
  }

  std::vector<DeviceState> states(batteries.size());
  for (std::size_t j = 0; j < batteries.size(); ++j) states[j].battery_j = batteries[j];
  const GainMatrix gains = gain_matrix(sc, dep);

  std::vector<AllocMethod> methods;
  if (a.allocator == "lp" || a.allocator == "both") methods.push_back(AllocMethod::kLp);
  if (a.allocator == "approx" || a.allocator == "both") methods.push_back(AllocMethod::kApprox);

  json doc;
  doc["num_beacons"] = sc.num_beacons;
  doc["num_devices"] = sc.num_devices();
  doc["e_th_J"] = sc.e_th_j;
  doc["allocations"] = json::array();
  for (AllocMethod m : methods) {
    const AllocationResult r = allocate(sc, gains, dep, states, m);
    json entry;
    entry["allocator"] = alloc_tag(m);
    entry["feasible"] = r.feasible;
    entry["sum_power_W"] = r.sum_power_w;
    entry["powers_W"] = r.powers_w;
    entry["shortfalls_J"] = r.shortfall_j;
    entry["total_shortfall_J"] = r.total_shortfall_j;
    json sat = json::array();
    for (std::size_t j = 0; j < r.saturated.size(); ++j) {
      if (r.saturated[j]) sat.push_back(j);
    }
    entry["saturated_devices"] = sat;
    doc["allocations"].push_back(entry);
    const std::string status =
        r.feasible ? "feasible" : "shortfall " + std::to_string(r.total_shortfall_j) + " J";
    std::printf("%-6s  sum power %.6f W  %s\n", alloc_tag(m), r.sum_power_w, status.c_str());
  }
  write_file(a.out, doc.dump(2) + "\n");
  std::printf("wrote %s\n", a.out.c_str());
  return kExitOk;
}

struct SweepArgs {
  std::string spec;
  std::string config;
  std::string out = "sweep.csv";
  std::string allocator;  // empty: keep the spec's list
  std::string deployer;
  std::uint64_t seed = 0;
  int trials = 0;
  int slots = 0;
  int threads = -1;
  bool seed_set = false, trials_set = false, slots_set = false, threads_set = false;
};

int run_sweep_cmd(const SweepArgs& a) {
  if (a.spec.empty()) throw ConfigError("no sweep spec given (use --spec)");
  SweepSpec spec = load_sweep_spec(a.spec);
  if (a.seed_set) spec.seed = a.seed;
  if (a.trials_set) spec.trials = a.trials;
  if (a.slots_set) spec.slots = a.slots;
  if (a.threads_set) spec.threads = a.threads;
  if (!a.allocator.empty()) {
    spec.allocators = a.allocator == "both"
                          ? std::vector<AllocMethod>{AllocMethod::kLp, AllocMethod::kApprox}
                          : std::vector<AllocMethod>{alloc_from_tag(a.allocator)};
  }
  if (!a.deployer.empty()) {
    if (a.deployer == "both") {
      spec.deployers = {DeployMethod::kMeansMean, DeployMethod::kChebyshev};
    } else {
      spec.deployers = {a.deployer == "mean" ? DeployMethod::kMeansMean
                                             : DeployMethod::kChebyshev};
    }
  }
  try {
    validate_sweep_spec(spec);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }

  Scenario base;
  if (!a.config.empty()) {
    base = load_scenario(a.config).scenario;
  } else {
    base = default_scenario(64, 15, 1);
  }

  const std::vector<SweepRow> rows = run_sweep(base, spec);
  const std::string csv = sweep_csv(rows);
  write_file(a.out, csv);

  json sidecar;
  sidecar["scenario"] = scenario_json(base);
  sidecar["config_path"] = a.config;
  sidecar["spec_path"] = a.spec;
  json js;
  js["parameter"] = sweep_parameter_tag(spec.parameter);
  js["values"] = spec.values;
  json allocs = json::array(), deps = json::array();
  for (AllocMethod m : spec.allocators) allocs.push_back(alloc_tag(m));
  for (DeployMethod m : spec.deployers) deps.push_back(method_tag(m));
  js["allocators"] = allocs;
  js["deployers"] = deps;
  js["trials"] = spec.trials;
  js["slots"] = spec.slots;
  js["warmup"] = spec.warmup_slots;
  js["seed"] = spec.seed;
  js["threads"] = spec.threads;
  sidecar["sweep"] = js;
  write_file(a.out + ".json", sidecar.dump(2) + "\n");

  std::fputs(csv.c_str(), stdout);
  std::printf("wrote %s and %s.json\n", a.out.c_str(), a.out.c_str());
  return kExitOk;
}

struct ValidateArgs {
  std::string config;
  std::string spec;
};

int run_validate(const ValidateArgs& a) {
  if (a.config.empty() && a.spec.empty()) {
    throw ConfigError("nothing to validate (use --config and/or --spec)");
  }
  if (!a.config.empty()) {
    const ScenarioFile f = load_scenario(a.config);
    const Scenario& sc = f.scenario;
    std::printf("%s: ok (%zu devices, %d beacons, area %g x %g m, e_th %g J)\n",
                a.config.c_str(), sc.num_devices(), sc.num_beacons, sc.area_width_m,
                sc.area_height_m, sc.e_th_j);
  }
  if (!a.spec.empty()) {
    const SweepSpec s = load_sweep_spec(a.spec);
    std::printf("%s: ok (%s sweep, %zu values, %zu allocators, %zu deployers, %d trials)\n",
                a.spec.c_str(), sweep_parameter_tag(s.parameter), s.values.size(),
                s.allocators.size(), s.deployers.size(), s.trials);
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"power-beacon deployment and charging planner"};
  app.require_subcommand(1);

  DeployArgs da;
  CLI::App* deploy = app.add_subcommand("deploy", "cluster devices and place beacons");
  deploy->add_option("--config", da.config, "scenario config file");
  deploy->add_option("--deployer", da.deployer, "centroid method")
      ->check(CLI::IsMember({"mean", "chebyshev", "both"}));
  deploy->add_option("--seed", da.seed, "clustering seed");
  deploy->add_option("--beacons", da.beacons, "override the config's beacon count");
  deploy->add_option("--out", da.out, "output deployment file");

  AllocateArgs aa;
  CLI::App* allocate_cmd = app.add_subcommand("allocate", "one-slot transmit power plan");
  allocate_cmd->add_option("--config", aa.config, "scenario config file");
  allocate_cmd->add_option("--deployment", aa.deployment, "deployment file from 'deploy'");
  allocate_cmd->add_option("--batteries", aa.batteries, "battery levels, one per line");
  allocate_cmd->add_option("--allocator", aa.allocator, "allocation method")
      ->check(CLI::IsMember({"lp", "approx", "both"}));
  allocate_cmd->add_option("--out", aa.out, "output JSON file");

  SweepArgs sa;
  CLI::App* sweep = app.add_subcommand("sweep", "Monte Carlo parameter sweep to CSV");
  sweep->add_option("--spec", sa.spec, "sweep spec file");
  sweep->add_option("--config", sa.config, "base scenario config (defaults baked in)");
  sweep->add_option("--out", sa.out, "output CSV path (JSON sidecar gets .json appended)");
  sweep->add_option("--allocator", sa.allocator, "override the spec's allocators")
      ->check(CLI::IsMember({"lp", "approx", "both"}));
  sweep->add_option("--deployer", sa.deployer, "override the spec's deployers")
      ->check(CLI::IsMember({"mean", "chebyshev", "both"}));
  auto* seed_opt = sweep->add_option("--seed", sa.seed, "override the spec's seed");
  auto* trials_opt = sweep->add_option("--trials", sa.trials, "override the spec's trials");
  auto* slots_opt = sweep->add_option("--slots", sa.slots, "override the spec's slots");
  auto* threads_opt =
      sweep->add_option("--threads", sa.threads, "worker threads (1 forces sequential)");

  ValidateArgs va;
  CLI::App* validate = app.add_subcommand("validate-config", "parse and check input files");
  validate->add_option("--config", va.config, "scenario config file");
  validate->add_option("--spec", va.spec, "sweep spec file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  sa.seed_set = seed_opt->count() > 0;
  sa.trials_set = trials_opt->count() > 0;
  sa.slots_set = slots_opt->count() > 0;
  sa.threads_set = threads_opt->count() > 0;

  try {
    if (deploy->parsed()) return run_deploy(da);
    if (allocate_cmd->parsed()) return run_allocate(aa);
    if (sweep->parsed()) return run_sweep_cmd(sa);
    if (validate->parsed()) return run_validate(va);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitOk;
}
