#include "wetplan/simulation.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace wetplan {

double consumed_energy(double activation, double tau_s, double p_sleep_w, double p_active_w) {
  return tau_s * ((1.0 - activation) * p_sleep_w + activation * p_active_w);
}

BatteryUpdate update_battery(double battery_j, double activation, double harvested_j,
                             const Scenario& scenario) {
  BatteryUpdate u;
  const double demand =
      consumed_energy(activation, scenario.slot_duration_s, scenario.p_sleep_w,
                      scenario.p_active_w);
  u.outage = battery_j < demand;
  u.consumed_j = std::min(battery_j, demand);
  u.next_j = std::min(battery_j - u.consumed_j + harvested_j, scenario.e_max_j);
  return u;
}

SlotRecord step_slot_with_activations(const Scenario& scenario, const GainMatrix& gains,
                                      const Deployment& deployment,
                                      std::vector<DeviceState>& states, AllocMethod allocator,
                                      std::span<const double> activations) {
  if (activations.size() != states.size()) {
    throw std::invalid_argument("step_slot: activation count does not match device count");
  }
  for (std::size_t j = 0; j < states.size(); ++j) states[j].activation = activations[j];

  const AllocationResult alloc = allocate(scenario, gains, deployment, states, allocator);

  SlotRecord rec;
  rec.sum_power_w = alloc.sum_power_w;
  rec.alloc_feasible = alloc.feasible;
  rec.total_shortfall_j = alloc.total_shortfall_j;
  rec.per_device_battery_j.resize(states.size());
  for (std::size_t j = 0; j < states.size(); ++j) {
    const double xi = harvested_energy(alloc.powers_w, gains.device_row(j),
                                       scenario.slot_duration_s, scenario.eh);
    const BatteryUpdate u = update_battery(states[j].battery_j, states[j].activation, xi, scenario);
    rec.outage_count += u.outage ? 1 : 0;
    states[j].battery_j = u.next_j;
    rec.per_device_battery_j[j] = u.next_j;
  }
  return rec;
}

SlotRecord step_slot(const Scenario& scenario, const GainMatrix& gains,
                     const Deployment& deployment, std::vector<DeviceState>& states,
                     AllocMethod allocator, Rng& rng) {
  std::vector<double> activations(states.size());
  for (double& a : activations) {
    a = rng.beta(scenario.activation.beta_a, scenario.activation.beta_b);
  }
  return step_slot_with_activations(scenario, gains, deployment, states, allocator, activations);
}

namespace {

struct TrialOutcome {
  double mean_power_w = 0.0;
  double outage_fraction = 0.0;
  std::vector<SlotRecord> records;
};

TrialOutcome run_trial(const Scenario& base, DeployMethod deployer, AllocMethod allocator,
                       const SimOptions& opt, std::uint64_t seed, int trial) {
  const std::uint64_t tseed = mix_seed(seed, static_cast<std::uint64_t>(trial));

  Scenario sc = base;
  if (opt.redraw_positions) resample_positions(sc, mix_seed(tseed, 1));
  const Deployment dep = deploy_beacons(sc, mix_seed(tseed, 2),
                                        deployer == DeployMethod::kChebyshev);
  const GainMatrix gains = gain_matrix(sc, dep);

  std::vector<DeviceState> states(sc.num_devices());
  Rng battery_rng(mix_seed(tseed, 3));
  for (DeviceState& st : states) {
    st.battery_j = opt.fixed_initial_battery_j < 0.0 ? battery_rng.uniform(0.0, sc.e_max_j)
                                                     : opt.fixed_initial_battery_j;
  }
  Rng activation_rng(mix_seed(tseed, 4));

  TrialOutcome out;
  const int measured = opt.slots - opt.warmup_slots;
  double power_acc = 0.0;
  long outage_acc = 0;
  for (int s = 0; s < opt.slots; ++s) {
    SlotRecord rec = step_slot(sc, gains, dep, states, allocator, activation_rng);
    rec.slot_index = s;
    if (s >= opt.warmup_slots) {
      power_acc += rec.sum_power_w;
      outage_acc += rec.outage_count;
    }
    if (opt.keep_slot_records) out.records.push_back(std::move(rec));
  }
  out.mean_power_w = power_acc / measured;
  out.outage_fraction =
      static_cast<double>(outage_acc) / (static_cast<double>(measured) * sc.num_devices());
  return out;
}

void mean_and_stderr(const std::vector<double>& xs, double& mean, double& se) {
  mean = 0.0;
  for (double x : xs) mean += x;
  mean /= static_cast<double>(xs.size());
  se = 0.0;
  if (xs.size() < 2) return;
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  se = std::sqrt(ss / (static_cast<double>(xs.size() - 1) * static_cast<double>(xs.size())));
}

}  // namespace

SimulationReport run_monte_carlo(const Scenario& scenario, DeployMethod deployer,
                                 AllocMethod allocator, const SimOptions& options,
                                 std::uint64_t seed) {
  validate_scenario(scenario);
  if (options.trials < 1) throw std::invalid_argument("simulation: trials must be >= 1");
  if (options.slots < 1) throw std::invalid_argument("simulation: slots must be >= 1");
  if (options.warmup_slots < 0 || options.warmup_slots >= options.slots) {
    throw std::invalid_argument("simulation: warmup must leave at least one measured slot");
  }
  if (options.fixed_initial_battery_j > scenario.e_max_j) {
    throw std::invalid_argument("simulation: initial battery exceeds capacity");
  }

  const int trials = options.trials;
  std::vector<TrialOutcome> outcomes(static_cast<std::size_t>(trials));

  int threads = options.threads > 0 ? options.threads
                                    : static_cast<int>(std::thread::hardware_concurrency());
  threads = std::clamp(threads, 1, trials);

  if (threads == 1) {
    for (int t = 0; t < trials; ++t) {
      outcomes[static_cast<std::size_t>(t)] =
          run_trial(scenario, deployer, allocator, options, seed, t);
    }
  } else {
    std::atomic<int> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    auto worker = [&] {
      for (;;) {
        const int t = next.fetch_add(1);
        if (t >= trials) return;
        try {
          outcomes[static_cast<std::size_t>(t)] =
              run_trial(scenario, deployer, allocator, options, seed, t);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!first_error) first_error = std::current_exception();
          return;
        }
      }
    };
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (std::thread& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
  }

  SimulationReport report;
  report.trials = trials;
  report.slots_per_trial = options.slots;
  report.warmup_slots = options.warmup_slots;
  report.trial_mean_power_w.reserve(static_cast<std::size_t>(trials));
  report.trial_outage.reserve(static_cast<std::size_t>(trials));
  for (TrialOutcome& o : outcomes) {
    report.trial_mean_power_w.push_back(o.mean_power_w);
    report.trial_outage.push_back(o.outage_fraction);
    if (options.keep_slot_records) report.slot_records.push_back(std::move(o.records));
  }
  mean_and_stderr(report.trial_mean_power_w, report.mean_sum_power_w, report.stderr_power);
  mean_and_stderr(report.trial_outage, report.outage_probability, report.stderr_outage);
  return report;
}

}  // namespace wetplan
