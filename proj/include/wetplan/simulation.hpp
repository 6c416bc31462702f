#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "wetplan/clustering.hpp"
#include "wetplan/eh_channel.hpp"
#include "wetplan/model.hpp"
#include "wetplan/power_alloc.hpp"
#include "wetplan/rng.hpp"

namespace wetplan {

double consumed_energy(double activation, double tau_s, double p_sleep_w, double p_active_w);

struct BatteryUpdate {
  bool outage = false;     // battery at slot start couldn't cover the slot's draw
  double consumed_j = 0.0;  // actual draw, min(battery, demand)
  double next_j = 0.0;      // post-slot level, clamped to [0, E_max]
};

BatteryUpdate update_battery(double battery_j, double activation, double harvested_j,
                             const Scenario& scenario);

struct SlotRecord {
  int slot_index = -1;
  double sum_power_w = 0.0;
  int outage_count = 0;
  bool alloc_feasible = true;
  double total_shortfall_j = 0.0;
  std::vector<double> per_device_battery_j;  // post-slot
};

// One slot: store the sampled activations, mark outages at the slot start,
// plan powers from the start-of-slot batteries, then harvest and update.
SlotRecord step_slot_with_activations(const Scenario& scenario, const GainMatrix& gains,
                                      const Deployment& deployment,
                                      std::vector<DeviceState>& states, AllocMethod allocator,
                                      std::span<const double> activations);

SlotRecord step_slot(const Scenario& scenario, const GainMatrix& gains,
                     const Deployment& deployment, std::vector<DeviceState>& states,
                     AllocMethod allocator, Rng& rng);

struct SimOptions {
  int trials = 200;
  int slots = 20;
  int warmup_slots = 5;  // skipped in the aggregates
  int threads = 0;       // <= 0: one per hardware thread
  bool redraw_positions = true;
  double fixed_initial_battery_j = -1.0;  // < 0: uniform on [0, E_max]
  bool keep_slot_records = false;
};

struct SimulationReport {
  int trials = 0;
  int slots_per_trial = 0;
  int warmup_slots = 0;
  double mean_sum_power_w = 0.0;
  double stderr_power = 0.0;
  double outage_probability = 0.0;  // device-slot fraction over measured slots
  double stderr_outage = 0.0;       // across trials
  std::vector<double> trial_mean_power_w;
  std::vector<double> trial_outage;
  std::vector<std::vector<SlotRecord>> slot_records;  // per trial, when requested
};

// Independent trials (fresh placement, deployment, batteries, activations per
// trial) fanned out over threads; per-trial seed streams keep the result
// identical for any thread count and keep different allocator/deployer runs
// paired on the same randomness.
SimulationReport run_monte_carlo(const Scenario& scenario, DeployMethod deployer,
                                 AllocMethod allocator, const SimOptions& options,
                                 std::uint64_t seed);

}  // namespace wetplan
