// Shared domain types for the planning pipeline. Everything is stored in SI
// base units (meters, seconds, watts, joules, hertz); the only unit
// conversion in the code base happens inside the harvesting model, whose
// curve-fit constants operate on milliwatts.
#pragma once

#include <cstdint>
#include <vector>

#include "wetplan/geometry.hpp"

namespace wetplan {

struct RadioParams {
  double frequency_hz = 2.4e9;
  double combined_gain = 24.0;    // transmit gain * receive gain
  double pathloss_exponent = 2.7;
  double min_distance_m = 0.25;   // near-field floor; the log-distance law diverges at d = 0
};

struct EhParams {
  double saturation_w = 10.73e-3;  // harvested-power ceiling
  double c0 = 5.365;               // curve-fit constants, milliwatt domain
  double c1 = 0.2308;
};

struct ActivationParams {
  double beta_a = 0.5;
  double beta_b = 0.5;
};

// Immutable problem instance.
struct Scenario {
  double area_width_m = 30.0;
  double area_height_m = 15.0;
  std::vector<Position> devices;
  int num_beacons = 15;
  double slot_duration_s = 120.0;
  double e_max_j = 1.0;
  double e_th_j = 0.25;
  double p_max_w = 4.0;
  double p_sleep_w = 10e-6;
  double p_active_w = 1e-3;
  RadioParams radio;
  EhParams eh;
  ActivationParams activation;

  std::size_t num_devices() const { return devices.size(); }
};

// Per-device mutable state, owned by the simulation engine.
struct DeviceState {
  double battery_j = 0.0;
  double activation = 0.0;  // fraction of the current slot spent active, in [0,1]
};

// Throws std::invalid_argument naming the first violated constraint.
void validate_scenario(const Scenario& s);

// Scenario with the default radio/harvesting/battery parameters and
// num_devices positions drawn i.i.d. uniformly over the area. Identical
// seeds yield identical scenarios.
Scenario default_scenario(int num_devices, int num_beacons, std::uint64_t seed);

// Redraws the device positions in place, uniformly over the scenario area.
void resample_positions(Scenario& s, std::uint64_t seed);

}  // namespace wetplan
