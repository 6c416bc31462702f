#include "wetplan/model.hpp"

#include <stdexcept>
#include <string>

#include "wetplan/rng.hpp"

namespace wetplan {

void validate_scenario(const Scenario& s) {
  const auto fail = [](const std::string& msg) { throw std::invalid_argument("scenario: " + msg); };

  if (!(s.area_width_m > 0.0) || !(s.area_height_m > 0.0)) fail("area dimensions must be positive");
  if (s.devices.empty()) fail("at least one device required");
  for (std::size_t j = 0; j < s.devices.size(); ++j) {
    const Position& p = s.devices[j];
    if (p.x < 0.0 || p.x > s.area_width_m || p.y < 0.0 || p.y > s.area_height_m) {
      fail("device " + std::to_string(j) + " lies outside the area");
    }
  }
  if (s.num_beacons < 1) fail("num_beacons must be >= 1");
  if (static_cast<std::size_t>(s.num_beacons) > s.devices.size()) {
    fail("num_beacons exceeds the number of devices");
  }
  if (!(s.slot_duration_s > 0.0)) fail("slot_duration must be positive");
  if (!(s.e_th_j > 0.0) || s.e_th_j > s.e_max_j) fail("requires 0 < e_th <= e_max");
  if (!(s.p_max_w > 0.0)) fail("p_max must be positive");
  if (s.p_sleep_w < 0.0 || s.p_active_w < s.p_sleep_w) fail("requires p_active >= p_sleep >= 0");
  if (!(s.radio.frequency_hz > 0.0)) fail("frequency must be positive");
  if (!(s.radio.combined_gain > 0.0)) fail("combined_gain must be positive");
  if (s.radio.pathloss_exponent < 2.0) fail("pathloss_exponent must be >= 2");
  if (!(s.radio.min_distance_m > 0.0)) fail("min_distance must be positive");
  if (!(s.eh.saturation_w > 0.0) || !(s.eh.c0 > 0.0) || !(s.eh.c1 > 0.0)) {
    fail("harvesting constants must be positive");
  }
  if (!(s.activation.beta_a > 0.0) || !(s.activation.beta_b > 0.0)) {
    fail("activation shape parameters must be positive");
  }
}

Scenario default_scenario(int num_devices, int num_beacons, std::uint64_t seed) {
  if (num_devices < 1) throw std::invalid_argument("default_scenario: num_devices must be >= 1");
  if (num_beacons < 1 || num_beacons > num_devices) {
    throw std::invalid_argument("default_scenario: requires 1 <= num_beacons <= num_devices");
  }
  Scenario s;
  s.num_beacons = num_beacons;
  s.devices.resize(static_cast<std::size_t>(num_devices));
  resample_positions(s, seed);
  return s;
}

void resample_positions(Scenario& s, std::uint64_t seed) {
  Rng rng(seed);
  for (Position& p : s.devices) {
    p.x = rng.uniform(0.0, s.area_width_m);
    p.y = rng.uniform(0.0, s.area_height_m);
  }
}

}  // namespace wetplan
