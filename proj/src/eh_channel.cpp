#include "wetplan/eh_channel.hpp"

#include <cmath>
#include <numbers>

namespace wetplan {

double path_gain(double distance_m, const RadioParams& radio) {
  if (distance_m < 0.0) throw std::invalid_argument("path_gain: negative distance");
  const double d = std::max(distance_m, radio.min_distance_m);
  const double wavelength = kSpeedOfLight / radio.frequency_hz;
  const double aperture = wavelength / (4.0 * std::numbers::pi);
  return radio.combined_gain * aperture * aperture * std::pow(d, -radio.pathloss_exponent);
}

GainMatrix gain_matrix(const Scenario& scenario, const Deployment& deployment) {
  if (deployment.beacon_positions.size() != static_cast<std::size_t>(scenario.num_beacons)) {
    throw std::invalid_argument("gain_matrix: deployment beacon count does not match scenario");
  }
  GainMatrix g;
  g.devices = scenario.devices.size();
  g.beacons = deployment.beacon_positions.size();
  g.rho.resize(g.devices * g.beacons);
  for (std::size_t j = 0; j < g.devices; ++j) {
    for (std::size_t i = 0; i < g.beacons; ++i) {
      const double d = distance(scenario.devices[j], deployment.beacon_positions[i]);
      g.rho[j * g.beacons + i] = path_gain(d, scenario.radio);
    }
  }
  return g;
}

double harvest_rate(double incident_w, const EhParams& eh) {
  if (incident_w < 0.0) throw std::invalid_argument("harvest_rate: negative incident power");
  // mW domain of the fitted constants.
  const double x = incident_w * 1e3;
  const double sat = eh.saturation_w * 1e3;
  const double y = sat * (1.0 - std::exp(-eh.c1 * x)) / (1.0 + std::exp(-eh.c1 * (x - eh.c0)));
  return y * 1e-3;
}

double saturation_threshold(const EhParams& eh) { return eh.saturation_w * (1.0 - kEpsSat); }

double saturation_incident(const EhParams& eh) {
  const double y = saturation_threshold(eh) * 1e3;
  const double sat = eh.saturation_w * 1e3;
  const double x = -std::log((sat - y) / (y * std::exp(eh.c0 * eh.c1) + sat)) / eh.c1;
  return x * 1e-3;
}

double harvest_rate_inverse(double target_rate_w, const EhParams& eh) {
  if (target_rate_w < 0.0) throw std::invalid_argument("harvest_rate_inverse: negative target");
  if (target_rate_w >= saturation_threshold(eh)) {
    throw SaturationError("harvest_rate_inverse: target within the saturation margin");
  }
  const double y = target_rate_w * 1e3;
  const double sat = eh.saturation_w * 1e3;
  const double x = -std::log((sat - y) / (y * std::exp(eh.c0 * eh.c1) + sat)) / eh.c1;
  return x * 1e-3;
}

double harvested_energy(std::span<const double> powers_w, std::span<const double> gains,
                        double slot_duration_s, const EhParams& eh) {
  if (powers_w.size() != gains.size()) {
    throw std::invalid_argument("harvested_energy: powers and gains differ in length");
  }
  double incident = 0.0;
  for (std::size_t i = 0; i < powers_w.size(); ++i) incident += powers_w[i] * gains[i];
  return slot_duration_s * harvest_rate(incident, eh);
}

}  // namespace wetplan
