// Physical-layer math: log-distance path gains, the sigmoidal harvesting
// curve and its inverse, and per-slot harvested energy.
#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "wetplan/clustering.hpp"
#include "wetplan/model.hpp"

namespace wetplan {

// Propagation speed used to turn the carrier frequency into a wavelength.
// The nominal 3e8 m/s link-budget convention, not the exact vacuum value.
inline constexpr double kSpeedOfLight = 3.0e8;

// Demands within this relative margin of the saturation level are treated as
// unreachable in a single slot.
inline constexpr double kEpsSat = 1e-3;

// Requested harvest rate is too close to the saturation ceiling to invert;
// the caller has to spread the demand over additional slots.
class SaturationError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Dimensionless fraction of transmitted power arriving at distance d,
// evaluated with the distance floored at radio.min_distance_m.
double path_gain(double distance_m, const RadioParams& radio);

// Dense |devices| x |beacons| path-gain matrix.
struct GainMatrix {
  std::size_t devices = 0;
  std::size_t beacons = 0;
  std::vector<double> rho;  // row-major, device-major

  double operator()(std::size_t device, std::size_t beacon) const {
    return rho[device * beacons + beacon];
  }
  std::span<const double> device_row(std::size_t device) const {
    return {rho.data() + device * beacons, beacons};
  }
};

// Full gain matrix between every device and every beacon position,
// cross-cluster entries included.
GainMatrix gain_matrix(const Scenario& scenario, const Deployment& deployment);

// Harvested DC power (W) for a given incident RF power (W). The curve-fit
// constants act on milliwatts; the W<->mW conversion happens here and only
// here. Monotone increasing, zero at zero, bounded by eh.saturation_w.
double harvest_rate(double incident_w, const EhParams& eh);

// Largest harvest rate considered invertible: saturation_w * (1 - kEpsSat).
double saturation_threshold(const EhParams& eh);

// Incident power needed to reach the saturation threshold; finite cap used
// when a demand is clamped instead of rejected.
double saturation_incident(const EhParams& eh);

// Inverse of harvest_rate. Throws SaturationError for target rates at or
// above saturation_threshold(eh), std::invalid_argument for negative ones.
double harvest_rate_inverse(double target_rate_w, const EhParams& eh);

// Energy (J) a device harvests over one slot given the per-beacon transmit
// powers and its row of the gain matrix.
double harvested_energy(std::span<const double> powers_w, std::span<const double> gains,
                        double slot_duration_s, const EhParams& eh);

}  // namespace wetplan
