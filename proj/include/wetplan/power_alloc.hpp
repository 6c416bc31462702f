#pragma once

#include <span>
#include <string>
#include <vector>

#include "wetplan/clustering.hpp"
#include "wetplan/eh_channel.hpp"
#include "wetplan/model.hpp"

namespace wetplan {

inline constexpr double kEnergyTol = 1e-9;  // joules

enum class AllocMethod { kLp, kApprox };

const char* alloc_tag(AllocMethod m);  // "lp" / "approx"
AllocMethod alloc_from_tag(const std::string& tag);

struct AllocationResult {
  AllocMethod mode = AllocMethod::kLp;
  std::vector<double> powers_w;  // per beacon, within [0, p_max]
  double sum_power_w = 0.0;
  bool feasible = true;  // every shortfall entry below kEnergyTol
  // Projected threshold deficit per device after one slot of charging at the
  // returned powers (consumption not yet known at planning time).
  std::vector<double> shortfall_j;
  double total_shortfall_j = 0.0;
  std::vector<char> saturated;  // devices whose demand hit the harvester ceiling
  int lp_iterations = 0;
};

// Incident power (W at the device) needed to lift the battery to e_th within
// one slot; 0 when already there. Demands beyond the harvester's reach are
// clamped to the saturation boundary and flagged instead of raising.
double required_incident_power(const DeviceState& device, double e_th_j, double tau_s,
                               const EhParams& eh, bool* saturated = nullptr);

AllocationResult allocate_lp(const Scenario& scenario, const GainMatrix& gains,
                             std::span<const DeviceState> states);

AllocationResult allocate_approx(const Scenario& scenario, const GainMatrix& gains,
                                 const Deployment& deployment,
                                 std::span<const DeviceState> states);

AllocationResult allocate(const Scenario& scenario, const GainMatrix& gains,
                          const Deployment& deployment, std::span<const DeviceState> states,
                          AllocMethod method);

}  // namespace wetplan
