#include "wetplan/power_alloc.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "wetplan/lp.hpp"

namespace wetplan {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct DemandSet {
  std::vector<int> device;     // indices with positive demand
  std::vector<double> incident_w;  // matching required incident power
};

DemandSet collect_demands(const Scenario& sc, std::span<const DeviceState> states,
                          std::vector<char>& saturated) {
  DemandSet d;
  saturated.assign(states.size(), 0);
  for (std::size_t j = 0; j < states.size(); ++j) {
    bool sat = false;
    const double q =
        required_incident_power(states[j], sc.e_th_j, sc.slot_duration_s, sc.eh, &sat);
    saturated[j] = sat ? 1 : 0;
    if (q > 0.0) {
      d.device.push_back(static_cast<int>(j));
      d.incident_w.push_back(q);
    }
  }
  return d;
}

// Shortfalls are always judged against the full gain matrix, so cross-cluster
// contributions count even for the allocator that ignored them.
void finalize(const Scenario& sc, const GainMatrix& gains, std::span<const DeviceState> states,
              AllocationResult& r) {
  for (double& p : r.powers_w) p = std::clamp(p, 0.0, sc.p_max_w);
  r.sum_power_w = std::accumulate(r.powers_w.begin(), r.powers_w.end(), 0.0);
  r.shortfall_j.assign(states.size(), 0.0);
  r.total_shortfall_j = 0.0;
  for (std::size_t j = 0; j < states.size(); ++j) {
    const double xi =
        harvested_energy(r.powers_w, gains.device_row(j), sc.slot_duration_s, sc.eh);
    const double projected = std::min(states[j].battery_j + xi, sc.e_max_j);
    const double miss = sc.e_th_j - projected;
    if (miss > kEnergyTol) {
      r.shortfall_j[j] = miss;
      r.total_shortfall_j += miss;
    }
  }
  r.feasible = r.total_shortfall_j == 0.0;
}

void check_shapes(const GainMatrix& gains, std::span<const DeviceState> states) {
  if (states.size() != gains.devices) {
    throw std::invalid_argument("allocate: device state count does not match gain matrix");
  }
}

}  // namespace

const char* alloc_tag(AllocMethod m) { return m == AllocMethod::kLp ? "lp" : "approx"; }

AllocMethod alloc_from_tag(const std::string& tag) {
  if (tag == "lp") return AllocMethod::kLp;
  if (tag == "approx") return AllocMethod::kApprox;
  throw std::invalid_argument("unknown allocator tag: " + tag);
}

double required_incident_power(const DeviceState& device, double e_th_j, double tau_s,
                               const EhParams& eh, bool* saturated) {
  if (saturated) *saturated = false;
  const double deficit = e_th_j - device.battery_j;
  if (deficit <= 0.0) return 0.0;
  const double rate_w = deficit / tau_s;
  if (rate_w >= saturation_threshold(eh)) {
    if (saturated) *saturated = true;
    return saturation_incident(eh);
  }
  return harvest_rate_inverse(rate_w, eh);
}

AllocationResult allocate_lp(const Scenario& scenario, const GainMatrix& gains,
                             std::span<const DeviceState> states) {
  check_shapes(gains, states);
  AllocationResult r;
  r.mode = AllocMethod::kLp;
  r.powers_w.assign(gains.beacons, 0.0);

  const DemandSet demand = collect_demands(scenario, states, r.saturated);
  const int nb = static_cast<int>(gains.beacons);
  const int nd = static_cast<int>(demand.device.size());
  if (nd == 0) {
    finalize(scenario, gains, states, r);
    return r;
  }

  LpProblem lp;
  lp.objective.assign(nb, 1.0);
  lp.upper.assign(nb, scenario.p_max_w);
  lp.row_rhs = demand.incident_w;
  lp.row_coeffs.resize(nd);
  for (int k = 0; k < nd; ++k) {
    const auto row = gains.device_row(static_cast<std::size_t>(demand.device[k]));
    lp.row_coeffs[k].assign(row.begin(), row.end());
  }

  LpSolution sol = solve_lp(lp);
  r.lp_iterations = sol.iterations;
  if (sol.status == LpStatus::kOptimal) {
    r.powers_w = sol.x;
    finalize(scenario, gains, states, r);
    return r;
  }

  // Demand can't all be met under the cap: find the minimum total incident
  // shortfall first, then the cheapest power vector achieving it. Whatever is
  // still missing rolls over to later slots.
  LpProblem relax;
  relax.objective.assign(nb + nd, 0.0);
  relax.upper.assign(nb + nd, kInf);
  for (int i = 0; i < nb; ++i) relax.upper[i] = scenario.p_max_w;
  for (int k = 0; k < nd; ++k) relax.objective[nb + k] = 1.0;
  relax.row_rhs = demand.incident_w;
  relax.row_coeffs.assign(nd, std::vector<double>(nb + nd, 0.0));
  for (int k = 0; k < nd; ++k) {
    const auto row = gains.device_row(static_cast<std::size_t>(demand.device[k]));
    std::copy(row.begin(), row.end(), relax.row_coeffs[k].begin());
    relax.row_coeffs[k][nb + k] = 1.0;
  }
  LpSolution stage1 = solve_lp(relax);
  r.lp_iterations += stage1.iterations;
  if (stage1.status != LpStatus::kOptimal) {
    throw std::runtime_error("allocate_lp: shortfall relaxation failed to solve");
  }

  LpProblem stage2 = relax;
  for (int i = 0; i < nb; ++i) stage2.objective[i] = 1.0;
  for (int k = 0; k < nd; ++k) stage2.objective[nb + k] = 0.0;
  std::vector<double> cap_row(nb + nd, 0.0);
  for (int k = 0; k < nd; ++k) cap_row[nb + k] = -1.0;
  stage2.row_coeffs.push_back(std::move(cap_row));
  stage2.row_rhs.push_back(-(stage1.objective + 1e-9 * std::max(1.0, stage1.objective)));

  LpSolution sol2 = solve_lp(stage2);
  r.lp_iterations += sol2.iterations;
  const LpSolution& pick = sol2.status == LpStatus::kOptimal ? sol2 : stage1;
  r.powers_w.assign(pick.x.begin(), pick.x.begin() + nb);
  finalize(scenario, gains, states, r);
  return r;
}

AllocationResult allocate_approx(const Scenario& scenario, const GainMatrix& gains,
                                 const Deployment& deployment,
                                 std::span<const DeviceState> states) {
  check_shapes(gains, states);
  if (deployment.assignment.size() != states.size() ||
      deployment.beacon_positions.size() != gains.beacons) {
    throw std::invalid_argument("allocate_approx: deployment does not match gain matrix");
  }
  AllocationResult r;
  r.mode = AllocMethod::kApprox;
  r.powers_w.assign(gains.beacons, 0.0);

  const DemandSet demand = collect_demands(scenario, states, r.saturated);
  for (std::size_t k = 0; k < demand.device.size(); ++k) {
    const auto j = static_cast<std::size_t>(demand.device[k]);
    const auto i = static_cast<std::size_t>(deployment.assignment[j]);
    r.powers_w[i] = std::max(r.powers_w[i], demand.incident_w[k] / gains(j, i));
  }
  finalize(scenario, gains, states, r);
  return r;
}

AllocationResult allocate(const Scenario& scenario, const GainMatrix& gains,
                          const Deployment& deployment, std::span<const DeviceState> states,
                          AllocMethod method) {
  return method == AllocMethod::kLp ? allocate_lp(scenario, gains, states)
                                    : allocate_approx(scenario, gains, deployment, states);
}

}  // namespace wetplan
