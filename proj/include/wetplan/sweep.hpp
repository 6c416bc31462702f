#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "wetplan/clustering.hpp"
#include "wetplan/model.hpp"
#include "wetplan/power_alloc.hpp"
#include "wetplan/simulation.hpp"

namespace wetplan {

enum class SweepParameter { kEnergyThreshold, kNumBeacons };

const char* sweep_parameter_tag(SweepParameter p);  // "e_th" / "num_beacons"
SweepParameter sweep_parameter_from_tag(const std::string& tag);

struct SweepSpec {
  SweepParameter parameter = SweepParameter::kEnergyThreshold;
  std::vector<double> values;  // strictly increasing
  std::vector<AllocMethod> allocators{AllocMethod::kLp};
  std::vector<DeployMethod> deployers{DeployMethod::kChebyshev};
  int trials = 200;
  int slots = 20;
  int warmup_slots = 5;
  std::uint64_t seed = 1;
  int threads = 0;
};

void validate_sweep_spec(const SweepSpec& spec);

SweepSpec sweep_spec_from_text(const std::string& text, const std::string& origin);
SweepSpec load_sweep_spec(const std::string& path);

struct SweepRow {
  double swept_value = 0.0;
  AllocMethod allocator = AllocMethod::kLp;
  DeployMethod deployer = DeployMethod::kChebyshev;
  double mean_sum_power_w = 0.0;
  double outage_probability = 0.0;
  double stderr_outage = 0.0;
  int trials = 0;
};

// Applies one swept value to a copy of the base scenario; throws on values
// unusable for the parameter (e.g. fractional beacon counts).
Scenario scenario_with_value(const Scenario& base, SweepParameter parameter, double value);

// One row per (value x allocator x deployer), in that nesting order. Every
// cell runs from the same master seed, so rows differing only in method are
// paired on identical randomness.
std::vector<SweepRow> run_sweep(const Scenario& base, const SweepSpec& spec);

std::string sweep_csv(std::span<const SweepRow> rows);

}  // namespace wetplan
