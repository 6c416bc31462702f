#include "wetplan/sweep.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "wetplan/config.hpp"

namespace wetplan {
namespace {

std::vector<std::string> split_tokens(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

AllocMethod alloc_from_loose_tag(const std::string& tag) {
  return alloc_from_tag(tag);  // no aliases beyond the canonical two
}

DeployMethod deploy_from_loose_tag(const std::string& tag) {
  if (tag == "mean") return DeployMethod::kMeansMean;
  if (tag == "chebyshev") return DeployMethod::kChebyshev;
  return method_from_tag(tag);
}

}  // namespace

const char* sweep_parameter_tag(SweepParameter p) {
  return p == SweepParameter::kEnergyThreshold ? "e_th" : "num_beacons";
}

SweepParameter sweep_parameter_from_tag(const std::string& tag) {
  if (tag == "e_th") return SweepParameter::kEnergyThreshold;
  if (tag == "num_beacons") return SweepParameter::kNumBeacons;
  throw std::invalid_argument("unknown sweep parameter: " + tag);
}

void validate_sweep_spec(const SweepSpec& spec) {
  if (spec.values.empty()) throw std::invalid_argument("sweep: values must be nonempty");
  for (std::size_t i = 1; i < spec.values.size(); ++i) {
    if (!(spec.values[i] > spec.values[i - 1])) {
      throw std::invalid_argument("sweep: values must be strictly increasing");
    }
  }
  if (spec.allocators.empty()) throw std::invalid_argument("sweep: no allocators selected");
  if (spec.deployers.empty()) throw std::invalid_argument("sweep: no deployers selected");
  if (spec.trials < 1) throw std::invalid_argument("sweep: trials must be >= 1");
  if (spec.slots < 1) throw std::invalid_argument("sweep: slots must be >= 1");
  if (spec.warmup_slots < 0 || spec.warmup_slots >= spec.slots) {
    throw std::invalid_argument("sweep: warmup must leave at least one measured slot");
  }
}

SweepSpec sweep_spec_from_text(const std::string& text, const std::string& origin) {
  SweepSpec spec;
  std::string values_raw;
  int values_line = 0;

  for (const KeyValueLine& kv : parse_key_value_lines(text, origin)) {
    const auto where = [&] { return origin + ":" + std::to_string(kv.line) + ": "; };
    try {
      if (kv.key == "parameter") {
        spec.parameter = sweep_parameter_from_tag(kv.value);
      } else if (kv.key == "values") {
        values_raw = kv.value;
        values_line = kv.line;
      } else if (kv.key == "allocators" || kv.key == "allocator") {
        spec.allocators.clear();
        for (const std::string& tok : split_tokens(kv.value)) {
          spec.allocators.push_back(alloc_from_loose_tag(tok));
        }
      } else if (kv.key == "deployers" || kv.key == "deployer") {
        spec.deployers.clear();
        for (const std::string& tok : split_tokens(kv.value)) {
          spec.deployers.push_back(deploy_from_loose_tag(tok));
        }
      } else if (kv.key == "trials") {
        spec.trials = static_cast<int>(parse_integer(kv.value));
      } else if (kv.key == "slots") {
        spec.slots = static_cast<int>(parse_integer(kv.value));
      } else if (kv.key == "warmup") {
        spec.warmup_slots = static_cast<int>(parse_integer(kv.value));
      } else if (kv.key == "seed") {
        spec.seed = static_cast<std::uint64_t>(parse_integer(kv.value));
      } else if (kv.key == "threads") {
        spec.threads = static_cast<int>(parse_integer(kv.value));
      } else {
        throw ConfigError("unknown key '" + kv.key + "'");
      }
    } catch (const ConfigError& e) {
      throw ConfigError(where() + e.what());
    } catch (const std::invalid_argument& e) {
      throw ConfigError(where() + e.what());
    }
  }

  if (values_raw.empty()) throw ConfigError(origin + ": missing 'values' line");
  const Unit value_unit =
      spec.parameter == SweepParameter::kEnergyThreshold ? Unit::kEnergy : Unit::kNone;
  for (const std::string& tok : split_tokens(values_raw)) {
    try {
      spec.values.push_back(parse_quantity(tok, value_unit));
    } catch (const ConfigError& e) {
      throw ConfigError(origin + ":" + std::to_string(values_line) + ": " + e.what());
    }
  }
  try {
    validate_sweep_spec(spec);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(origin + ": " + e.what());
  }
  return spec;
}

SweepSpec load_sweep_spec(const std::string& path) {
  return sweep_spec_from_text(read_text_file(path), path);
}

Scenario scenario_with_value(const Scenario& base, SweepParameter parameter, double value) {
  Scenario sc = base;
  if (parameter == SweepParameter::kEnergyThreshold) {
    sc.e_th_j = value;
  } else {
    const double rounded = std::round(value);
    if (std::abs(value - rounded) > 1e-9 || rounded < 1.0) {
      throw std::invalid_argument("sweep: num_beacons values must be positive integers");
    }
    sc.num_beacons = static_cast<int>(rounded);
  }
  return sc;
}

std::vector<SweepRow> run_sweep(const Scenario& base, const SweepSpec& spec) {
  validate_sweep_spec(spec);
  SimOptions opt;
  opt.trials = spec.trials;
  opt.slots = spec.slots;
  opt.warmup_slots = spec.warmup_slots;
  opt.threads = spec.threads;

  std::vector<SweepRow> rows;
  rows.reserve(spec.values.size() * spec.allocators.size() * spec.deployers.size());
  for (double value : spec.values) {
    const Scenario sc = scenario_with_value(base, spec.parameter, value);
    for (AllocMethod allocator : spec.allocators) {
      for (DeployMethod deployer : spec.deployers) {
        const SimulationReport rep = run_monte_carlo(sc, deployer, allocator, opt, spec.seed);
        SweepRow row;
        row.swept_value = value;
        row.allocator = allocator;
        row.deployer = deployer;
        row.mean_sum_power_w = rep.mean_sum_power_w;
        row.outage_probability = rep.outage_probability;
        row.stderr_outage = rep.stderr_outage;
        row.trials = rep.trials;
        rows.push_back(row);
      }
    }
  }
  return rows;
}

std::string sweep_csv(std::span<const SweepRow> rows) {
  std::string out =
      "swept_value,allocator,deployer,mean_sum_power_W,outage_probability,stderr_outage,trials\n";
  char buf[192];
  for (const SweepRow& r : rows) {
    std::snprintf(buf, sizeof(buf), "%.12g,%s,%s,%.12g,%.12g,%.12g,%d\n", r.swept_value,
                  alloc_tag(r.allocator), method_tag(r.deployer), r.mean_sum_power_w,
                  r.outage_probability, r.stderr_outage, r.trials);
    out += buf;
  }
  return out;
}

}  // namespace wetplan
