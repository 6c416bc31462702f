#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdint>
#include <string>
#include <vector>

#include "wetplan/clustering.hpp"
#include "wetplan/config.hpp"
#include "wetplan/eh_channel.hpp"
#include "wetplan/geometry.hpp"
#include "wetplan/model.hpp"
#include "wetplan/power_alloc.hpp"
#include "wetplan/simulation.hpp"
#include "wetplan/sweep.hpp"

namespace py = pybind11;
using namespace wetplan;

namespace {

std::vector<DeviceState> states_from_batteries(const std::vector<double>& batteries) {
  std::vector<DeviceState> states(batteries.size());
  for (std::size_t j = 0; j < batteries.size(); ++j) states[j].battery_j = batteries[j];
  return states;
}

SweepSpec build_spec(const std::string& parameter, const std::vector<double>& values,
                     const std::vector<std::string>& allocators,
                     const std::vector<std::string>& deployers, int trials, int slots, int warmup,
                     std::uint64_t seed, int threads) {
  SweepSpec spec;
  spec.parameter = sweep_parameter_from_tag(parameter);
  spec.values = values;
  spec.allocators.clear();
  for (const std::string& a : allocators) spec.allocators.push_back(alloc_from_tag(a));
  spec.deployers.clear();
  for (const std::string& d : deployers) spec.deployers.push_back(method_from_tag(d));
  spec.trials = trials;
  spec.slots = slots;
  spec.warmup_slots = warmup;
  spec.seed = seed;
  spec.threads = threads;
  validate_sweep_spec(spec);
  return spec;
}

}  // namespace

PYBIND11_MODULE(_wetplan, m) {
  m.doc() = "power-beacon placement and charging planner";
  m.attr("__version__") = "0.1.0";

  py::class_<Position>(m, "Position")
      .def(py::init<>())
      .def(py::init([](double x, double y) { return Position{x, y}; }), py::arg("x"),
           py::arg("y"))
      .def_readwrite("x", &Position::x)
      .def_readwrite("y", &Position::y)
      .def("__repr__", [](const Position& p) {
        return "Position(" + std::to_string(p.x) + ", " + std::to_string(p.y) + ")";
      });

  py::class_<RadioParams>(m, "RadioParams")
      .def(py::init<>())
      .def_readwrite("frequency_hz", &RadioParams::frequency_hz)
      .def_readwrite("combined_gain", &RadioParams::combined_gain)
      .def_readwrite("pathloss_exponent", &RadioParams::pathloss_exponent)
      .def_readwrite("min_distance_m", &RadioParams::min_distance_m);

  py::class_<EhParams>(m, "EhParams")
      .def(py::init<>())
      .def_readwrite("saturation_w", &EhParams::saturation_w)
      .def_readwrite("c0", &EhParams::c0)
      .def_readwrite("c1", &EhParams::c1);

  py::class_<ActivationParams>(m, "ActivationParams")
      .def(py::init<>())
      .def_readwrite("beta_a", &ActivationParams::beta_a)
      .def_readwrite("beta_b", &ActivationParams::beta_b);

  py::class_<Scenario>(m, "Scenario")
      .def(py::init<>())
      .def_readwrite("area_width_m", &Scenario::area_width_m)
      .def_readwrite("area_height_m", &Scenario::area_height_m)
      .def_readwrite("devices", &Scenario::devices)
      .def_readwrite("num_beacons", &Scenario::num_beacons)
      .def_readwrite("slot_duration_s", &Scenario::slot_duration_s)
      .def_readwrite("e_max_j", &Scenario::e_max_j)
      .def_readwrite("e_th_j", &Scenario::e_th_j)
      .def_readwrite("p_max_w", &Scenario::p_max_w)
      .def_readwrite("p_sleep_w", &Scenario::p_sleep_w)
      .def_readwrite("p_active_w", &Scenario::p_active_w)
      .def_readwrite("radio", &Scenario::radio)
      .def_readwrite("eh", &Scenario::eh)
      .def_readwrite("activation", &Scenario::activation)
      .def_property_readonly("num_devices", &Scenario::num_devices);

  py::class_<Deployment>(m, "Deployment")
      .def(py::init<>())
      .def_readwrite("beacon_positions", &Deployment::beacon_positions)
      .def_readwrite("assignment", &Deployment::assignment)
      .def_readwrite("cluster_radii", &Deployment::cluster_radii)
      .def_property_readonly("method",
                             [](const Deployment& d) { return std::string(method_tag(d.method)); });

  py::class_<GainMatrix>(m, "GainMatrix")
      .def_readonly("devices", &GainMatrix::devices)
      .def_readonly("beacons", &GainMatrix::beacons)
      .def_readonly("rho", &GainMatrix::rho)
      .def("__call__", &GainMatrix::operator(), py::arg("device"), py::arg("beacon"));

  py::class_<AllocationResult>(m, "AllocationResult")
      .def_property_readonly(
          "allocator", [](const AllocationResult& r) { return std::string(alloc_tag(r.mode)); })
      .def_readonly("powers_w", &AllocationResult::powers_w)
      .def_readonly("sum_power_w", &AllocationResult::sum_power_w)
      .def_readonly("feasible", &AllocationResult::feasible)
      .def_readonly("shortfall_j", &AllocationResult::shortfall_j)
      .def_readonly("total_shortfall_j", &AllocationResult::total_shortfall_j);

  py::class_<SimulationReport>(m, "SimulationReport")
      .def_readonly("trials", &SimulationReport::trials)
      .def_readonly("slots_per_trial", &SimulationReport::slots_per_trial)
      .def_readonly("warmup_slots", &SimulationReport::warmup_slots)
      .def_readonly("mean_sum_power_w", &SimulationReport::mean_sum_power_w)
      .def_readonly("stderr_power", &SimulationReport::stderr_power)
      .def_readonly("outage_probability", &SimulationReport::outage_probability)
      .def_readonly("stderr_outage", &SimulationReport::stderr_outage)
      .def_readonly("trial_mean_power_w", &SimulationReport::trial_mean_power_w)
      .def_readonly("trial_outage", &SimulationReport::trial_outage);

  py::class_<SweepRow>(m, "SweepRow")
      .def_readonly("swept_value", &SweepRow::swept_value)
      .def_property_readonly(
          "allocator", [](const SweepRow& r) { return std::string(alloc_tag(r.allocator)); })
      .def_property_readonly(
          "deployer", [](const SweepRow& r) { return std::string(method_tag(r.deployer)); })
      .def_readonly("mean_sum_power_w", &SweepRow::mean_sum_power_w)
      .def_readonly("outage_probability", &SweepRow::outage_probability)
      .def_readonly("stderr_outage", &SweepRow::stderr_outage)
      .def_readonly("trials", &SweepRow::trials);

  m.def("default_scenario", &default_scenario, py::arg("num_devices") = 64,
        py::arg("num_beacons") = 15, py::arg("seed") = 1);
  m.def("validate_scenario", &validate_scenario);
  m.def(
      "load_scenario",
      [](const std::string& path) { return load_scenario(path).scenario; }, py::arg("path"));
  m.def(
      "parse_scenario",
      [](const std::string& text) { return scenario_from_text(text, "<string>").scenario; },
      py::arg("text"));

  m.def(
      "min_enclosing_circle",
      [](const std::vector<std::pair<double, double>>& pts) {
        std::vector<Position> ps;
        ps.reserve(pts.size());
        for (const auto& [x, y] : pts) ps.push_back({x, y});
        const Circle c = min_enclosing_circle(ps);
        return std::make_tuple(std::make_pair(c.center.x, c.center.y), c.radius);
      },
      py::arg("points"));

  m.def("deploy_beacons", &deploy_beacons, py::arg("scenario"), py::arg("seed") = 1,
        py::arg("use_chebyshev") = true);
  m.def("gain_matrix", &gain_matrix, py::arg("scenario"), py::arg("deployment"));
  m.def("path_gain", &path_gain, py::arg("distance_m"), py::arg("radio"));
  m.def("harvest_rate", &harvest_rate, py::arg("incident_w"), py::arg("eh"));
  m.def("harvest_rate_inverse", &harvest_rate_inverse, py::arg("target_rate_w"), py::arg("eh"));

  m.def(
      "allocate",
      [](const Scenario& sc, const Deployment& dep, const std::vector<double>& batteries,
         const std::string& method) {
        const GainMatrix gains = gain_matrix(sc, dep);
        const std::vector<DeviceState> states = states_from_batteries(batteries);
        return allocate(sc, gains, dep, states, alloc_from_tag(method));
      },
      py::arg("scenario"), py::arg("deployment"), py::arg("batteries"),
      py::arg("method") = "lp");

  m.def(
      "run_monte_carlo",
      [](const Scenario& sc, const std::string& deployer, const std::string& allocator,
         int trials, int slots, int warmup, int threads, std::uint64_t seed,
         bool redraw_positions, double fixed_initial_battery) {
        SimOptions opt;
        opt.trials = trials;
        opt.slots = slots;
        opt.warmup_slots = warmup;
        opt.threads = threads;
        opt.redraw_positions = redraw_positions;
        opt.fixed_initial_battery_j = fixed_initial_battery;
        const DeployMethod dm = deployer == "mean"        ? DeployMethod::kMeansMean
                                : deployer == "chebyshev" ? DeployMethod::kChebyshev
                                                          : method_from_tag(deployer);
        return run_monte_carlo(sc, dm, alloc_from_tag(allocator), opt, seed);
      },
      py::arg("scenario"), py::arg("deployer") = "k-chebyshev", py::arg("allocator") = "lp",
      py::arg("trials") = 200, py::arg("slots") = 20, py::arg("warmup") = 5,
      py::arg("threads") = 0, py::arg("seed") = 1, py::arg("redraw_positions") = true,
      py::arg("fixed_initial_battery") = -1.0,
      py::call_guard<py::gil_scoped_release>());

  m.def(
      "run_sweep",
      [](const Scenario& base, const std::string& parameter, const std::vector<double>& values,
         const std::vector<std::string>& allocators, const std::vector<std::string>& deployers,
         int trials, int slots, int warmup, std::uint64_t seed, int threads) {
        const SweepSpec spec =
            build_spec(parameter, values, allocators, deployers, trials, slots, warmup, seed,
                       threads);
        return run_sweep(base, spec);
      },
      py::arg("scenario"), py::arg("parameter"), py::arg("values"),
      py::arg("allocators") = std::vector<std::string>{"lp"},
      py::arg("deployers") = std::vector<std::string>{"k-chebyshev"}, py::arg("trials") = 200,
      py::arg("slots") = 20, py::arg("warmup") = 5, py::arg("seed") = 1, py::arg("threads") = 0,
      py::call_guard<py::gil_scoped_release>());

  m.def(
      "sweep_csv",
      [](const std::vector<SweepRow>& rows) { return sweep_csv(rows); }, py::arg("rows"));
}
