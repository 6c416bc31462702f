#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "doctest.h"
#include "wetplan/config.hpp"
#include "wetplan/model.hpp"
#include "wetplan/sweep.hpp"

#ifdef WETPLAN_CLI_PATH
#include <sys/wait.h>
#include <unistd.h>
#endif

using namespace wetplan;

TEST_CASE("sweep parameter tags round trip") {
  CHECK(std::string(sweep_parameter_tag(SweepParameter::kEnergyThreshold)) == "e_th");
  CHECK(std::string(sweep_parameter_tag(SweepParameter::kNumBeacons)) == "num_beacons");
  CHECK(sweep_parameter_from_tag("e_th") == SweepParameter::kEnergyThreshold);
  CHECK(sweep_parameter_from_tag("num_beacons") == SweepParameter::kNumBeacons);
  CHECK_THROWS_AS(sweep_parameter_from_tag("voltage"), std::invalid_argument);
}

TEST_CASE("sweep specs parse with aliases and units") {
  const std::string text =
      "parameter = e_th\n"
      "values = 50mJ 0.2 0.45\n"
      "allocators = lp approx\n"
      "deployers = mean chebyshev\n"
      "trials = 7\n"
      "slots = 9\n"
      "warmup = 2\n"
      "seed = 11\n"
      "threads = 2\n";
  const SweepSpec s = sweep_spec_from_text(text, "s.cfg");
  REQUIRE(s.values.size() == 3);
  CHECK(s.values[0] == doctest::Approx(0.05));
  CHECK(s.values[2] == doctest::Approx(0.45));
  REQUIRE(s.allocators.size() == 2);
  CHECK(s.allocators[0] == AllocMethod::kLp);
  CHECK(s.allocators[1] == AllocMethod::kApprox);
  REQUIRE(s.deployers.size() == 2);
  CHECK(s.deployers[0] == DeployMethod::kMeansMean);
  CHECK(s.deployers[1] == DeployMethod::kChebyshev);
  CHECK(s.trials == 7);
  CHECK(s.slots == 9);
  CHECK(s.warmup_slots == 2);
  CHECK(s.seed == 11);
  CHECK(s.threads == 2);

  // The canonical deployer tags work too, as does the singular key form.
  const SweepSpec t = sweep_spec_from_text(
      "parameter = num_beacons\nvalues = 2 4 8\ndeployer = k-chebyshev\nallocator = lp\n",
      "t.cfg");
  CHECK(t.parameter == SweepParameter::kNumBeacons);
  REQUIRE(t.deployers.size() == 1);
  CHECK(t.deployers[0] == DeployMethod::kChebyshev);
}

TEST_CASE("sweep spec rejections carry anchors") {
  auto expect = [](const std::string& text, const std::string& needle) {
    try {
      sweep_spec_from_text(text, "bad.cfg");
      FAIL_CHECK("expected ConfigError for: " << needle);
    } catch (const ConfigError& e) {
      CAPTURE(e.what());
      CHECK(std::string(e.what()).find(needle) != std::string::npos);
    }
  };
  expect("values = 0.2 0.1\n", "strictly increasing");
  expect("values = 0.1 0.1\n", "strictly increasing");
  expect("parameter = volume\nvalues = 1\n", "bad.cfg:1");
  expect("values = 1\nallocators = greedy\n", "bad.cfg:2");
  expect("values = 1\ncolor = red\n", "unknown key");
  expect("parameter = e_th\n", "missing 'values'");
  expect("values = 0.1 fast\n", "bad.cfg:1");
  expect("values = 0.1\ntrials = 0\n", "trials");
  expect("values = 0.1\nslots = 3\nwarmup = 3\n", "warmup");
}

TEST_CASE("applying a swept value") {
  const Scenario base = default_scenario(20, 5, 1);

  const Scenario a = scenario_with_value(base, SweepParameter::kEnergyThreshold, 0.4);
  CHECK(a.e_th_j == 0.4);
  CHECK(a.num_beacons == base.num_beacons);

  const Scenario b = scenario_with_value(base, SweepParameter::kNumBeacons, 4.0);
  CHECK(b.num_beacons == 4);
  const Scenario c = scenario_with_value(base, SweepParameter::kNumBeacons, 4.0 + 1e-12);
  CHECK(c.num_beacons == 4);

  CHECK_THROWS_AS(scenario_with_value(base, SweepParameter::kNumBeacons, 2.5),
                  std::invalid_argument);
  CHECK_THROWS_AS(scenario_with_value(base, SweepParameter::kNumBeacons, 0.0),
                  std::invalid_argument);
}

TEST_CASE("sweep rows come out value-major, then allocator, then deployer") {
  Scenario base = default_scenario(10, 3, 2);
  SweepSpec spec;
  spec.parameter = SweepParameter::kEnergyThreshold;
  spec.values = {0.1, 0.2};
  spec.allocators = {AllocMethod::kLp, AllocMethod::kApprox};
  spec.deployers = {DeployMethod::kMeansMean, DeployMethod::kChebyshev};
  spec.trials = 2;
  spec.slots = 3;
  spec.warmup_slots = 1;
  spec.seed = 5;
  spec.threads = 1;

  const std::vector<SweepRow> rows = run_sweep(base, spec);
  REQUIRE(rows.size() == 8);
  const double expect_values[] = {0.1, 0.1, 0.1, 0.1, 0.2, 0.2, 0.2, 0.2};
  const AllocMethod expect_alloc[] = {AllocMethod::kLp,     AllocMethod::kLp,
                                      AllocMethod::kApprox, AllocMethod::kApprox,
                                      AllocMethod::kLp,     AllocMethod::kLp,
                                      AllocMethod::kApprox, AllocMethod::kApprox};
  const DeployMethod expect_dep[] = {DeployMethod::kMeansMean, DeployMethod::kChebyshev,
                                     DeployMethod::kMeansMean, DeployMethod::kChebyshev,
                                     DeployMethod::kMeansMean, DeployMethod::kChebyshev,
                                     DeployMethod::kMeansMean, DeployMethod::kChebyshev};
  for (std::size_t i = 0; i < 8; ++i) {
    CAPTURE(i);
    CHECK(rows[i].swept_value == expect_values[i]);
    CHECK(rows[i].allocator == expect_alloc[i]);
    CHECK(rows[i].deployer == expect_dep[i]);
    CHECK(rows[i].trials == 2);
    CHECK(rows[i].mean_sum_power_w >= 0.0);
    CHECK(rows[i].outage_probability >= 0.0);
    CHECK(rows[i].outage_probability <= 1.0);
  }
}

TEST_CASE("csv output round trips through a parser") {
  std::vector<SweepRow> rows(2);
  rows[0] = {0.05, AllocMethod::kLp, DeployMethod::kChebyshev, 12.25, 0.03125, 0.004, 64};
  rows[1] = {0.15, AllocMethod::kApprox, DeployMethod::kMeansMean, 14.5, 0.0, 0.0, 64};
  const std::string csv = sweep_csv(rows);

  std::istringstream in(csv);
  std::string header;
  REQUIRE(std::getline(in, header));
  CHECK(header ==
        "swept_value,allocator,deployer,mean_sum_power_W,outage_probability,stderr_outage,trials");

  std::string line;
  REQUIRE(std::getline(in, line));
  CHECK(line == "0.05,lp,k-chebyshev,12.25,0.03125,0.004,64");
  REQUIRE(std::getline(in, line));
  CHECK(line == "0.15,approx,kmeans-mean,14.5,0,0,64");
  CHECK_FALSE(std::getline(in, line));
}

#ifdef WETPLAN_CLI_PATH

namespace {

namespace fs = std::filesystem;

struct CmdResult {
  int code = -1;
  std::string output;
};

CmdResult run_cli(const std::string& args, const fs::path& dir) {
  const fs::path out_file = dir / "cmd_out.txt";
  const std::string cmd =
      std::string(WETPLAN_CLI_PATH) + " " + args + " > '" + out_file.string() + "' 2>&1";
  const int status = std::system(cmd.c_str());
  CmdResult r;
  if (status != -1 && WIFEXITED(status)) r.code = WEXITSTATUS(status);
  std::ifstream in(out_file);
  std::stringstream ss;
  ss << in.rdbuf();
  r.output = ss.str();
  return r;
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("wetplan_cli_" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
};

void write(const fs::path& p, const std::string& text) {
  std::ofstream out(p);
  out << text;
}

const char* kScenario =
    "num_devices = 12\n"
    "num_beacons = 3\n"
    "device_seed = 5\n";

const char* kSpec =
    "parameter = e_th\n"
    "values = 0.1 0.2\n"
    "allocator = lp\n"
    "deployer = chebyshev\n"
    "trials = 2\n"
    "slots = 3\n"
    "warmup = 1\n"
    "seed = 3\n"
    "threads = 1\n";

}  // namespace

TEST_CASE("cli: validate-config") {
  TempDir tmp;
  write(tmp.path / "sc.cfg", kScenario);
  write(tmp.path / "sweep.cfg", kSpec);

  CmdResult r = run_cli("validate-config --config '" + (tmp.path / "sc.cfg").string() +
                            "' --spec '" + (tmp.path / "sweep.cfg").string() + "'",
                        tmp.path);
  CHECK(r.code == 0);
  CHECK(r.output.find("ok") != std::string::npos);

  r = run_cli("validate-config --config '" + (tmp.path / "nope.cfg").string() + "'", tmp.path);
  CHECK(r.code == 2);

  write(tmp.path / "bad.cfg", "num_devices = 0\n");
  r = run_cli("validate-config --config '" + (tmp.path / "bad.cfg").string() + "'", tmp.path);
  CHECK(r.code == 2);
}

TEST_CASE("cli: deploy then allocate") {
  TempDir tmp;
  write(tmp.path / "sc.cfg", kScenario);
  std::string bats;
  for (int i = 0; i < 12; ++i) bats += "0.2\n";
  write(tmp.path / "bat.txt", bats);

  CmdResult r = run_cli("deploy --config '" + (tmp.path / "sc.cfg").string() +
                            "' --deployer both --seed 4 --out '" +
                            (tmp.path / "dep.txt").string() + "'",
                        tmp.path);
  REQUIRE(r.code == 0);
  CHECK(fs::exists(tmp.path / "dep-mean.txt"));
  CHECK(fs::exists(tmp.path / "dep-chebyshev.txt"));
  CHECK(r.output.find("max radius") != std::string::npos);

  r = run_cli("allocate --config '" + (tmp.path / "sc.cfg").string() + "' --deployment '" +
                  (tmp.path / "dep-chebyshev.txt").string() + "' --batteries '" +
                  (tmp.path / "bat.txt").string() + "' --allocator both --out '" +
                  (tmp.path / "alloc.json").string() + "'",
              tmp.path);
  REQUIRE(r.code == 0);
  CHECK(fs::exists(tmp.path / "alloc.json"));
  CHECK(r.output.find("sum power") != std::string::npos);

  std::ifstream in(tmp.path / "alloc.json");
  std::stringstream ss;
  ss << in.rdbuf();
  CHECK(ss.str().find("\"allocations\"") != std::string::npos);
  CHECK(ss.str().find("\"powers_W\"") != std::string::npos);

  // Battery list of the wrong length is a config error.
  write(tmp.path / "short.txt", "0.2\n0.2\n");
  r = run_cli("allocate --config '" + (tmp.path / "sc.cfg").string() + "' --deployment '" +
                  (tmp.path / "dep-chebyshev.txt").string() + "' --batteries '" +
                  (tmp.path / "short.txt").string() + "'",
              tmp.path);
  CHECK(r.code == 2);
}

TEST_CASE("cli: sweep writes csv plus sidecar") {
  TempDir tmp;
  write(tmp.path / "sc.cfg", kScenario);
  write(tmp.path / "sweep.cfg", kSpec);
  const std::string out = (tmp.path / "rows.csv").string();

  const CmdResult r = run_cli("sweep --spec '" + (tmp.path / "sweep.cfg").string() +
                                  "' --config '" + (tmp.path / "sc.cfg").string() + "' --out '" +
                                  out + "'",
                              tmp.path);
  REQUIRE(r.code == 0);
  REQUIRE(fs::exists(out));
  REQUIRE(fs::exists(out + ".json"));
  CHECK(r.output.find("swept_value,allocator,") != std::string::npos);

  std::ifstream in(out);
  std::string header, row1, row2, extra;
  REQUIRE(std::getline(in, header));
  REQUIRE(std::getline(in, row1));
  REQUIRE(std::getline(in, row2));
  CHECK_FALSE(std::getline(in, extra));
  CHECK(row1.rfind("0.1,lp,k-chebyshev,", 0) == 0);
  CHECK(row2.rfind("0.2,lp,k-chebyshev,", 0) == 0);

  std::ifstream sj(out + ".json");
  std::stringstream ss;
  ss << sj.rdbuf();
  CHECK(ss.str().find("\"parameter\": \"e_th\"") != std::string::npos);
  CHECK(ss.str().find("\"trials\": 2") != std::string::npos);
}

TEST_CASE("cli: exit codes") {
  TempDir tmp;
  write(tmp.path / "sweep.cfg", kSpec);

  CHECK(run_cli("", tmp.path).code == 2);                         // subcommand required
  CHECK(run_cli("--help", tmp.path).code == 0);                   // help is a clean exit
  CHECK(run_cli("deploy --frobnicate", tmp.path).code == 2);      // unknown flag
  CHECK(run_cli("deploy", tmp.path).code == 2);                   // no config
  CHECK(run_cli("sweep --spec '" + (tmp.path / "sweep.cfg").string() +
                    "' --out /nonexistent-dir-31415/rows.csv",
                tmp.path)
            .code == 3);  // unwritable output after a valid config
}

#endif  // WETPLAN_CLI_PATH
