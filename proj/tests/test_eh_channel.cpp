#include <cmath>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "wetplan/clustering.hpp"
#include "wetplan/eh_channel.hpp"
#include "wetplan/model.hpp"

using namespace wetplan;

namespace {
const RadioParams kRadio;  // 2.4 GHz, gain 24, exponent 2.7, floor 0.25 m
const EhParams kEh;        // 10.73 mW ceiling
}  // namespace

TEST_CASE("path gain matches frozen reference values") {
  CHECK(path_gain(1.0, kRadio) == doctest::Approx(2.374715241617292e-3).epsilon(1e-12));
  CHECK(path_gain(10.0, kRadio) == doctest::Approx(4.738179830381198e-6).epsilon(1e-12));
  CHECK(path_gain(2.5, kRadio) == doctest::Approx(2.000661046032820e-4).epsilon(1e-12));
}

TEST_CASE("path gain floors the distance at the near-field boundary") {
  const double at_floor = path_gain(0.25, kRadio);
  CHECK(at_floor == doctest::Approx(1.002705775087034e-1).epsilon(1e-12));
  CHECK(path_gain(0.1, kRadio) == at_floor);
  CHECK(path_gain(0.0, kRadio) == at_floor);
  CHECK_THROWS_AS(path_gain(-0.5, kRadio), std::invalid_argument);
}

TEST_CASE("path gain is monotone decreasing beyond the floor") {
  double prev = path_gain(0.25, kRadio);
  for (double d = 0.5; d <= 40.0; d += 0.5) {
    const double g = path_gain(d, kRadio);
    CHECK(g < prev);
    CHECK(g > 0.0);
    prev = g;
  }
}

TEST_CASE("harvest curve hits frozen anchor points") {
  CHECK(harvest_rate(0.0, kEh) == doctest::Approx(0.0).epsilon(1e-15));
  // Incident power equal to the curve midpoint constant (5.365 mW).
  CHECK(harvest_rate(5.365e-3, kEh) == doctest::Approx(3.809721893781784e-3).epsilon(1e-12));
  // Deep saturation: 1 W incident sits at the ceiling.
  CHECK(harvest_rate(1.0, kEh) == doctest::Approx(10.73e-3).epsilon(1e-9));
  CHECK_THROWS_AS(harvest_rate(-1e-6, kEh), std::invalid_argument);
}

TEST_CASE("harvest curve is monotone and bounded") {
  double prev = -1.0;
  for (double x = 0.0; x <= 0.2; x += 1e-3) {
    const double y = harvest_rate(x, kEh);
    CHECK(y >= prev);
    CHECK(y <= kEh.saturation_w + 1e-15);
    prev = y;
  }
}

TEST_CASE("saturation boundary constants") {
  CHECK(saturation_threshold(kEh) == doctest::Approx(1.071927e-2).epsilon(1e-12));
  CHECK(saturation_incident(kEh) == doctest::Approx(3.639419974849584e-2).epsilon(1e-12));
  // The boundary incident really yields the boundary rate.
  CHECK(harvest_rate(saturation_incident(kEh), kEh) ==
        doctest::Approx(saturation_threshold(kEh)).epsilon(1e-12));
}

TEST_CASE("inverse harvest rate") {
  CHECK(harvest_rate_inverse(3.81e-3, kEh) == doctest::Approx(5.365348242156049e-3).epsilon(1e-12));
  CHECK(harvest_rate_inverse(0.0, kEh) == doctest::Approx(0.0));
  CHECK_THROWS_AS(harvest_rate_inverse(-1e-9, kEh), std::invalid_argument);
  CHECK_THROWS_AS(harvest_rate_inverse(saturation_threshold(kEh), kEh), SaturationError);
  CHECK_THROWS_AS(harvest_rate_inverse(kEh.saturation_w, kEh), SaturationError);
  CHECK_THROWS_AS(harvest_rate_inverse(1.0, kEh), SaturationError);
}

TEST_CASE("inverse composes to the identity across the invertible range") {
  const double top = saturation_threshold(kEh);
  for (int k = 0; k < 1000; ++k) {
    const double y = (k + 0.5) / 1000.0 * top * 0.9999;
    const double x = harvest_rate_inverse(y, kEh);
    CHECK(std::fabs(harvest_rate(x, kEh) - y) <= 1e-12);
    CHECK(x >= 0.0);
  }
}

TEST_CASE("harvested energy applies the curve to the summed incident power") {
  const double g1 = path_gain(1.0, kRadio);
  const double g2 = path_gain(2.5, kRadio);

  std::vector<double> powers{4.0};
  std::vector<double> gains{g1};
  CHECK(harvested_energy(powers, gains, 120.0, kEh) ==
        doctest::Approx(8.257760572916334e-1).epsilon(1e-12));

  std::vector<double> p2{2.0, 3.0};
  std::vector<double> gg{g1, g2};
  CHECK(harvested_energy(p2, gg, 120.0, kEh) ==
        doctest::Approx(4.556935755047732e-1).epsilon(1e-12));
  // Diminishing returns past the curve's knee: doubling power gains less than 2x.
  std::vector<double> pa{4.0, 3.0};
  std::vector<double> pb{8.0, 6.0};
  CHECK(harvested_energy(pb, gg, 120.0, kEh) < 2.0 * harvested_energy(pa, gg, 120.0, kEh));

  std::vector<double> short_gains{g1};
  CHECK_THROWS_AS(harvested_energy(p2, short_gains, 120.0, kEh), std::invalid_argument);
}

TEST_CASE("gain matrix covers every device-beacon pair") {
  Scenario sc = default_scenario(12, 3, 6);
  const Deployment dep = deploy_beacons(sc, 2, true);
  const GainMatrix g = gain_matrix(sc, dep);
  REQUIRE(g.devices == 12);
  REQUIRE(g.beacons == 3);
  REQUIRE(g.rho.size() == 36);
  for (std::size_t j = 0; j < g.devices; ++j) {
    const auto row = g.device_row(j);
    REQUIRE(row.size() == 3);
    for (std::size_t i = 0; i < g.beacons; ++i) {
      const double expect = path_gain(distance(sc.devices[j], dep.beacon_positions[i]), sc.radio);
      CHECK(g(j, i) == expect);
      CHECK(row[i] == expect);
    }
  }

  Deployment wrong = dep;
  wrong.beacon_positions.pop_back();
  CHECK_THROWS_AS(gain_matrix(sc, wrong), std::invalid_argument);
}
