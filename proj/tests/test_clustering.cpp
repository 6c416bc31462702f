#include <algorithm>
#include <cmath>
#include <filesystem>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "wetplan/clustering.hpp"
#include "wetplan/geometry.hpp"
#include "wetplan/model.hpp"
#include "wetplan/rng.hpp"

using namespace wetplan;

TEST_CASE("method tags round trip") {
  CHECK(std::string(method_tag(DeployMethod::kMeansMean)) == "kmeans-mean");
  CHECK(std::string(method_tag(DeployMethod::kChebyshev)) == "k-chebyshev");
  CHECK(method_from_tag("kmeans-mean") == DeployMethod::kMeansMean);
  CHECK(method_from_tag("k-chebyshev") == DeployMethod::kChebyshev);
  CHECK_THROWS_AS(method_from_tag("voronoi"), std::invalid_argument);
}

TEST_CASE("nearest-center assignment breaks ties toward the lower index") {
  const std::vector<Position> centers{{0, 0}, {2, 0}};
  const std::vector<Position> devices{{1, 0}, {1.9, 0}, {-3, 0}};
  const auto a = kmeans_assign(devices, centers);
  REQUIRE(a.size() == 3);
  CHECK(a[0] == 0);  // exactly halfway
  CHECK(a[1] == 1);
  CHECK(a[2] == 0);

  CHECK_THROWS_AS(kmeans_assign(devices, std::vector<Position>{}), std::invalid_argument);
}

TEST_CASE("single cluster converges to the exact centroid") {
  Scenario sc = default_scenario(25, 1, 3);
  const Deployment d = deploy_beacons(sc, 11, false);
  REQUIRE(d.beacon_positions.size() == 1);
  double cx = 0, cy = 0;
  for (const Position& p : sc.devices) {
    cx += p.x;
    cy += p.y;
  }
  cx /= static_cast<double>(sc.num_devices());
  cy /= static_cast<double>(sc.num_devices());
  CHECK(d.beacon_positions[0].x == doctest::Approx(cx).epsilon(1e-12));
  CHECK(d.beacon_positions[0].y == doctest::Approx(cy).epsilon(1e-12));

  const Deployment ch = deploy_beacons(sc, 11, true);
  const Circle mec = min_enclosing_circle(sc.devices);
  CHECK(ch.beacon_positions[0].x == doctest::Approx(mec.center.x).epsilon(1e-9));
  CHECK(ch.beacon_positions[0].y == doctest::Approx(mec.center.y).epsilon(1e-9));
  CHECK(ch.cluster_radii[0] == doctest::Approx(mec.radius).epsilon(1e-9));
}

TEST_CASE("deployments are self-consistent and deterministic") {
  Scenario sc = default_scenario(60, 8, 42);
  const Deployment a = deploy_beacons(sc, 7, true);
  const Deployment b = deploy_beacons(sc, 7, true);

  REQUIRE(a.beacon_positions.size() == 8);
  REQUIRE(a.assignment.size() == 60);
  REQUIRE(a.cluster_radii.size() == 8);
  CHECK(a.method == DeployMethod::kChebyshev);

  for (std::size_t i = 0; i < a.beacon_positions.size(); ++i) {
    CHECK(a.beacon_positions[i].x == b.beacon_positions[i].x);
    CHECK(a.beacon_positions[i].y == b.beacon_positions[i].y);
  }
  CHECK(a.assignment == b.assignment);

  // Radii really bound the member distances, and every cluster is nonempty.
  std::vector<int> counts(8, 0);
  for (std::size_t j = 0; j < 60; ++j) {
    const int c = a.assignment[j];
    REQUIRE(c >= 0);
    REQUIRE(c < 8);
    counts[static_cast<std::size_t>(c)] += 1;
    CHECK(distance(sc.devices[j], a.beacon_positions[static_cast<std::size_t>(c)]) <=
          a.cluster_radii[static_cast<std::size_t>(c)] + 1e-9);
  }
  for (int k : counts) CHECK(k > 0);

  const Deployment c = deploy_beacons(sc, 8, true);
  bool differs = false;
  for (std::size_t i = 0; i < c.beacon_positions.size(); ++i) {
    if (c.beacon_positions[i].x != a.beacon_positions[i].x) differs = true;
  }
  CHECK(differs);
}

TEST_CASE("both centroid rules share the frozen assignment") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    Scenario sc = default_scenario(48, 6, seed);
    const Deployment mean = deploy_beacons(sc, seed * 13, false);
    const Deployment cheb = deploy_beacons(sc, seed * 13, true);
    CHECK(mean.assignment == cheb.assignment);
    for (std::size_t c = 0; c < 6; ++c) {
      CAPTURE(seed);
      CAPTURE(c);
      CHECK(cheb.cluster_radii[c] <= mean.cluster_radii[c] + 1e-9);
    }
  }
}

TEST_CASE("as many beacons as devices pins every radius at zero") {
  Scenario sc = default_scenario(6, 6, 9);
  const Deployment d = deploy_beacons(sc, 4, true);
  std::vector<int> seen(6, 0);
  for (int c : d.assignment) seen[static_cast<std::size_t>(c)] += 1;
  for (int k : seen) CHECK(k == 1);
  for (double r : d.cluster_radii) CHECK(r <= 1e-9);
}

TEST_CASE("objective improves on random centers") {
  Scenario sc = default_scenario(80, 10, 21);
  const Deployment d = deploy_beacons(sc, 5, false);
  const double converged =
      kmeans_objective(sc.devices, d.beacon_positions, d.assignment);

  Rng rng(123);
  std::vector<Position> random_centers;
  for (int i = 0; i < 10; ++i)
    random_centers.push_back({rng.uniform(0, sc.area_width_m), rng.uniform(0, sc.area_height_m)});
  const auto ra = kmeans_assign(sc.devices, random_centers);
  const double random_obj = kmeans_objective(sc.devices, random_centers, ra);
  CHECK(converged <= random_obj + 1e-9);
}

TEST_CASE("deployment text round trips exactly") {
  Scenario sc = default_scenario(30, 5, 77);
  const Deployment d = deploy_beacons(sc, 3, true);
  const std::string text = deployment_to_string(d);
  const Deployment back = deployment_from_string(text);

  CHECK(back.method == d.method);
  REQUIRE(back.beacon_positions.size() == d.beacon_positions.size());
  REQUIRE(back.assignment == d.assignment);
  REQUIRE(back.cluster_radii.size() == d.cluster_radii.size());
  for (std::size_t i = 0; i < d.beacon_positions.size(); ++i) {
    CHECK(back.beacon_positions[i].x == d.beacon_positions[i].x);  // bit-exact via %.17g
    CHECK(back.beacon_positions[i].y == d.beacon_positions[i].y);
    CHECK(back.cluster_radii[i] == d.cluster_radii[i]);
  }
}

TEST_CASE("malformed deployment text is rejected") {
  CHECK_THROWS_AS(deployment_from_string(""), std::invalid_argument);
  CHECK_THROWS_AS(deployment_from_string("method = k-chebyshev\n"), std::invalid_argument);

  Scenario sc = default_scenario(10, 2, 1);
  std::string text = deployment_to_string(deploy_beacons(sc, 1, false));
  // Truncate the assignment line.
  const auto pos = text.find("assignment");
  REQUIRE(pos != std::string::npos);
  CHECK_THROWS_AS(deployment_from_string(text.substr(0, pos)), std::invalid_argument);
}

TEST_CASE("deployment file round trip") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "wetplan_dep_test";
  fs::create_directories(dir);
  const std::string path = (dir / "d.txt").string();

  Scenario sc = default_scenario(20, 4, 5);
  const Deployment d = deploy_beacons(sc, 2, false);
  save_deployment(d, path);
  const Deployment back = load_deployment(path);
  CHECK(back.assignment == d.assignment);
  CHECK(back.method == d.method);
  fs::remove_all(dir);
}
