#include "wetplan/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "wetplan/rng.hpp"

namespace wetplan {
namespace {

std::vector<Position> kmeanspp_init(std::span<const Position> devices, int k, Rng& rng) {
  std::vector<Position> centers;
  centers.reserve(static_cast<std::size_t>(k));
  std::vector<char> chosen(devices.size(), 0);

  const std::size_t first = rng.below(devices.size());
  centers.push_back(devices[first]);
  chosen[first] = 1;

  std::vector<double> d2(devices.size());
  while (centers.size() < static_cast<std::size_t>(k)) {
    double total = 0.0;
    for (std::size_t j = 0; j < devices.size(); ++j) {
      double best = std::numeric_limits<double>::infinity();
      for (const Position& c : centers) best = std::min(best, squared_distance(devices[j], c));
      d2[j] = best;
      total += best;
    }
    std::size_t pick = devices.size();
    if (total > 0.0) {
      const double r = rng.uniform() * total;
      double acc = 0.0;
      for (std::size_t j = 0; j < devices.size(); ++j) {
        acc += d2[j];
        if (acc >= r) {
          pick = j;
          break;
        }
      }
      if (pick == devices.size()) pick = devices.size() - 1;  // guard roundoff on the last bin
    } else {
      // All remaining weight is zero (duplicated positions); take the first
      // device not used yet so the center count stays at k.
      for (std::size_t j = 0; j < devices.size(); ++j) {
        if (!chosen[j]) {
          pick = j;
          break;
        }
      }
      if (pick == devices.size()) pick = 0;
    }
    centers.push_back(devices[pick]);
    chosen[pick] = 1;
  }
  return centers;
}

// Moves each empty cluster's center onto the device currently farthest from
// its assigned center, one device per repaired cluster.
void repair_empty_clusters(std::span<const Position> devices, std::span<const int> assignment,
                           std::span<const int> counts, std::vector<Position>& centers) {
  std::vector<char> claimed(devices.size(), 0);
  for (std::size_t c = 0; c < centers.size(); ++c) {
    if (counts[c] > 0) continue;
    double worst = -1.0;
    std::size_t worst_j = 0;
    for (std::size_t j = 0; j < devices.size(); ++j) {
      if (claimed[j]) continue;
      const double d = squared_distance(devices[j], centers[static_cast<std::size_t>(assignment[j])]);
      if (d > worst) {
        worst = d;
        worst_j = j;
      }
    }
    centers[c] = devices[worst_j];
    claimed[worst_j] = 1;
  }
}

std::vector<double> radii_about(std::span<const Position> devices, std::span<const int> assignment,
                                std::span<const Position> centers) {
  std::vector<double> radii(centers.size(), 0.0);
  for (std::size_t j = 0; j < devices.size(); ++j) {
    const auto c = static_cast<std::size_t>(assignment[j]);
    radii[c] = std::max(radii[c], distance(devices[j], centers[c]));
  }
  return radii;
}

}  // namespace

const char* method_tag(DeployMethod m) {
  return m == DeployMethod::kMeansMean ? "kmeans-mean" : "k-chebyshev";
}

DeployMethod method_from_tag(const std::string& tag) {
  if (tag == "kmeans-mean") return DeployMethod::kMeansMean;
  if (tag == "k-chebyshev") return DeployMethod::kChebyshev;
  throw std::invalid_argument("unknown deployment method tag: " + tag);
}

std::vector<int> kmeans_assign(std::span<const Position> devices,
                               std::span<const Position> centers) {
  if (centers.empty()) throw std::invalid_argument("kmeans_assign: no centers");
  std::vector<int> assignment(devices.size(), 0);
  for (std::size_t j = 0; j < devices.size(); ++j) {
    double best = squared_distance(devices[j], centers[0]);
    int best_i = 0;
    for (std::size_t i = 1; i < centers.size(); ++i) {
      const double d = squared_distance(devices[j], centers[i]);
      if (d < best) {  // strict: ties stay with the lowest index
        best = d;
        best_i = static_cast<int>(i);
      }
    }
    assignment[j] = best_i;
  }
  return assignment;
}

double kmeans_objective(std::span<const Position> devices, std::span<const Position> centers,
                        std::span<const int> assignment) {
  double total = 0.0;
  for (std::size_t j = 0; j < devices.size(); ++j) {
    total += squared_distance(devices[j], centers[static_cast<std::size_t>(assignment[j])]);
  }
  return total;
}

Deployment deploy_beacons(const Scenario& scenario, std::uint64_t seed, bool use_chebyshev) {
  validate_scenario(scenario);
  const std::span<const Position> devices{scenario.devices};
  const int k = scenario.num_beacons;

  Rng rng(mix_seed(seed, 0));
  std::vector<Position> centers = kmeanspp_init(devices, k, rng);

  std::vector<int> assignment;
  for (int iter = 0; iter < kKmeansMaxIters; ++iter) {
    assignment = kmeans_assign(devices, centers);

    std::vector<Position> sums(centers.size(), Position{});
    std::vector<int> counts(centers.size(), 0);
    for (std::size_t j = 0; j < devices.size(); ++j) {
      const auto c = static_cast<std::size_t>(assignment[j]);
      sums[c].x += devices[j].x;
      sums[c].y += devices[j].y;
      counts[c] += 1;
    }
    std::vector<Position> next = centers;
    for (std::size_t c = 0; c < centers.size(); ++c) {
      if (counts[c] > 0) next[c] = {sums[c].x / counts[c], sums[c].y / counts[c]};
    }
    repair_empty_clusters(devices, assignment, counts, next);

    double displacement = 0.0;
    for (std::size_t c = 0; c < centers.size(); ++c) {
      displacement = std::max(displacement, distance(centers[c], next[c]));
    }
    centers = std::move(next);
    if (displacement <= kKmeansTol) break;
  }
  assignment = kmeans_assign(devices, centers);

  Deployment d;
  d.method = use_chebyshev ? DeployMethod::kChebyshev : DeployMethod::kMeansMean;
  d.assignment = std::move(assignment);

  if (use_chebyshev) {
    // Recenter each frozen cluster at its Chebyshev center. The assignment
    // stays as converged; a device may end up nearer to a foreign center.
    std::vector<Position> members;
    for (std::size_t c = 0; c < centers.size(); ++c) {
      members.clear();
      for (std::size_t j = 0; j < devices.size(); ++j) {
        if (static_cast<std::size_t>(d.assignment[j]) == c) members.push_back(devices[j]);
      }
      if (!members.empty()) {
        centers[c] = min_enclosing_circle(members, mix_seed(seed, 1000 + c)).center;
      }
    }
  }
  d.beacon_positions = std::move(centers);
  d.cluster_radii = radii_about(devices, d.assignment, d.beacon_positions);
  return d;
}

std::string deployment_to_string(const Deployment& d) {
  std::ostringstream out;
  out.precision(17);
  out << "# wetplan deployment\n";
  out << "method = " << method_tag(d.method) << "\n";
  out << "num_beacons = " << d.beacon_positions.size() << "\n";
  out << "num_devices = " << d.assignment.size() << "\n";
  for (std::size_t i = 0; i < d.beacon_positions.size(); ++i) {
    out << "beacon " << i << " = " << d.beacon_positions[i].x << " " << d.beacon_positions[i].y
        << "\n";
  }
  for (std::size_t i = 0; i < d.cluster_radii.size(); ++i) {
    out << "radius " << i << " = " << d.cluster_radii[i] << "\n";
  }
  out << "assignment =";
  for (int a : d.assignment) out << " " << a;
  out << "\n";
  return out.str();
}

Deployment deployment_from_string(const std::string& text) {
  Deployment d;
  std::istringstream in(text);
  std::string line;
  std::size_t beacons = 0, devices = 0;
  bool have_assignment = false;
  int lineno = 0;
  const auto bad = [&](const std::string& msg) {
    throw std::invalid_argument("deployment line " + std::to_string(lineno) + ": " + msg);
  };
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string key;
    if (!(ls >> key)) continue;
    if (key == "method") {
      std::string eq, tag;
      ls >> eq >> tag;
      if (eq != "=") bad("expected '='");
      d.method = method_from_tag(tag);
    } else if (key == "num_beacons") {
      std::string eq;
      ls >> eq >> beacons;
      d.beacon_positions.resize(beacons);
      d.cluster_radii.assign(beacons, 0.0);
    } else if (key == "num_devices") {
      std::string eq;
      ls >> eq >> devices;
      d.assignment.assign(devices, 0);
    } else if (key == "beacon") {
      std::size_t i;
      std::string eq;
      double x, y;
      if (!(ls >> i >> eq >> x >> y) || eq != "=" || i >= beacons) bad("malformed beacon row");
      d.beacon_positions[i] = {x, y};
    } else if (key == "radius") {
      std::size_t i;
      std::string eq;
      double r;
      if (!(ls >> i >> eq >> r) || eq != "=" || i >= beacons) bad("malformed radius row");
      d.cluster_radii[i] = r;
    } else if (key == "assignment") {
      std::string eq;
      ls >> eq;
      if (eq != "=") bad("expected '='");
      have_assignment = true;
      for (std::size_t j = 0; j < devices; ++j) {
        int a;
        if (!(ls >> a) || a < 0 || static_cast<std::size_t>(a) >= beacons) {
          bad("assignment entry " + std::to_string(j) + " missing or out of range");
        }
        d.assignment[j] = a;
      }
    } else {
      bad("unknown key '" + key + "'");
    }
  }
  if (d.beacon_positions.empty() || d.assignment.empty() || !have_assignment) {
    throw std::invalid_argument("deployment: missing num_beacons/num_devices/assignment rows");
  }
  return d;
}

void save_deployment(const Deployment& d, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write deployment file: " + path);
  out << deployment_to_string(d);
}

Deployment load_deployment(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read deployment file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return deployment_from_string(buf.str());
}

}  // namespace wetplan
