// Beacon placement: Lloyd iterations with k-means++ seeding, then optional
// Chebyshev recentering of the converged clusters.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "wetplan/model.hpp"

namespace wetplan {

enum class DeployMethod { kMeansMean, kChebyshev };

const char* method_tag(DeployMethod m);             // "kmeans-mean" / "k-chebyshev"
DeployMethod method_from_tag(const std::string& tag);

// Center displacement below which the Lloyd loop stops, in meters.
inline constexpr double kKmeansTol = 1e-4;
inline constexpr int kKmeansMaxIters = 500;

struct Deployment {
  std::vector<Position> beacon_positions;
  std::vector<int> assignment;        // device index -> cluster index
  std::vector<double> cluster_radii;  // max distance from each beacon to its devices
  DeployMethod method = DeployMethod::kChebyshev;
};

// Nearest-center assignment by Euclidean distance; ties go to the lowest
// center index. Throws std::invalid_argument when centers is empty.
std::vector<int> kmeans_assign(std::span<const Position> devices,
                               std::span<const Position> centers);

// Runs the clustering pipeline on a valid scenario: k-means++ seeding, Lloyd
// iterations until the maximum center displacement drops to kKmeansTol (or
// kKmeansMaxIters), empty clusters reseeded at the device farthest from its
// assigned center. With use_chebyshev the converged centers are replaced by
// the minimum-enclosing-circle centers of their frozen clusters; the
// assignment is not re-run afterwards. Deterministic for a given seed.
Deployment deploy_beacons(const Scenario& scenario, std::uint64_t seed, bool use_chebyshev);

// Sum of squared device-to-assigned-center distances.
double kmeans_objective(std::span<const Position> devices,
                        std::span<const Position> centers,
                        std::span<const int> assignment);

std::string deployment_to_string(const Deployment& d);
Deployment deployment_from_string(const std::string& text);
void save_deployment(const Deployment& d, const std::string& path);
Deployment load_deployment(const std::string& path);

}  // namespace wetplan
