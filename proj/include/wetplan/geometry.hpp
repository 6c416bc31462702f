// Exact 2D minimum-enclosing-circle computation (Chebyshev center of a point
// set), plus the cubic enumeration oracle used to cross-check it.
#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace wetplan {

struct Position {
  double x = 0.0;
  double y = 0.0;
};

inline double squared_distance(const Position& a, const Position& b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return dx * dx + dy * dy;
}

double distance(const Position& a, const Position& b);

struct Circle {
  Position center;
  double radius = 0.0;

  bool contains(const Position& p, double tol = 1e-9) const;
};

// Comparison tolerance for geometric predicates and tests, in meters.
inline constexpr double kGeomTol = 1e-9;

// Smallest circle enclosing all points (randomized incremental, expected
// linear time). The shuffle is seeded so results are reproducible; the
// returned circle does not depend on the input order of the points.
// Throws std::invalid_argument on empty input.
Circle min_enclosing_circle(std::span<const Position> points,
                            std::uint64_t shuffle_seed = 0x77e7u);

// Enumeration oracle: tries every circle whose boundary is fixed by two
// points (diameter) or three points (circumcircle) and returns the smallest
// one that encloses the whole set. Cubic in |points|; intended for sets of
// at most a couple hundred points. Throws std::invalid_argument on empty
// input.
Circle brute_force_mec(std::span<const Position> points);

}  // namespace wetplan
