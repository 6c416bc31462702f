#include "wetplan/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "wetplan/rng.hpp"

namespace wetplan {
namespace {

// Relative slack used inside the incremental algorithm; keeps the support
// search stable without inflating the result beyond double roundoff.
constexpr double kEps = 1e-12;

bool inside(const Circle& c, const Position& p) {
  const double r = c.radius * (1.0 + kEps) + kEps;
  return squared_distance(c.center, p) <= r * r;
}

Circle from_two(const Position& a, const Position& b) {
  const Position center{0.5 * (a.x + b.x), 0.5 * (a.y + b.y)};
  return {center, 0.5 * distance(a, b)};
}

// Smallest circle through three points. Collinear triples degenerate to the
// diametral circle of the farthest pair.
Circle from_three(const Position& a, const Position& b, const Position& c) {
  const double bx = b.x - a.x, by = b.y - a.y;
  const double cx = c.x - a.x, cy = c.y - a.y;
  const double det = 2.0 * (bx * cy - by * cx);
  const double scale = std::max({std::abs(bx), std::abs(by), std::abs(cx), std::abs(cy), 1.0});
  if (std::abs(det) <= 1e-14 * scale * scale) {
    Circle best = from_two(a, b);
    const Circle ac = from_two(a, c);
    if (ac.radius > best.radius) best = ac;
    const Circle bc = from_two(b, c);
    if (bc.radius > best.radius) best = bc;
    return best;
  }
  const double b2 = bx * bx + by * by;
  const double c2 = cx * cx + cy * cy;
  const double ux = (cy * b2 - by * c2) / det;
  const double uy = (bx * c2 - cx * b2) / det;
  const Position center{a.x + ux, a.y + uy};
  const double r = std::max({distance(center, a), distance(center, b), distance(center, c)});
  return {center, r};
}

}  // namespace

double distance(const Position& a, const Position& b) {
  return std::sqrt(squared_distance(a, b));
}

bool Circle::contains(const Position& p, double tol) const {
  return distance(center, p) <= radius + tol;
}

Circle min_enclosing_circle(std::span<const Position> points, std::uint64_t shuffle_seed) {
  if (points.empty()) throw std::invalid_argument("min_enclosing_circle: empty point set");

  std::vector<Position> pts(points.begin(), points.end());
  std::sort(pts.begin(), pts.end(), [](const Position& a, const Position& b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
  });
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](const Position& a, const Position& b) {
                          return a.x == b.x && a.y == b.y;
                        }),
            pts.end());

  // Deterministic Fisher-Yates shuffle.
  Rng rng(shuffle_seed);
  for (std::size_t i = pts.size() - 1; i > 0; --i) {
    std::swap(pts[i], pts[rng.below(i + 1)]);
  }

  const std::size_t n = pts.size();
  Circle c{pts[0], 0.0};
  for (std::size_t i = 1; i < n; ++i) {
    if (inside(c, pts[i])) continue;
    c = {pts[i], 0.0};
    for (std::size_t j = 0; j < i; ++j) {
      if (inside(c, pts[j])) continue;
      c = from_two(pts[i], pts[j]);
      for (std::size_t k = 0; k < j; ++k) {
        if (inside(c, pts[k])) continue;
        c = from_three(pts[i], pts[j], pts[k]);
      }
    }
  }
  return c;
}

Circle brute_force_mec(std::span<const Position> points) {
  if (points.empty()) throw std::invalid_argument("brute_force_mec: empty point set");

  const std::size_t n = points.size();
  const auto encloses_all = [&](const Circle& c) {
    const double r = c.radius * (1.0 + kEps) + kEps;
    const double r2 = r * r;
    for (const Position& p : points) {
      if (squared_distance(c.center, p) > r2) return false;
    }
    return true;
  };

  Circle best{points[0], 0.0};
  bool have = n == 1;
  if (have) return best;

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const Circle c = from_two(points[i], points[j]);
      if ((!have || c.radius < best.radius) && encloses_all(c)) {
        best = c;
        have = true;
      }
      for (std::size_t k = j + 1; k < n; ++k) {
        const Circle t = from_three(points[i], points[j], points[k]);
        if ((!have || t.radius < best.radius) && encloses_all(t)) {
          best = t;
          have = true;
        }
      }
    }
  }
  return best;
}

}  // namespace wetplan
