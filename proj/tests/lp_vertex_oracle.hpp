#pragma once

// Brute-force reference solver for small LPs in the solver's native form
//   min c.x  s.t.  A x >= b,  0 <= x <= u
// restricted to instances where every upper bound is finite, so the feasible
// set is a polytope and the optimum (when it exists) sits on a vertex formed
// by n active hyperplanes.  Enumerates all n-subsets of the hyperplanes
// {rows, x_j = 0, x_j = u_j}, solves each square system, filters by
// feasibility and keeps the best objective.  Exponential, fine for n <= 6.

#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include "wetplan/lp.hpp"

namespace testutil {

inline bool solve_square(std::vector<std::vector<double>> a, std::vector<double> b,
                         std::vector<double>& x) {
  const std::size_t n = b.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (std::fabs(a[r][c]) > std::fabs(a[piv][c])) piv = r;
    if (std::fabs(a[piv][c]) < 1e-11) return false;
    std::swap(a[piv], a[c]);
    std::swap(b[piv], b[c]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c) continue;
      const double f = a[r][c] / a[c][c];
      if (f == 0.0) continue;
      for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
      b[r] -= f * b[c];
    }
  }
  x.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) x[i] = b[i] / a[i][i];
  return true;
}

struct OracleResult {
  bool feasible = false;
  double objective = 0.0;
  std::vector<double> x;
};

inline OracleResult vertex_enumerate(const wetplan::LpProblem& p) {
  const std::size_t n = p.objective.size();
  const std::size_t m = p.row_coeffs.size();

  // Hyperplane i: plane_a[i] . x = plane_b[i]
  std::vector<std::vector<double>> plane_a;
  std::vector<double> plane_b;
  for (std::size_t i = 0; i < m; ++i) {
    plane_a.push_back(p.row_coeffs[i]);
    plane_b.push_back(p.row_rhs[i]);
  }
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<double> e(n, 0.0);
    e[j] = 1.0;
    plane_a.push_back(e);
    plane_b.push_back(0.0);
    plane_a.push_back(e);
    plane_b.push_back(p.upper[j]);
  }
  const std::size_t total = plane_a.size();

  auto feasible_point = [&](const std::vector<double>& x) {
    for (std::size_t j = 0; j < n; ++j) {
      if (x[j] < -1e-8 || x[j] > p.upper[j] + 1e-8) return false;
    }
    for (std::size_t i = 0; i < m; ++i) {
      double lhs = 0.0, scale = 1.0;
      for (std::size_t j = 0; j < n; ++j) {
        lhs += p.row_coeffs[i][j] * x[j];
        scale = std::max(scale, std::fabs(p.row_coeffs[i][j] * p.upper[j]));
      }
      if (lhs < p.row_rhs[i] - 1e-8 * scale) return false;
    }
    return true;
  };

  OracleResult best;
  best.objective = std::numeric_limits<double>::infinity();

  std::vector<std::size_t> idx(n);
  for (std::size_t i = 0; i < n; ++i) idx[i] = i;
  while (true) {
    std::vector<std::vector<double>> a;
    std::vector<double> b;
    for (std::size_t i : idx) {
      a.push_back(plane_a[i]);
      b.push_back(plane_b[i]);
    }
    std::vector<double> x;
    if (solve_square(a, b, x) && feasible_point(x)) {
      double obj = 0.0;
      for (std::size_t j = 0; j < n; ++j) obj += p.objective[j] * x[j];
      if (!best.feasible || obj < best.objective) {
        best.feasible = true;
        best.objective = obj;
        best.x = x;
      }
    }
    // next n-combination of {0..total-1}
    std::size_t k = n;
    while (k > 0 && idx[k - 1] == total - n + (k - 1)) --k;
    if (k == 0) break;
    ++idx[k - 1];
    for (std::size_t i = k; i < n; ++i) idx[i] = idx[i - 1] + 1;
  }
  return best;
}

}  // namespace testutil
