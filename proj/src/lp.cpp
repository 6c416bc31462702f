#include "wetplan/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace wetplan {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Dense full tableau over [structural | surplus | artificial] columns. Rows
// are stored with nonnegative right-hand sides; a >= row whose rhs started
// positive carries an artificial, every other row starts with its surplus
// basic.
struct Tableau {
  int rows = 0;
  int cols = 0;
  std::vector<double> cells;
  std::vector<double> rhs;
  std::vector<double> red;  // current reduced-cost row
  std::vector<int> basis;

  double& at(int r, int c) { return cells[static_cast<std::size_t>(r) * cols + c]; }
  double at(int r, int c) const { return cells[static_cast<std::size_t>(r) * cols + c]; }

  void pivot(int pr, int pc) {
    const double inv = 1.0 / at(pr, pc);
    for (int j = 0; j < cols; ++j) at(pr, j) *= inv;
    at(pr, pc) = 1.0;
    rhs[pr] *= inv;
    for (int r = 0; r < rows; ++r) {
      if (r == pr) continue;
      const double f = at(r, pc);
      if (f == 0.0) continue;
      for (int j = 0; j < cols; ++j) at(r, j) -= f * at(pr, j);
      at(r, pc) = 0.0;
      rhs[r] -= f * rhs[pr];
      if (rhs[r] < 0.0 && rhs[r] > -1e-11) rhs[r] = 0.0;
    }
    const double f = red[pc];
    if (f != 0.0) {
      for (int j = 0; j < cols; ++j) red[j] -= f * at(pr, j);
      red[pc] = 0.0;
    }
    basis[pr] = pc;
  }

  void price(const std::vector<double>& cost) {
    red = cost;
    for (int r = 0; r < rows; ++r) {
      const double cb = cost[static_cast<std::size_t>(basis[r])];
      if (cb == 0.0) continue;
      for (int j = 0; j < cols; ++j) red[j] -= cb * at(r, j);
    }
    for (int r = 0; r < rows; ++r) red[static_cast<std::size_t>(basis[r])] = 0.0;
  }
};

// Returns false when the objective is unbounded below over the allowed
// columns; iterates Dantzig entering choice and switches to Bland's rule once
// the count passes bland_after to break cycling on degenerate bases.
bool run_simplex(Tableau& t, const std::vector<char>& can_enter, int& iterations) {
  const int bland_after = 3 * (t.rows + t.cols) + 50;
  const int max_iterations = 500 * (t.rows + t.cols) + 5000;
  for (;;) {
    const bool bland = iterations > bland_after;
    int enter = -1;
    double best = -kLpTol;
    for (int j = 0; j < t.cols; ++j) {
      if (!can_enter[static_cast<std::size_t>(j)]) continue;
      if (t.red[static_cast<std::size_t>(j)] < best) {
        enter = j;
        if (bland) break;
        best = t.red[static_cast<std::size_t>(j)];
      }
    }
    if (enter < 0) return true;

    int leave = -1;
    double best_ratio = kInf;
    for (int r = 0; r < t.rows; ++r) {
      const double a = t.at(r, enter);
      if (a <= kLpTol) continue;
      const double ratio = t.rhs[r] / a;
      if (ratio < best_ratio - 1e-12 ||
          (ratio < best_ratio + 1e-12 && (leave < 0 || t.basis[r] < t.basis[leave]))) {
        best_ratio = ratio;
        leave = r;
      }
    }
    if (leave < 0) return false;

    t.pivot(leave, enter);
    if (++iterations > max_iterations) {
      throw std::runtime_error("lp: simplex iteration limit exceeded");
    }
  }
}

}  // namespace

LpSolution solve_lp(const LpProblem& problem) {
  const int n = static_cast<int>(problem.objective.size());
  const int m = static_cast<int>(problem.row_rhs.size());
  if (n == 0) throw std::invalid_argument("lp: no variables");
  if (problem.row_coeffs.size() != static_cast<std::size_t>(m)) {
    throw std::invalid_argument("lp: row_coeffs/row_rhs size mismatch");
  }
  if (problem.upper.size() != static_cast<std::size_t>(n)) {
    throw std::invalid_argument("lp: upper bound vector has wrong length");
  }
  for (const auto& row : problem.row_coeffs) {
    if (row.size() != static_cast<std::size_t>(n)) {
      throw std::invalid_argument("lp: constraint row has wrong length");
    }
  }

  // Finite upper bounds become ordinary rows: -x_j >= -upper_j.
  std::vector<int> bound_row_of(n, -1);
  int total_rows = m;
  for (int j = 0; j < n; ++j) {
    if (std::isfinite(problem.upper[j])) bound_row_of[j] = total_rows++;
  }

  Tableau t;
  t.rows = total_rows;
  std::vector<double> raw_rhs(total_rows);
  std::vector<char> negated(total_rows, 0);
  int artificials = 0;
  for (int i = 0; i < total_rows; ++i) {
    raw_rhs[i] = i < m ? problem.row_rhs[i] : 0.0;
  }
  for (int j = 0; j < n; ++j) {
    if (bound_row_of[j] >= 0) raw_rhs[bound_row_of[j]] = -problem.upper[j];
  }
  for (int i = 0; i < total_rows; ++i) {
    if (raw_rhs[i] > 0.0) {
      ++artificials;
    } else {
      negated[i] = 1;
    }
  }

  const int surplus0 = n;
  const int art0 = n + total_rows;
  t.cols = n + total_rows + artificials;
  t.cells.assign(static_cast<std::size_t>(t.rows) * t.cols, 0.0);
  t.rhs.assign(t.rows, 0.0);
  t.basis.assign(t.rows, -1);

  int next_art = art0;
  for (int i = 0; i < total_rows; ++i) {
    const double sign = negated[i] ? -1.0 : 1.0;
    if (i < m) {
      for (int j = 0; j < n; ++j) t.at(i, j) = sign * problem.row_coeffs[i][j];
    } else {
      // bound row for some variable j: coefficient -1 before any negation
      for (int j = 0; j < n; ++j) {
        if (bound_row_of[j] == i) {
          t.at(i, j) = sign * -1.0;
          break;
        }
      }
    }
    t.at(i, surplus0 + i) = sign * -1.0;
    t.rhs[i] = sign * raw_rhs[i];
    if (negated[i]) {
      t.basis[i] = surplus0 + i;
    } else {
      t.at(i, next_art) = 1.0;
      t.basis[i] = next_art;
      ++next_art;
    }
  }

  LpSolution sol;
  sol.iterations = 0;

  if (artificials > 0) {
    std::vector<double> phase1_cost(t.cols, 0.0);
    for (int j = art0; j < t.cols; ++j) phase1_cost[j] = 1.0;
    t.price(phase1_cost);
    std::vector<char> can_enter(t.cols, 1);
    if (!run_simplex(t, can_enter, sol.iterations)) {
      throw std::runtime_error("lp: phase 1 reported unbounded");
    }
    double infeas = 0.0;
    double scale = 1.0;
    for (int i = 0; i < t.rows; ++i) {
      scale = std::max(scale, std::abs(raw_rhs[i]));
      if (t.basis[i] >= art0) infeas += t.rhs[i];
    }
    if (infeas > kLpTol * scale * 10.0) {
      sol.status = LpStatus::kInfeasible;
      return sol;
    }
    // Pivot leftover zero-valued artificials onto any usable column; a row
    // with no such column is redundant and keeps its artificial parked at 0.
    for (int i = 0; i < t.rows; ++i) {
      if (t.basis[i] < art0) continue;
      for (int j = 0; j < art0; ++j) {
        if (std::abs(t.at(i, j)) > 1e-7) {
          t.pivot(i, j);
          break;
        }
      }
    }
  }

  std::vector<double> cost(t.cols, 0.0);
  for (int j = 0; j < n; ++j) cost[j] = problem.objective[j];
  t.price(cost);
  std::vector<char> can_enter(t.cols, 0);
  for (int j = 0; j < art0; ++j) can_enter[j] = 1;
  if (!run_simplex(t, can_enter, sol.iterations)) {
    sol.status = LpStatus::kUnbounded;
    return sol;
  }

  sol.status = LpStatus::kOptimal;
  sol.x.assign(n, 0.0);
  for (int i = 0; i < t.rows; ++i) {
    if (t.basis[i] < n) sol.x[static_cast<std::size_t>(t.basis[i])] = std::max(t.rhs[i], 0.0);
  }
  sol.objective = 0.0;
  for (int j = 0; j < n; ++j) sol.objective += problem.objective[j] * sol.x[j];

  // The reduced cost of a row's surplus column is that row's multiplier, for
  // negated and non-negated rows alike.
  sol.duals.assign(m, 0.0);
  for (int i = 0; i < m; ++i) sol.duals[i] = std::max(0.0, t.red[static_cast<std::size_t>(surplus0 + i)]);
  sol.bound_duals.assign(n, 0.0);
  for (int j = 0; j < n; ++j) {
    if (bound_row_of[j] >= 0) {
      sol.bound_duals[j] = std::max(0.0, t.red[static_cast<std::size_t>(surplus0 + bound_row_of[j])]);
    }
  }
  return sol;
}

}  // namespace wetplan
