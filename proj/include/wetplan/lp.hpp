#pragma once

#include <vector>

namespace wetplan {

inline constexpr double kLpTol = 1e-9;

// minimize objective . x
// subject to   row_coeffs[i] . x >= row_rhs[i]
//              0 <= x[j] <= upper[j]   (upper may be +infinity)
struct LpProblem {
  std::vector<double> objective;
  std::vector<std::vector<double>> row_coeffs;
  std::vector<double> row_rhs;
  std::vector<double> upper;
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

struct LpSolution {
  LpStatus status = LpStatus::kInfeasible;
  std::vector<double> x;
  double objective = 0.0;
  // Multipliers of the >= rows (duals[i] pairs with row_rhs[i]) and of the
  // finite upper bounds (bound_duals[j] pairs with -upper[j]); both >= 0 at an
  // optimum, so objective == duals.row_rhs - bound_duals.upper there.
  std::vector<double> duals;
  std::vector<double> bound_duals;
  int iterations = 0;
};

LpSolution solve_lp(const LpProblem& problem);

}  // namespace wetplan
