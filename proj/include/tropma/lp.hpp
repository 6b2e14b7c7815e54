#pragma once

// Small dense linear programs: maximize c.x subject to
//   A_ub x <= b_ub,  A_eq x = b_eq,  x >= 0.
// Two-phase tableau simplex with Bland's pivoting rule.

#include <vector>

namespace tropma {

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  double value = 0.0;
  std::vector<double> x;
};

struct LinearProgram {
  std::vector<double> objective;
  std::vector<std::vector<double>> a_ub;
  std::vector<double> b_ub;
  std::vector<std::vector<double>> a_eq;
  std::vector<double> b_eq;
};

inline constexpr double kLpTolerance = 1e-10;

LpResult solve_lp(const LinearProgram& lp, double tol = kLpTolerance);

}  // namespace tropma
