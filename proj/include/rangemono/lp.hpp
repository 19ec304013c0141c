// Small dense linear programs, solved by the two-phase tableau simplex
// method with Bland's anti-cycling rule.
#pragma once

#include <limits>
#include <vector>

#include "rangemono/matrix.hpp"

namespace rmono::lp {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class Relation { LessEqual, Equal, GreaterEqual };

struct LinearConstraint {
  Vector coeffs;
  Relation rel = Relation::LessEqual;
  double rhs = 0.0;
};

// Variable bounds default to [0, +inf) when `lower`/`upper` are left empty.
// Either bound may be infinite; a variable with both infinite is free.
struct LinearProgram {
  Vector objective;
  std::vector<LinearConstraint> constraints;
  Vector lower;
  Vector upper;
  bool maximize = false;
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  double objective = 0.0;
  Vector x;
};

/// Throws InvalidArgument on malformed data and NonConvergence when the
/// pivot count exceeds max(tol.max_iter, 50 (rows + cols)).
LpResult lp_solve(const LinearProgram& program, const Tolerances& tol = {});

const char* to_string(LpStatus s);

}  // namespace rmono::lp
