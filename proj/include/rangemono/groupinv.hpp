// Index, group inverse and the related existence tests.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rangemono/matrix.hpp"

namespace rmono {

/// Smallest k >= 0 with rank(M^{k+1}) = rank(M^k).
std::size_t index_of(const Matrix& m, const Tolerances& tol = {});

enum class RankFactorization {
  OrthonormalRange,  // C = leading columns of Q, F = C^T M
  ColumnSelection,   // C = pivot columns of M, F by least squares
};

struct GroupInverseResult {
  bool exists = false;
  std::size_t index = 0;
  std::optional<Matrix> inverse;
  // Absolute residuals of M X M = M, X M X = X and M X = X M.
  double res_mxm = 0.0;
  double res_xmx = 0.0;
  double res_commute = 0.0;
};

/// M^# = C (F C)^{-2} F for a rank factorization M = C F. Exists iff F C is
/// invertible (smallest singular value > rank_tol * largest).
GroupInverseResult group_inverse(const Matrix& m, const Tolerances& tol = {},
                                 RankFactorization method = RankFactorization::OrthonormalRange);

struct GroupInverseAudit {
  bool axioms_solvable = false;
  bool complementary = false;     // R(M) + N(M) = R^n
  bool range_stable = false;      // R(M^2) = R(M)
  bool null_stable = false;       // N(M^2) = N(M)
  bool all() const { return axioms_solvable && complementary && range_stable && null_stable; }
};

/// Evaluates the four equivalent conditions independently. Throws
/// Inconsistent if they disagree.
GroupInverseAudit group_inverse_exists_audit(const Matrix& m, const Tolerances& tol = {});

struct NormalityCheck {
  bool normal = false;
  bool exists = false;
};

/// If M M^T = M^T M then the group inverse must exist; throws Inconsistent
/// otherwise.
NormalityCheck normality_implies_group_inverse_check(const Matrix& m, const Tolerances& tol = {});

inline constexpr std::size_t kMaxRayEnumerationOrder = 15;

/// Extreme rays of span(basis) intersected with the nonnegative orthant,
/// by enumeration of support sets. Rays are normalized to unit sum and
/// listed in increasing order of their support bitmask. Throws Capability
/// when basis.rows() > kMaxRayEnumerationOrder.
std::vector<Vector> orthant_extreme_rays(const Matrix& basis, const Tolerances& tol = {});

struct NonnegOnRange {
  bool holds = true;
  std::vector<Vector> rays;
  std::optional<Vector> violating_ray;
};

/// Tests x >= 0, x in R(A) => A^# x >= 0 on every extreme ray.
NonnegOnRange nonneg_on_range(const Matrix& a, const Matrix& a_sharp, const Tolerances& tol = {});

}  // namespace rmono
