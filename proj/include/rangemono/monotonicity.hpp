// Range monotonicity and trivial range monotonicity verdicts.
//
// The trivial property is decided through a reduction to cone feasibility:
// T is trivially range monotone iff N(T^2) = N(T) and R(T^2) meets the cone
// only at the origin. Witnesses are rebuilt as X = T(W) with T^2(W) in the
// cone. See docs/reduction.md for the argument.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rangemono/conefeas.hpp"
#include "rangemono/matrix.hpp"
#include "rangemono/operators.hpp"

namespace rmono {

enum class Tri { Yes, No, Undecided };
const char* to_string(Tri t);

struct MonotonicityVerdict {
  Tri trivial = Tri::Undecided;
  Tri range = Tri::Undecided;
  // Trivial refutation: X in R(T), T(X) >= 0, |X| = 1. For the matrix
  // version X is an n x 1 column.
  std::optional<Matrix> witness;
  // Range refutation: as above and X has a negative eigenvalue.
  std::optional<Matrix> range_witness;
  std::optional<Vector> certificate;  // cone certificate for R(T^2)
  std::optional<std::string> fast_path;
  std::string method;                 // how the trivial verdict was reached
  bool index_defect = false;          // N(T^2) != N(T)
};

struct FastPath {
  Tri trivial = Tri::Undecided;
  Tri range = Tri::Undecided;
  std::string name;
};

/// Structural guarantees for L_A / S_A. Never answers No.
std::optional<FastPath> fast_path(const Matrix& a, OperatorKind kind, const Tolerances& tol = {});

/// Ax >= 0, x in R(A) => x = 0, decided exactly through the orthant LPs.
MonotonicityVerdict decide_trivial_matrix(const Matrix& a, const Tolerances& tol = {}, bool use_fast_path = true);

struct DecideOptions {
  PsdSearchOptions search;
  int budget = 64;  // refutation starts for the range property
  bool use_fast_path = true;
};

/// Trivial verdict through the reduction; also sets `range` when the
/// trivial answer or the index defect settles it.
MonotonicityVerdict decide_trivial_operator(const OperatorMatrix& op, const Tolerances& tol = {},
                                            const DecideOptions& opt = {});

/// Full verdict: trivial part as above, then idempotency and a seeded
/// search for a range refutation. Range stays Undecided when nothing is
/// found.
MonotonicityVerdict decide_range_operator(const OperatorMatrix& op, const Tolerances& tol = {},
                                          const DecideOptions& opt = {});

/// Residual checks for a witness: returns an empty string when X lies in
/// R(T), T(X) >= -feas_tol and |X| = 1 (and, if `range`, X is not PSD).
std::string verify_witness(const OperatorMatrix& op, const Matrix& x, bool range, const Tolerances& tol = {});

struct InverseClassReport {
  std::string relation;   // "A^2=-I", "A^2=I" or "skew"
  Matrix inverse;         // A^{-1} or A^#
  std::optional<Tri> lyapunov;
  std::optional<Tri> stein;
  bool holds = false;
};

/// Decides the operators of A^{-1} (A^2 = +-I) or A^# (skew A). Throws
/// InvalidArgument when A is in none of these classes.
InverseClassReport inverse_class_check(const Matrix& a, const Tolerances& tol = {});

}  // namespace rmono
