// Linear operators on S^n materialized as d x d matrices in svec
// coordinates, d = n (n + 1) / 2. Column j holds svec(T(smat(e_j))).
#pragma once

#include <cstdint>
#include <functional>
#include <optional>

#include "rangemono/matrix.hpp"
#include "rangemono/symspace.hpp"

namespace rmono {

enum class OperatorKind { Lyapunov, Stein, General };
const char* to_string(OperatorKind k);

struct OperatorMatrix {
  std::size_t order = 0;
  Matrix entries;
  OperatorKind kind = OperatorKind::General;
  std::optional<Matrix> base;

  std::size_t dim() const { return entries.rows(); }
};

/// A X + X A^T and X - A X A^T on dense matrices.
Matrix lyapunov_action(const Matrix& a, const Matrix& x);
Matrix stein_action(const Matrix& a, const Matrix& x);

OperatorMatrix lyapunov(const Matrix& a);
OperatorMatrix stein(const Matrix& a);
OperatorMatrix materialize(std::size_t n, const std::function<Matrix(const Matrix&)>& map);
OperatorMatrix general_operator(Matrix entries);
OperatorMatrix identity_operator(std::size_t n);

Matrix apply(const OperatorMatrix& op, const Matrix& x);
SymMatrix apply(const OperatorMatrix& op, const SymMatrix& x);
OperatorMatrix compose(const OperatorMatrix& outer, const OperatorMatrix& inner);
OperatorMatrix power(const OperatorMatrix& op, unsigned k);
OperatorMatrix adjoint(const OperatorMatrix& op);

bool is_idempotent(const OperatorMatrix& op, const Tolerances& tol = {});
/// Closed-form L-idempotency test: A = 0 or A = I/2 (see docs/reduction.md).
bool l_idempotent_expected(const Matrix& a, const Tolerances& tol = {});
/// Closed-form S-idempotency test: A^2 = A or A^2 = -A.
bool s_idempotent_expected(const Matrix& a, const Tolerances& tol = {});

struct PotencyReport {
  bool found = false;
  unsigned k = 0;
  double alpha = 0.0;
  double residual = 0.0;
};

/// Smallest k in [2, k_max] with T^k = alpha T.
PotencyReport detect_k_potency(const OperatorMatrix& op, unsigned k_max = 6, const Tolerances& tol = {});

struct ZCheckResult {
  bool holds = true;
  double worst = 0.0;  // largest <T(X), Y> seen
  std::optional<Matrix> x;
  std::optional<Matrix> y;
};

ZCheckResult z_operator_spot_check(const OperatorMatrix& op, int trials, std::uint64_t seed,
                                   const Tolerances& tol = {});

class SingularOperatorError : public Error {
 public:
  SingularOperatorError(const std::string& what, std::vector<Matrix> null_basis)
      : Error(ErrorCode::SingularOperator, what), null_basis_(std::move(null_basis)) {}
  const std::vector<Matrix>& null_basis() const { return null_basis_; }

 private:
  std::vector<Matrix> null_basis_;
};

struct SolveResult {
  Matrix x;
  double residual = 0.0;
  bool stable_base = false;        // positive stable (Lyapunov) / Schur stable (Stein)
  bool rhs_positive_definite = false;
  std::optional<bool> x_positive_definite;  // set when both flags above hold
};

/// Solves T(X) = Q. Throws SingularOperatorError (with a basis of N(T)) when
/// T is singular and Inconsistent when a stability guarantee fails.
SolveResult solve(const OperatorMatrix& op, const Matrix& q, const Tolerances& tol = {});

bool is_positive_stable(const Matrix& a);
bool is_schur_stable(const Matrix& a);

/// Checks L_{PAP^T}(PXP^T) = P L_A(X) P^T and the Stein analogue.
bool orthogonal_covariance_check(const Matrix& a, const Matrix& p, const Matrix& x, const Tolerances& tol = {});

}  // namespace rmono
