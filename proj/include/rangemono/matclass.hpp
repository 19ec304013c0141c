// Z-matrices and M-matrices: classification, the singular irreducible
// M-matrix properties, semi-convergence and the characterization audit.
#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rangemono/conefeas.hpp"
#include "rangemono/linalg.hpp"
#include "rangemono/matrix.hpp"

namespace rmono {

enum class MClass { NotZ, InvertibleM, SingularM, ZNotM };
const char* to_string(MClass c);

struct ZDecomposition {
  double s = 0.0;
  Matrix b;
};

struct ClassReport {
  bool is_z = false;
  MClass m_class = MClass::NotZ;
  double s = 0.0;
  double rho_b = 0.0;
  bool boundary = false;  // SingularM decided inside the tolerance band
  std::optional<std::pair<double, double>> collatz_wielandt;
  bool is_irreducible = false;
  bool positive_stable = false;
  bool schur_stable = false;
  std::optional<Vector> perron_vector;
  std::size_t rank = 0;
  linalg::Spectrum spectrum;
};

/// Off-diagonal entries <= eq_tol.
bool is_z_matrix(const Matrix& a, const Tolerances& tol = {});
/// s = max diagonal entry, B = s I - A. Throws InvalidArgument for non-Z input.
ZDecomposition z_decompose(const Matrix& a, const Tolerances& tol = {});
/// Strong connectivity of the digraph of nonzero off-diagonal entries.
/// Order 1 counts as irreducible.
bool is_irreducible(const Matrix& a);
ClassReport classify(const Matrix& a, const Tolerances& tol = {});

/// Positive null vector with unit 1-norm.
Vector perron_null_vector(const Matrix& a, const Tolerances& tol = {});

struct SimReport {
  bool rank_is_n_minus_1 = false;
  bool perron_positive = false;
  bool group_inverse_exists = false;
  bool nonneg_on_range = false;
  bool proper_principal_submatrices_invertible_M = false;
  bool almost_monotone = false;
  bool trivially_range_monotone = false;

  std::size_t rank = 0;
  Vector perron;
  double perron_residual = 0.0;
  std::optional<Matrix> group_inverse;
  double axiom_residual = 0.0;  // max relative residual of the three axioms
  std::size_t range_rays = 0;
  ConeDecision almost_monotone_decision;
  std::optional<std::string> failed_submatrix;

  bool all() const {
    return rank_is_n_minus_1 && perron_positive && group_inverse_exists && nonneg_on_range &&
           proper_principal_submatrices_invertible_M && almost_monotone && trivially_range_monotone;
  }
};

/// Requires a singular irreducible M-matrix (InvalidArgument otherwise).
SimReport verify_sim(const Matrix& a, const Tolerances& tol = {});

bool is_semiconvergent(const Matrix& x, const Tolerances& tol = {});

struct EquivalenceAudit {
  std::vector<std::pair<std::string, bool>> items;
  bool value = false;
};

/// Evaluates each characterization independently; throws Inconsistent
/// listing the dissenting keys when they disagree. Requires n <= 12.
EquivalenceAudit check_m_equivalences(const Matrix& a, const Tolerances& tol = {});

struct NeumannResult {
  double relative_error = 0.0;
  std::size_t terms = 0;
  Matrix approximation;
};

/// Truncated series s^{-1} sum (B/s)^m against A^{-1}.
NeumannResult neumann_inverse_check(const Matrix& a, double target = 1e-10, const Tolerances& tol = {});

}  // namespace rmono
