// Dense factorizations and eigenvalue algorithms.
//
// Everything here is a pure function of its inputs. Rank decisions follow a
// single policy: a pivot (or singular value) counts when it exceeds
// `rank_tol` times the largest one.
#pragma once

#include <complex>
#include <vector>

#include "rangemono/matrix.hpp"

namespace rmono::linalg {

struct QrResult {
  Matrix q;                        // m x m orthogonal
  Matrix r;                        // m x n upper trapezoidal
  std::vector<std::size_t> perm;   // M(:, perm[j]) = (Q R)(:, j)
  std::size_t rank = 0;
};

/// Householder QR with column pivoting: M P = Q R.
QrResult qr_column_pivoted(const Matrix& m, const Tolerances& tol = {});

std::size_t rank(const Matrix& m, const Tolerances& tol = {});

/// Orthonormal columns spanning R(M). The two bases always satisfy
/// range.cols() + null.cols() == m.cols().
Matrix range_basis(const Matrix& m, const Tolerances& tol = {});
Matrix null_basis(const Matrix& m, const Tolerances& tol = {});

struct SymEigen {
  Vector values;   // ascending
  Matrix vectors;  // column k pairs with values[k]
};

/// Cyclic Jacobi. Rejects input whose asymmetry exceeds eq_tol * max|S|.
SymEigen sym_eigen(const Matrix& s, const Tolerances& tol = {});

/// Smallest eigenvalue of a symmetric matrix (no symmetry check).
double min_eigenvalue(const Matrix& s);

struct Spectrum {
  std::vector<std::complex<double>> values;
  double spectral_radius() const;
  double min_real_part() const;
};

/// Balancing, Householder reduction to Hessenberg form and Francis
/// double-shift QR. Throws NonConvergence after 100 n sweeps.
Spectrum general_eigenvalues(const Matrix& m);

/// One-sided Jacobi; descending order.
Vector singular_values(const Matrix& m);

struct LuResult {
  Matrix lu;
  std::vector<std::size_t> piv;
  int sign = 1;
  bool singular = false;
};

LuResult lu_decompose(const Matrix& a);
double determinant(const Matrix& a);
/// Throws SingularOperator when a pivot vanishes.
Matrix inverse(const Matrix& a);
Vector solve(const Matrix& a, std::span<const double> b);

/// Minimum-norm solution of a consistent system A x = b via pivoted QR of
/// A^T. For inconsistent systems the independent equations are solved and
/// the rest ignored, so callers check the residual.
Vector solve_min_norm(const Matrix& a, std::span<const double> b, const Tolerances& tol = {});

/// Orthonormal basis of the orthogonal complement of span(basis) in R^rows.
Matrix orthogonal_complement(const Matrix& basis, const Tolerances& tol = {});

}  // namespace rmono::linalg
