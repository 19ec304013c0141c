// The space S^n of real symmetric matrices with the trace inner product.
//
// Coordinates: packed upper triangle, column by column, so (i, j) with
// i <= j sits at j (j + 1) / 2 + i. svec uses the same order and scales the
// off-diagonal entries by sqrt(2), which makes it an isometry onto R^d.
#pragma once

#include <span>

#include "rangemono/matrix.hpp"

namespace rmono {

std::size_t sym_dim(std::size_t n);
std::size_t packed_index(std::size_t i, std::size_t j);

class SymMatrix {
 public:
  SymMatrix() = default;
  explicit SymMatrix(std::size_t n);
  /// Rejects input whose asymmetry exceeds tol.eq_tol * max(1, max|X|).
  static SymMatrix from_dense(const Matrix& x, const Tolerances& tol = {});
  /// Symmetrizes (X + X^T) / 2 without checking.
  static SymMatrix symmetrize(const Matrix& x);

  std::size_t order() const noexcept { return n_; }
  double operator()(std::size_t i, std::size_t j) const;
  void set(std::size_t i, std::size_t j, double v);
  std::span<const double> packed() const noexcept { return packed_; }
  Matrix dense() const;

 private:
  std::size_t n_ = 0;
  Vector packed_;
};

Vector svec(const SymMatrix& x);
/// svec of the symmetric part of a dense matrix.
Vector svec(const Matrix& x);
SymMatrix smat(std::span<const double> v);
Matrix smat_dense(std::span<const double> v);

/// Order n recovered from d = n (n + 1) / 2; throws when d is not triangular.
std::size_t order_from_dim(std::size_t d);

double trace_inner(const Matrix& x, const Matrix& y);

/// E_jj (i == j) or E_ij + E_ji (i < j), 1-based indices.
SymMatrix basis_matrix(std::size_t i, std::size_t j, std::size_t n);

enum class PsdClass {
  PositiveDefinite,
  PositiveSemidefiniteSingular,
  Indefinite,
  NegativeSemidefinite,
  NegativeDefinite,
  Zero,
};

struct PsdStatus {
  PsdClass cls = PsdClass::Zero;
  double min_eig = 0.0;
  double max_eig = 0.0;

  bool is_psd() const {
    return cls == PsdClass::PositiveDefinite || cls == PsdClass::PositiveSemidefiniteSingular || cls == PsdClass::Zero;
  }
};

/// Thresholds at psd_tol * (1 + max|lambda|).
PsdStatus psd_classify(const Matrix& x, const Tolerances& tol = {});
PsdStatus psd_classify(const SymMatrix& x, const Tolerances& tol = {});
const char* to_string(PsdClass c);

/// Nearest PSD matrix in the Frobenius norm.
Matrix psd_project(const Matrix& x);

}  // namespace rmono
