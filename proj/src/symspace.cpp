#include "rangemono/symspace.hpp"

#include <algorithm>
#include <cmath>

#include "rangemono/linalg.hpp"

namespace rmono {

namespace {
const double kSqrt2 = std::sqrt(2.0);
}

std::size_t sym_dim(std::size_t n) { return n * (n + 1) / 2; }

std::size_t packed_index(std::size_t i, std::size_t j) {
  if (i > j) std::swap(i, j);
  return j * (j + 1) / 2 + i;
}

std::size_t order_from_dim(std::size_t d) {
  std::size_t n = 0;
  while (sym_dim(n) < d) ++n;
  if (sym_dim(n) != d) throw Error(ErrorCode::InvalidArgument, "svec length is not n(n+1)/2");
  return n;
}

SymMatrix::SymMatrix(std::size_t n) : n_(n), packed_(sym_dim(n), 0.0) {}

SymMatrix SymMatrix::from_dense(const Matrix& x, const Tolerances& tol) {
  require_square(x, "SymMatrix");
  if (!x.all_finite()) throw Error(ErrorCode::InvalidArgument, "SymMatrix: non-finite entry");
  if (asymmetry(x) > tol.eq_tol * std::max(1.0, max_abs(x))) {
    throw Error(ErrorCode::InvalidArgument, "SymMatrix: input is not symmetric");
  }
  return symmetrize(x);
}

SymMatrix SymMatrix::symmetrize(const Matrix& x) {
  require_square(x, "SymMatrix");
  SymMatrix s(x.rows());
  for (std::size_t j = 0; j < x.rows(); ++j)
    for (std::size_t i = 0; i <= j; ++i) s.packed_[packed_index(i, j)] = 0.5 * (x(i, j) + x(j, i));
  return s;
}

double SymMatrix::operator()(std::size_t i, std::size_t j) const { return packed_[packed_index(i, j)]; }

void SymMatrix::set(std::size_t i, std::size_t j, double v) { packed_[packed_index(i, j)] = v; }

Matrix SymMatrix::dense() const {
  Matrix m(n_, n_);
  for (std::size_t j = 0; j < n_; ++j)
    for (std::size_t i = 0; i <= j; ++i) m(i, j) = m(j, i) = packed_[packed_index(i, j)];
  return m;
}

Vector svec(const SymMatrix& x) {
  Vector v(x.packed().begin(), x.packed().end());
  for (std::size_t j = 0; j < x.order(); ++j)
    for (std::size_t i = 0; i < j; ++i) v[packed_index(i, j)] *= kSqrt2;
  return v;
}

Vector svec(const Matrix& x) { return svec(SymMatrix::symmetrize(x)); }

SymMatrix smat(std::span<const double> v) {
  const std::size_t n = order_from_dim(v.size());
  SymMatrix s(n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i <= j; ++i) {
      const double x = v[packed_index(i, j)];
      s.set(i, j, i == j ? x : x / kSqrt2);
    }
  return s;
}

Matrix smat_dense(std::span<const double> v) { return smat(v).dense(); }

double trace_inner(const Matrix& x, const Matrix& y) {
  if (x.rows() != y.cols() || x.cols() != y.rows()) {
    throw Error(ErrorCode::InvalidArgument, "trace_inner: shape mismatch");
  }
  double s = 0.0;
  for (std::size_t i = 0; i < x.rows(); ++i)
    for (std::size_t j = 0; j < x.cols(); ++j) s += x(i, j) * y(j, i);
  return s;
}

SymMatrix basis_matrix(std::size_t i, std::size_t j, std::size_t n) {
  if (i < 1 || j < i || j > n) throw Error(ErrorCode::InvalidArgument, "basis_matrix: need 1 <= i <= j <= n");
  SymMatrix e(n);
  e.set(i - 1, j - 1, 1.0);
  return e;
}

PsdStatus psd_classify(const Matrix& x, const Tolerances& tol) {
  PsdStatus st;
  if (x.rows() == 0) return st;
  const auto eig = linalg::sym_eigen(x, tol);
  st.min_eig = eig.values.front();
  st.max_eig = eig.values.back();
  const double t = tol.psd_tol * (1.0 + std::max(std::abs(st.min_eig), std::abs(st.max_eig)));
  if (std::abs(st.min_eig) <= t && std::abs(st.max_eig) <= t) {
    st.cls = PsdClass::Zero;
  } else if (st.min_eig > t) {
    st.cls = PsdClass::PositiveDefinite;
  } else if (st.min_eig >= -t) {
    st.cls = PsdClass::PositiveSemidefiniteSingular;
  } else if (st.max_eig < -t) {
    st.cls = PsdClass::NegativeDefinite;
  } else if (st.max_eig <= t) {
    st.cls = PsdClass::NegativeSemidefinite;
  } else {
    st.cls = PsdClass::Indefinite;
  }
  return st;
}

PsdStatus psd_classify(const SymMatrix& x, const Tolerances& tol) { return psd_classify(x.dense(), tol); }

const char* to_string(PsdClass c) {
  switch (c) {
    case PsdClass::PositiveDefinite: return "PositiveDefinite";
    case PsdClass::PositiveSemidefiniteSingular: return "PositiveSemidefiniteSingular";
    case PsdClass::Indefinite: return "Indefinite";
    case PsdClass::NegativeSemidefinite: return "NegativeSemidefinite";
    case PsdClass::NegativeDefinite: return "NegativeDefinite";
    case PsdClass::Zero: return "Zero";
  }
  return "?";
}

Matrix psd_project(const Matrix& x) {
  const std::size_t n = x.rows();
  Tolerances loose;
  loose.eq_tol = 1e-6;
  const auto eig = linalg::sym_eigen(x, loose);
  Matrix out(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    const double lam = eig.values[k];
    if (lam <= 0.0) continue;
    for (std::size_t i = 0; i < n; ++i) {
      const double vi = lam * eig.vectors(i, k);
      for (std::size_t j = 0; j < n; ++j) out(i, j) += vi * eig.vectors(j, k);
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) out(i, j) = out(j, i) = 0.5 * (out(i, j) + out(j, i));
  return out;
}

}  // namespace rmono
