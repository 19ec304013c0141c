// Shared helpers for the test suites: independent oracles and generators.
// Nothing here calls the library's factorizations or eigensolvers, so the
// oracles can be trusted to check them.
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <vector>

#include "rangemono/lp.hpp"
#include "rangemono/matrix.hpp"
#include "rangemono/operators.hpp"
#include "rangemono/sampling.hpp"
#include "rangemono/symspace.hpp"

namespace rmtest {

using rmono::Matrix;
using rmono::Vector;
using cplx = std::complex<double>;

inline constexpr std::uint64_t kSeed = 20240611;

inline double max_diff(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return std::numeric_limits<double>::infinity();
  double m = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m = std::max(m, std::abs(a(i, j) - b(i, j)));
  return m;
}

inline bool near(const Matrix& a, const Matrix& b, double tol = 1e-9) { return max_diff(a, b) <= tol; }

inline double max_diff(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

inline Matrix rot() { return Matrix{{0, 1}, {-1, 0}}; }
inline Matrix flip() { return Matrix{{0, 1}, {1, 0}}; }

// Plain Gauss-Jordan with partial pivoting; nullopt when singular.
inline std::optional<Vector> gauss_solve(Matrix a, Vector b, double eps = 1e-12) {
  const std::size_t n = a.rows();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (std::abs(a(r, c)) > std::abs(a(p, c))) p = r;
    if (std::abs(a(p, c)) < eps) return std::nullopt;
    if (p != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(p, j), a(c, j));
      std::swap(b[p], b[c]);
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c) continue;
      const double f = a(r, c) / a(c, c);
      if (f == 0.0) continue;
      for (std::size_t j = c; j < n; ++j) a(r, j) -= f * a(c, j);
      b[r] -= f * b[c];
    }
  }
  for (std::size_t i = 0; i < n; ++i) b[i] /= a(i, i);
  return b;
}

inline std::optional<Matrix> gauss_inverse(const Matrix& a) {
  const std::size_t n = a.rows();
  Matrix inv(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    Vector e(n, 0.0);
    e[j] = 1.0;
    auto x = gauss_solve(a, e);
    if (!x) return std::nullopt;
    for (std::size_t i = 0; i < n; ++i) inv(i, j) = (*x)[i];
  }
  return inv;
}

// Characteristic polynomial coefficients c[0..n] of det(xI - M), c[n] = 1,
// by Faddeev-LeVerrier.
inline Vector char_poly(const Matrix& m) {
  const std::size_t n = m.rows();
  Vector c(n + 1, 0.0);
  c[n] = 1.0;
  Matrix mk = Matrix(n, n);
  for (std::size_t k = 1; k <= n; ++k) {
    Matrix t = mk;
    for (std::size_t i = 0; i < n; ++i) t(i, i) += c[n - k + 1];
    mk = m * t;
    c[n - k] = -rmono::trace(mk) / static_cast<double>(k);
  }
  return c;
}

// Roots of the monic polynomial sum c[i] x^i by Durand-Kerner iteration.
inline std::vector<cplx> durand_kerner(const Vector& c) {
  const std::size_t n = c.size() - 1;
  std::vector<cplx> z(n);
  double radius = 1.0;
  for (std::size_t i = 0; i < n; ++i) radius = std::max(radius, 1.0 + std::abs(c[i]));
  for (std::size_t i = 0; i < n; ++i) z[i] = std::polar(0.5 * radius, 0.4 + 2.0 * std::numbers::pi * i / n);
  auto eval = [&](cplx x) {
    cplx v = 0.0;
    for (std::size_t i = n + 1; i-- > 0;) v = v * x + c[i];
    return v;
  };
  for (int it = 0; it < 5000; ++it) {
    double change = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      cplx den = 1.0;
      for (std::size_t j = 0; j < n; ++j)
        if (j != i) den *= z[i] - z[j];
      const cplx step = eval(z[i]) / den;
      z[i] -= step;
      change = std::max(change, std::abs(step));
    }
    if (change < 1e-15) break;
  }
  // Newton polish.
  for (auto& x : z) {
    for (int it = 0; it < 20; ++it) {
      cplx p = 0.0, dp = 0.0;
      for (std::size_t i = n + 1; i-- > 0;) {
        dp = dp * x + p;
        p = p * x + c[i];
      }
      if (std::abs(dp) < 1e-300) break;
      x -= p / dp;
    }
  }
  return z;
}

// Largest distance from a member of `a` to its nearest partner in `b`,
// partners used once.
inline double match_distance(std::vector<cplx> a, std::vector<cplx> b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  double worst = 0.0;
  for (const cplx& x : a) {
    std::size_t best = 0;
    for (std::size_t j = 1; j < b.size(); ++j)
      if (std::abs(b[j] - x) < std::abs(b[best] - x)) best = j;
    worst = std::max(worst, std::abs(b[best] - x));
    b.erase(b.begin() + static_cast<std::ptrdiff_t>(best));
  }
  return worst;
}

// Stationary vector of a column-stochastic irreducible T by power iteration
// on the lazy chain (I + T) / 2; unit 1-norm.
inline Vector stationary(const Matrix& t) {
  const std::size_t n = t.rows();
  Vector x(n, 1.0 / static_cast<double>(n));
  for (int it = 0; it < 200000; ++it) {
    Vector y(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      y[i] = 0.5 * x[i];
      for (std::size_t j = 0; j < n; ++j) y[i] += 0.5 * t(i, j) * x[j];
    }
    double change = 0.0;
    for (std::size_t i = 0; i < n; ++i) change = std::max(change, std::abs(y[i] - x[i]));
    x = y;
    if (change < 1e-16) break;
  }
  double s = 0.0;
  for (double v : x) s += v;
  for (double& v : x) v /= s;
  return x;
}

// Random column-stochastic matrix with a positive cyclic backbone, hence
// irreducible.
inline Matrix random_stochastic(rmono::Rng& rng, std::size_t n, double density = 0.5) {
  Matrix t(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    t((j + 1) % n, j) = rng.uniform(0.2, 1.0);
    for (std::size_t i = 0; i < n; ++i)
      if (i != (j + 1) % n && rng.uniform() < density) t(i, j) = rng.uniform(0.0, 1.0);
  }
  for (std::size_t j = 0; j < n; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += t(i, j);
    for (std::size_t i = 0; i < n; ++i) t(i, j) /= s;
  }
  return t;
}

// Exact minimum eigenvalues for orders 2 and 3 (closed forms).
inline double min_eig2(const Matrix& x) {
  const double a = x(0, 0), b = 0.5 * (x(0, 1) + x(1, 0)), c = x(1, 1);
  return 0.5 * (a + c) - std::hypot(0.5 * (a - c), b);
}

inline double min_eig3(const Matrix& x) {
  const double a01 = 0.5 * (x(0, 1) + x(1, 0)), a02 = 0.5 * (x(0, 2) + x(2, 0)), a12 = 0.5 * (x(1, 2) + x(2, 1));
  const double p1 = a01 * a01 + a02 * a02 + a12 * a12;
  if (p1 == 0.0) return std::min({x(0, 0), x(1, 1), x(2, 2)});
  const double q = (x(0, 0) + x(1, 1) + x(2, 2)) / 3.0;
  const double d0 = x(0, 0) - q, d1 = x(1, 1) - q, d2 = x(2, 2) - q;
  const double p = std::sqrt((d0 * d0 + d1 * d1 + d2 * d2 + 2.0 * p1) / 6.0);
  const double b00 = d0 / p, b11 = d1 / p, b22 = d2 / p, b01 = a01 / p, b02 = a02 / p, b12 = a12 / p;
  const double det = b00 * (b11 * b22 - b12 * b12) - b01 * (b01 * b22 - b12 * b02) + b02 * (b01 * b12 - b11 * b02);
  const double r = std::clamp(det / 2.0, -1.0, 1.0);
  const double phi = std::acos(r) / 3.0;
  return q + 2.0 * p * std::cos(phi + 2.0 * std::numbers::pi / 3.0);
}

inline double min_eig_small(const Matrix& x) {
  if (x.rows() == 1) return x(0, 0);
  return x.rows() == 2 ? min_eig2(x) : min_eig3(x);
}

// Any order: smallest real part among the characteristic roots.
inline double min_eig_any(const Matrix& x) {
  if (x.rows() <= 3) return min_eig_small(x);
  double lo = std::numeric_limits<double>::infinity();
  for (const cplx& z : durand_kerner(char_poly(x))) lo = std::min(lo, z.real());
  return lo;
}

enum class Oracle { Trivial, Nontrivial, Unknown };

// Does span{M1} or span{M1, M2} (symmetric, order 2 or 3) meet the PSD cone
// away from 0? Sign analysis for one generator, an angle sweep with step
// 1e-3 for two. Answers within `margin` of the boundary are Unknown.
inline Oracle psd_sweep_oracle(const std::vector<Matrix>& gens, double margin = 1e-6) {
  auto scale = [](const Matrix& m) { return std::max(1.0, rmono::frobenius_norm(m)); };
  if (gens.size() == 1) {
    const double s = scale(gens[0]);
    const double lo = min_eig_small(gens[0]) / s;
    const double hi = min_eig_small(-gens[0]) / s;
    if (lo > margin || hi > margin) return Oracle::Nontrivial;
    if (lo < -margin && hi < -margin) return Oracle::Trivial;
    return Oracle::Unknown;
  }
  double best = -std::numeric_limits<double>::infinity();
  const double s = std::max(scale(gens[0]), scale(gens[1]));
  for (double th = 0.0; th < 2.0 * std::numbers::pi; th += 1e-3) {
    const Matrix m = std::cos(th) * gens[0] + std::sin(th) * gens[1];
    best = std::max(best, min_eig_small(m) / s);
  }
  if (best > margin) return Oracle::Nontrivial;
  if (best < -margin) return Oracle::Trivial;
  return Oracle::Unknown;
}

// Exhaustive vertex enumeration for a box-bounded LP: every choice of n
// active rows among constraints and finite bounds. Returns nullopt when
// no vertex is feasible.
inline std::optional<double> lp_vertex_oracle(const rmono::lp::LinearProgram& p, double feas = 1e-9) {
  using rmono::lp::Relation;
  const std::size_t n = p.objective.size();
  std::vector<Vector> rows;
  Vector rhs;
  for (const auto& c : p.constraints) {
    rows.push_back(c.coeffs);
    rhs.push_back(c.rhs);
  }
  for (std::size_t j = 0; j < n; ++j) {
    Vector e(n, 0.0);
    e[j] = 1.0;
    rows.push_back(e);
    rhs.push_back(p.lower.empty() ? 0.0 : p.lower[j]);
    rows.push_back(e);
    rhs.push_back(p.upper[j]);
  }
  auto feasible = [&](const Vector& x) {
    for (const auto& c : p.constraints) {
      double v = 0.0;
      for (std::size_t j = 0; j < n; ++j) v += c.coeffs[j] * x[j];
      const double slack = feas * (1.0 + std::abs(c.rhs));
      if (c.rel == Relation::LessEqual && v > c.rhs + slack) return false;
      if (c.rel == Relation::GreaterEqual && v < c.rhs - slack) return false;
      if (c.rel == Relation::Equal && std::abs(v - c.rhs) > slack) return false;
    }
    for (std::size_t j = 0; j < n; ++j) {
      const double lo = p.lower.empty() ? 0.0 : p.lower[j];
      if (x[j] < lo - feas || x[j] > p.upper[j] + feas) return false;
    }
    return true;
  };
  std::optional<double> best;
  const std::size_t m = rows.size();
  std::vector<std::size_t> pick(n);
  for (std::size_t i = 0; i < n; ++i) pick[i] = i;
  while (true) {
    Matrix a(n, n);
    Vector b(n);
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t j = 0; j < n; ++j) a(r, j) = rows[pick[r]][j];
      b[r] = rhs[pick[r]];
    }
    if (auto x = gauss_solve(a, b, 1e-10); x && feasible(*x)) {
      double v = 0.0;
      for (std::size_t j = 0; j < n; ++j) v += p.objective[j] * (*x)[j];
      if (!best || (p.maximize ? v > *best : v < *best)) best = v;
    }
    std::size_t i = n;
    while (i-- > 0 && pick[i] == m - n + i) {
    }
    if (i == static_cast<std::size_t>(-1)) break;
    ++pick[i];
    for (std::size_t k = i + 1; k < n; ++k) pick[k] = pick[k - 1] + 1;
  }
  return best;
}

// Unit-norm X in R(T) with lambda_min(T(X)) >= -feas, found by sampling
// Gaussian combinations of the columns of T (in svec coordinates).
inline std::optional<Matrix> refute_trivial(const rmono::OperatorMatrix& op, rmono::Rng& rng, int samples,
                                            double feas = 1e-7) {
  const std::size_t d = op.dim();
  const Matrix& t = op.entries;
  for (int s = 0; s < samples; ++s) {
    Vector w = rng.normal_vector(d);
    Vector x = t * w;
    const double nx = rmono::norm2(x);
    if (nx < 1e-8) continue;
    for (double& v : x) v /= nx;
    const Matrix tx = rmono::smat_dense(t * x);
    if (min_eig_any(tx) >= -feas) return rmono::smat_dense(x);
  }
  return std::nullopt;
}

// M = V diag(B, 0) V^{-1}: an index-one matrix whose group inverse is
// V diag(B^{-1}, 0) V^{-1}.
struct IndexOne {
  Matrix m;
  Matrix sharp;
};

inline IndexOne random_index_one(rmono::Rng& rng, std::size_t n, std::size_t r) {
  Matrix v = Matrix::identity(n) + 0.3 * rng.normal_matrix(n, n);
  Matrix b = rng.normal_matrix(r, r);
  for (std::size_t i = 0; i < r; ++i) b(i, i) += (b(i, i) >= 0 ? 2.0 : -2.0);
  const Matrix vinv = *gauss_inverse(v);
  const Matrix binv = *gauss_inverse(b);
  Matrix core(n, n), core_inv(n, n);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) {
      core(i, j) = b(i, j);
      core_inv(i, j) = binv(i, j);
    }
  return {v * core * vinv, v * core_inv * vinv};
}

}  // namespace rmtest
