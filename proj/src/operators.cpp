#include "rangemono/operators.hpp"

#include <algorithm>
#include <cmath>

#include "rangemono/linalg.hpp"
#include "rangemono/sampling.hpp"

namespace rmono {

const char* to_string(OperatorKind k) {
  switch (k) {
    case OperatorKind::Lyapunov: return "lyapunov";
    case OperatorKind::Stein: return "stein";
    case OperatorKind::General: return "general";
  }
  return "?";
}

Matrix lyapunov_action(const Matrix& a, const Matrix& x) {
  Matrix ax = a * x;
  return ax + ax.transpose();
}

Matrix stein_action(const Matrix& a, const Matrix& x) { return x - a * x * a.transpose(); }

OperatorMatrix materialize(std::size_t n, const std::function<Matrix(const Matrix&)>& map) {
  const std::size_t d = sym_dim(n);
  OperatorMatrix op{n, Matrix(d, d), OperatorKind::General, std::nullopt};
  Vector e(d, 0.0);
  for (std::size_t j = 0; j < d; ++j) {
    std::fill(e.begin(), e.end(), 0.0);
    e[j] = 1.0;
    op.entries.set_column(j, svec(map(smat_dense(e))));
  }
  return op;
}

OperatorMatrix lyapunov(const Matrix& a) {
  require_square(a, "lyapunov");
  auto op = materialize(a.rows(), [&](const Matrix& x) { return lyapunov_action(a, x); });
  op.kind = OperatorKind::Lyapunov;
  op.base = a;
  return op;
}

OperatorMatrix stein(const Matrix& a) {
  require_square(a, "stein");
  auto op = materialize(a.rows(), [&](const Matrix& x) { return stein_action(a, x); });
  op.kind = OperatorKind::Stein;
  op.base = a;
  return op;
}

OperatorMatrix general_operator(Matrix entries) {
  require_square(entries, "general_operator");
  const std::size_t n = order_from_dim(entries.rows());
  return {n, std::move(entries), OperatorKind::General, std::nullopt};
}

OperatorMatrix identity_operator(std::size_t n) { return general_operator(Matrix::identity(sym_dim(n))); }

Matrix apply(const OperatorMatrix& op, const Matrix& x) {
  if (x.rows() != op.order || x.cols() != op.order) {
    throw Error(ErrorCode::InvalidArgument, "apply: order mismatch");
  }
  return smat_dense(op.entries * svec(x));
}

SymMatrix apply(const OperatorMatrix& op, const SymMatrix& x) {
  if (x.order() != op.order) throw Error(ErrorCode::InvalidArgument, "apply: order mismatch");
  return smat(op.entries * svec(x));
}

OperatorMatrix compose(const OperatorMatrix& outer, const OperatorMatrix& inner) {
  if (outer.order != inner.order) throw Error(ErrorCode::InvalidArgument, "compose: order mismatch");
  return {outer.order, outer.entries * inner.entries, OperatorKind::General, std::nullopt};
}

OperatorMatrix power(const OperatorMatrix& op, unsigned k) {
  if (k == 1) return op;
  OperatorMatrix out = identity_operator(op.order);
  for (unsigned i = 0; i < k; ++i) out.entries = out.entries * op.entries;
  return out;
}

OperatorMatrix adjoint(const OperatorMatrix& op) {
  OperatorMatrix out{op.order, op.entries.transpose(), op.kind, std::nullopt};
  if (op.base) out.base = op.base->transpose();
  return out;
}

bool is_idempotent(const OperatorMatrix& op, const Tolerances& tol) {
  const double scale = frobenius_norm(op.entries);
  return frobenius_norm(op.entries * op.entries - op.entries) <= tol.eq_tol * std::max(scale, 1.0);
}

bool l_idempotent_expected(const Matrix& a, const Tolerances& tol) {
  require_square(a, "l_idempotent_expected");
  const std::size_t n = a.rows();
  const double eps = tol.eq_tol;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j && std::abs(a(i, j)) > eps) return false;
  // Diagonal entries must lie in {0, 1/2} and pairwise sums in {0, 1}, so
  // they are all 0 or all 1/2.
  bool zero = true;
  bool half = true;
  for (std::size_t i = 0; i < n; ++i) {
    zero = zero && std::abs(a(i, i)) <= eps;
    half = half && std::abs(a(i, i) - 0.5) <= eps;
  }
  return zero || half;
}

bool s_idempotent_expected(const Matrix& a, const Tolerances& tol) {
  require_square(a, "s_idempotent_expected");
  const Matrix a2 = a * a;
  const double scale = std::max({1.0, max_abs(a), max_abs(a2)});
  return max_abs(a2 - a) <= tol.eq_tol * scale || max_abs(a2 + a) <= tol.eq_tol * scale;
}

PotencyReport detect_k_potency(const OperatorMatrix& op, unsigned k_max, const Tolerances& tol) {
  if (k_max < 2) throw Error(ErrorCode::InvalidArgument, "detect_k_potency: k_max must be at least 2");
  PotencyReport rep;
  const Matrix& t = op.entries;
  const double tt = dot(t.data(), t.data());
  const double norm = std::sqrt(tt);
  Matrix tk = t;
  for (unsigned k = 2; k <= k_max; ++k) {
    tk = tk * t;
    const double alpha = tt == 0.0 ? 0.0 : dot(tk.data(), t.data()) / tt;
    const double res = frobenius_norm(tk - alpha * t);
    if (k == 2 || res < rep.residual) {
      rep.residual = res;
      rep.k = k;
      rep.alpha = alpha;
    }
    if (res <= tol.eq_tol * norm || norm == 0.0) {
      rep.found = true;
      rep.k = k;
      rep.alpha = alpha;
      rep.residual = res;
      return rep;
    }
  }
  return rep;
}

ZCheckResult z_operator_spot_check(const OperatorMatrix& op, int trials, std::uint64_t seed, const Tolerances& tol) {
  if (trials < 1) throw Error(ErrorCode::InvalidArgument, "z_operator_spot_check: trials must be positive");
  ZCheckResult res;
  const std::size_t n = op.order;
  if (n < 2) return res;
  Rng rng(seed);
  const double opnorm = frobenius_norm(op.entries);
  for (int t = 0; t < trials; ++t) {
    const Matrix v = rng.orthogonal(n);
    // Random split of the eigenbasis into two nonempty supports.
    std::vector<bool> left(n);
    std::size_t nl = 0;
    do {
      nl = 0;
      for (std::size_t i = 0; i < n; ++i) {
        left[i] = rng.uniform() < 0.5;
        nl += left[i] ? 1 : 0;
      }
    } while (nl == 0 || nl == n);
    Matrix x(n, n);
    Matrix y(n, n);
    for (std::size_t k = 0; k < n; ++k) {
      const double w = rng.uniform();
      Matrix& target = left[k] ? x : y;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) target(i, j) += w * v(i, k) * v(j, k);
    }
    const double val = trace_inner(apply(op, x), y);
    const double bound = tol.feas_tol * (1.0 + opnorm * frobenius_norm(x) * frobenius_norm(y));
    if (t == 0 || val > res.worst) res.worst = val;
    if (val > bound && res.holds) {
      res.holds = false;
      res.x = x;
      res.y = y;
    }
  }
  return res;
}

bool is_positive_stable(const Matrix& a) {
  if (a.rows() == 0) return true;
  return linalg::general_eigenvalues(a).min_real_part() > 0.0;
}

bool is_schur_stable(const Matrix& a) {
  if (a.rows() == 0) return true;
  return linalg::general_eigenvalues(a).spectral_radius() < 1.0;
}

SolveResult solve(const OperatorMatrix& op, const Matrix& q, const Tolerances& tol) {
  const SymMatrix qs = SymMatrix::from_dense(q, tol);
  if (qs.order() != op.order) throw Error(ErrorCode::InvalidArgument, "solve: order mismatch");
  const std::size_t d = op.dim();
  auto qr = linalg::qr_column_pivoted(op.entries, tol);
  if (qr.rank < d) {
    const Matrix nb = linalg::null_basis(op.entries, tol);
    std::vector<Matrix> kernel;
    for (std::size_t j = 0; j < nb.cols(); ++j) kernel.push_back(smat_dense(nb.column(j)));
    throw SingularOperatorError("solve: operator is singular (rank " + std::to_string(qr.rank) + " < " +
                                    std::to_string(d) + ")",
                                std::move(kernel));
  }
  // T P = Q R  =>  x = P R^{-1} Q^T b.
  const Vector b = svec(qs);
  Vector c(d, 0.0);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t k = 0; k < d; ++k) c[i] += qr.q(k, i) * b[k];
  Vector z(d, 0.0);
  for (std::size_t ii = d; ii-- > 0;) {
    double s = c[ii];
    for (std::size_t j = ii + 1; j < d; ++j) s -= qr.r(ii, j) * z[j];
    z[ii] = s / qr.r(ii, ii);
  }
  Vector xv(d, 0.0);
  for (std::size_t j = 0; j < d; ++j) xv[qr.perm[j]] = z[j];

  SolveResult out;
  out.x = smat_dense(xv);
  const Vector r = subtract(op.entries * xv, b);
  out.residual = norm2(r);
  const double qnorm = norm2(b);
  if (out.residual > tol.feas_tol * std::max(qnorm, 1e-300)) {
    throw Error(ErrorCode::NonConvergence, "solve: residual above tolerance (ill-conditioned operator)");
  }
  if (op.base && op.kind != OperatorKind::General) {
    out.stable_base = op.kind == OperatorKind::Lyapunov ? is_positive_stable(*op.base) : is_schur_stable(*op.base);
  }
  out.rhs_positive_definite = psd_classify(q, tol).cls == PsdClass::PositiveDefinite;
  if (out.stable_base && out.rhs_positive_definite) {
    const bool pd = psd_classify(out.x, tol).cls == PsdClass::PositiveDefinite;
    out.x_positive_definite = pd;
    if (!pd) throw Error(ErrorCode::Inconsistent, "solve: stable base and Q > 0 but X is not positive definite");
  }
  return out;
}

bool orthogonal_covariance_check(const Matrix& a, const Matrix& p, const Matrix& x, const Tolerances& tol) {
  require_square(a, "orthogonal_covariance_check");
  if (p.rows() != a.rows() || !p.is_square() || x.rows() != a.rows() || !x.is_square()) {
    throw Error(ErrorCode::InvalidArgument, "orthogonal_covariance_check: shape mismatch");
  }
  const std::size_t n = a.rows();
  if (max_abs(p.transpose() * p - Matrix::identity(n)) > tol.eq_tol * 10.0) {
    throw Error(ErrorCode::InvalidArgument, "orthogonal_covariance_check: P is not orthogonal");
  }
  const Matrix pt = p.transpose();
  const Matrix pap = p * a * pt;
  const Matrix pxp = p * x * pt;
  const double scale = 1.0 + max_abs(a) * max_abs(a) * max_abs(x) * static_cast<double>(n * n);
  const double lerr = max_abs(lyapunov_action(pap, pxp) - p * lyapunov_action(a, x) * pt);
  const double serr = max_abs(stein_action(pap, pxp) - p * stein_action(a, x) * pt);
  return lerr <= tol.eq_tol * scale && serr <= tol.eq_tol * scale;
}

}  // namespace rmono
