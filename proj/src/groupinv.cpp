#include "rangemono/groupinv.hpp"

#include <algorithm>
#include <cmath>

#include "rangemono/linalg.hpp"

namespace rmono {

std::size_t index_of(const Matrix& m, const Tolerances& tol) {
  require_square(m, "index_of");
  const std::size_t n = m.rows();
  std::size_t prev = n;
  Matrix p = m;
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t r = linalg::rank(p, tol);
    if (r == prev) return k;
    prev = r;
    p = p * m;
  }
  return n;
}

GroupInverseResult group_inverse(const Matrix& m, const Tolerances& tol, RankFactorization method) {
  require_square(m, "group_inverse");
  const std::size_t n = m.rows();
  GroupInverseResult out;
  out.index = index_of(m, tol);
  auto qr = linalg::qr_column_pivoted(m, tol);
  const std::size_t r = qr.rank;
  if (r == 0) {
    out.exists = true;
    out.inverse = Matrix(n, n);
    return out;
  }
  Matrix c;
  Matrix f;
  if (method == RankFactorization::OrthonormalRange) {
    c = qr.q.leading_columns(r);
    f = c.transpose() * m;
  } else {
    c = Matrix(n, r);
    for (std::size_t j = 0; j < r; ++j) c.set_column(j, m.column(qr.perm[j]));
    const Matrix ct = c.transpose();
    f = linalg::inverse(ct * c) * (ct * m);
  }
  const Matrix fc = f * c;
  const Vector sv = linalg::singular_values(fc);
  if (sv.back() <= tol.rank_tol * sv.front()) return out;
  const Matrix fci = linalg::inverse(fc);
  Matrix x = c * (fci * fci) * f;
  out.res_mxm = frobenius_norm(m * x * m - m);
  out.res_xmx = frobenius_norm(x * m * x - x);
  out.res_commute = frobenius_norm(m * x - x * m);
  out.exists = true;
  out.inverse = std::move(x);
  return out;
}

GroupInverseAudit group_inverse_exists_audit(const Matrix& m, const Tolerances& tol) {
  require_square(m, "group_inverse_exists_audit");
  const std::size_t n = m.rows();
  GroupInverseAudit a;
  const double mnorm = std::max(frobenius_norm(m), 1e-300);

  const auto gi = group_inverse(m, tol);
  if (gi.exists) {
    const double xnorm = std::max(frobenius_norm(*gi.inverse), 1e-300);
    const double rel = 1e-6;
    a.axioms_solvable = gi.res_mxm <= rel * mnorm && gi.res_xmx <= rel * xnorm &&
                        gi.res_commute <= rel * mnorm * xnorm;
  }

  const Matrix range = linalg::range_basis(m, tol);
  const Matrix null = linalg::null_basis(m, tol);
  Matrix stacked(n, range.cols() + null.cols());
  for (std::size_t j = 0; j < range.cols(); ++j) stacked.set_column(j, range.column(j));
  for (std::size_t j = 0; j < null.cols(); ++j) stacked.set_column(range.cols() + j, null.column(j));
  a.complementary = linalg::rank(stacked, tol) == n;

  const Matrix m2 = m * m;
  a.range_stable = linalg::rank(m2, tol) == range.cols();

  const Matrix null2 = linalg::null_basis(m2, tol);
  a.null_stable = null2.cols() == null.cols() &&
                  (null2.cols() == 0 || frobenius_norm(m * null2) <= 1e-7 * std::max(mnorm, 1.0));

  if (!(a.axioms_solvable == a.complementary && a.complementary == a.range_stable &&
        a.range_stable == a.null_stable)) {
    auto b = [](bool v) { return v ? "true" : "false"; };
    throw Error(ErrorCode::Inconsistent, std::string("group inverse audit disagrees: axioms_solvable=") +
                                             b(a.axioms_solvable) + " complementary=" + b(a.complementary) +
                                             " range_stable=" + b(a.range_stable) + " null_stable=" +
                                             b(a.null_stable));
  }
  return a;
}

NormalityCheck normality_implies_group_inverse_check(const Matrix& m, const Tolerances& tol) {
  require_square(m, "normality_implies_group_inverse_check");
  NormalityCheck c;
  const double mn = frobenius_norm(m);
  const Matrix mt = m.transpose();
  c.normal = frobenius_norm(m * mt - mt * m) <= tol.eq_tol * std::max(mn * mn, 1.0);
  c.exists = group_inverse(m, tol).exists;
  if (c.normal && !c.exists) {
    throw Error(ErrorCode::Inconsistent, "normal operator without group inverse");
  }
  return c;
}

std::vector<Vector> orthant_extreme_rays(const Matrix& basis, const Tolerances& tol) {
  const std::size_t n = basis.rows();
  const std::size_t k = basis.cols();
  if (n > kMaxRayEnumerationOrder) {
    throw Error(ErrorCode::Capability, "orthant_extreme_rays: order " + std::to_string(n) + " exceeds enumeration limit " +
                                           std::to_string(kMaxRayEnumerationOrder));
  }
  std::vector<Vector> rays;
  if (k == 0 || n == 0) return rays;
  const double thresh = std::max(tol.feas_tol, 1e-9);
  const std::uint32_t full = (1u << n) - 1u;
  for (std::uint32_t mask = 1; mask <= full; ++mask) {
    // Rows outside the support must vanish.
    std::vector<std::size_t> zero_rows;
    for (std::size_t i = 0; i < n; ++i)
      if (!(mask & (1u << i))) zero_rows.push_back(i);
    Vector c;
    if (zero_rows.empty()) {
      if (k != 1) continue;
      c = {1.0};
    } else {
      Matrix sub(zero_rows.size(), k);
      for (std::size_t r = 0; r < zero_rows.size(); ++r)
        for (std::size_t j = 0; j < k; ++j) sub(r, j) = basis(zero_rows[r], j);
      const Matrix nb = linalg::null_basis(sub, tol);
      if (nb.cols() != 1) continue;
      c = nb.column(0);
    }
    Vector y = basis * c;
    double s = sum(y);
    if (s < 0.0) {
      for (double& v : y) v = -v;
      s = -s;
    }
    if (s <= thresh) continue;
    for (double& v : y) v /= s;
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i) {
      const bool in = mask & (1u << i);
      ok = in ? y[i] > thresh : std::abs(y[i]) <= thresh;
    }
    if (!ok) continue;
    for (std::size_t i = 0; i < n; ++i)
      if (!(mask & (1u << i))) y[i] = 0.0;
    rays.push_back(std::move(y));
  }
  return rays;
}

NonnegOnRange nonneg_on_range(const Matrix& a, const Matrix& a_sharp, const Tolerances& tol) {
  require_square(a, "nonneg_on_range");
  NonnegOnRange out;
  out.rays = orthant_extreme_rays(linalg::range_basis(a, tol), tol);
  for (const auto& ray : out.rays) {
    const Vector img = a_sharp * ray;
    if (min_entry(img) < -tol.feas_tol) {
      out.holds = false;
      out.violating_ray = ray;
      break;
    }
  }
  return out;
}

}  // namespace rmono
