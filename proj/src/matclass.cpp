#include "rangemono/matclass.hpp"

#include <algorithm>
#include <cmath>

#include "rangemono/groupinv.hpp"
#include "rangemono/lp.hpp"
#include "rangemono/monotonicity.hpp"

namespace rmono {

const char* to_string(MClass c) {
  switch (c) {
    case MClass::NotZ: return "NotZ";
    case MClass::InvertibleM: return "InvertibleM";
    case MClass::SingularM: return "SingularM";
    case MClass::ZNotM: return "ZNotM";
  }
  return "?";
}

bool is_z_matrix(const Matrix& a, const Tolerances& tol) {
  require_square(a, "is_z_matrix");
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (i != j && a(i, j) > tol.eq_tol) return false;
  return true;
}

ZDecomposition z_decompose(const Matrix& a, const Tolerances& tol) {
  if (!is_z_matrix(a, tol)) throw Error(ErrorCode::InvalidArgument, "z_decompose: not a Z-matrix");
  const std::size_t n = a.rows();
  ZDecomposition z{0.0, Matrix(n, n)};
  z.s = n == 0 ? 0.0 : a(0, 0);
  for (std::size_t i = 1; i < n; ++i) z.s = std::max(z.s, a(i, i));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) z.b(i, j) = i == j ? z.s - a(i, i) : std::max(0.0, -a(i, j));
  return z;
}

bool is_irreducible(const Matrix& a) {
  require_square(a, "is_irreducible");
  const std::size_t n = a.rows();
  if (n <= 1) return true;
  auto reaches_all = [&](bool transpose) {
    std::vector<bool> seen(n, false);
    std::vector<std::size_t> stack{0};
    seen[0] = true;
    std::size_t count = 1;
    while (!stack.empty()) {
      const std::size_t u = stack.back();
      stack.pop_back();
      for (std::size_t v = 0; v < n; ++v) {
        if (v == u || seen[v]) continue;
        const double w = transpose ? a(v, u) : a(u, v);
        if (w != 0.0) {
          seen[v] = true;
          ++count;
          stack.push_back(v);
        }
      }
    }
    return count == n;
  };
  return reaches_all(false) && reaches_all(true);
}

namespace {

// Collatz-Wielandt bounds from a power-iteration vector of B + I.
std::pair<double, double> collatz_wielandt(const Matrix& b) {
  const std::size_t n = b.rows();
  const Matrix shifted = b + Matrix::identity(n);
  Vector x(n, 1.0);
  for (int it = 0; it < 2000; ++it) {
    Vector y = shifted * x;
    const double s = sum(y);
    for (double& v : y) v /= s;
    double diff = 0.0;
    for (std::size_t i = 0; i < n; ++i) diff = std::max(diff, std::abs(y[i] - x[i]));
    x = std::move(y);
    if (diff < 1e-15) break;
  }
  const Vector bx = b * x;
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = x[i] > 0.0 ? bx[i] / x[i] : 0.0;
    lo = std::min(lo, r);
    hi = std::max(hi, r);
  }
  return {lo, hi};
}

double stability_threshold(const linalg::Spectrum& sp, const Tolerances& tol) {
  return tol.eq_tol * (1.0 + sp.spectral_radius());
}

}  // namespace

ClassReport classify(const Matrix& a, const Tolerances& tol) {
  require_square(a, "classify");
  const std::size_t n = a.rows();
  ClassReport r;
  r.rank = linalg::rank(a, tol);
  r.is_irreducible = is_irreducible(a);
  if (n > 0) {
    r.spectrum = linalg::general_eigenvalues(a);
    r.positive_stable = r.spectrum.min_real_part() > stability_threshold(r.spectrum, tol);
    r.schur_stable = r.spectrum.spectral_radius() < 1.0 - tol.eq_tol;
  }
  r.is_z = is_z_matrix(a, tol);
  if (!r.is_z) {
    r.m_class = MClass::NotZ;
    return r;
  }
  const auto z = z_decompose(a, tol);
  r.s = z.s;
  r.rho_b = n == 0 ? 0.0 : linalg::general_eigenvalues(z.b).spectral_radius();
  if (r.is_irreducible && n > 1) {
    const auto cw = collatz_wielandt(z.b);
    r.collatz_wielandt = cw;
    const double slack = 1e-6 * (1.0 + r.rho_b);
    if (r.rho_b < cw.first - slack || r.rho_b > cw.second + slack) {
      throw Error(ErrorCode::Inconsistent, "classify: spectral radius outside Collatz-Wielandt bounds");
    }
  }
  const double gap = r.s - r.rho_b;
  const double band = 1e-7 * (1.0 + std::abs(r.s));
  if (gap > band) {
    r.m_class = MClass::InvertibleM;
  } else if (gap >= -band) {
    r.m_class = MClass::SingularM;
    r.boundary = std::abs(gap) > 1e-12 * (1.0 + std::abs(r.s));
  } else {
    r.m_class = MClass::ZNotM;
  }
  if (r.m_class == MClass::SingularM && r.is_irreducible) r.perron_vector = perron_null_vector(a, tol);
  return r;
}

Vector perron_null_vector(const Matrix& a, const Tolerances& tol) {
  require_square(a, "perron_null_vector");
  if (!is_z_matrix(a, tol) || !is_irreducible(a)) {
    throw Error(ErrorCode::InvalidArgument, "perron_null_vector: requires an irreducible Z-matrix");
  }
  const Matrix nb = linalg::null_basis(a, tol);
  if (nb.cols() != 1) {
    throw Error(ErrorCode::InvalidArgument,
                "perron_null_vector: null space has dimension " + std::to_string(nb.cols()) + ", expected 1");
  }
  Vector x = nb.column(0);
  double l1 = 0.0;
  for (double v : x) l1 += std::abs(v);
  const double sgn = sum(x) < 0.0 ? -1.0 : 1.0;
  for (double& v : x) v *= sgn / l1;
  return x;
}

SimReport verify_sim(const Matrix& a, const Tolerances& tol) {
  require_square(a, "verify_sim");
  const std::size_t n = a.rows();
  const auto cls = classify(a, tol);
  if (cls.m_class != MClass::SingularM || !cls.is_irreducible) {
    throw Error(ErrorCode::InvalidArgument, "verify_sim: requires a singular irreducible M-matrix");
  }
  if (n > kMaxRayEnumerationOrder) throw Error(ErrorCode::Capability, "verify_sim: order too large");
  SimReport rep;

  rep.rank = linalg::rank(a, tol);
  rep.rank_is_n_minus_1 = rep.rank + 1 == n;

  rep.perron = perron_null_vector(a, tol);
  rep.perron_residual = norm2(a * rep.perron);
  rep.perron_positive = min_entry(rep.perron) > 1e-9 && rep.perron_residual <= tol.feas_tol;

  const auto gi = group_inverse(a, tol);
  if (gi.exists) {
    const double an = std::max(frobenius_norm(a), 1e-300);
    const double xn = std::max(frobenius_norm(*gi.inverse), 1e-300);
    rep.axiom_residual = std::max({gi.res_mxm / an, gi.res_xmx / xn, gi.res_commute / (an * xn)});
    rep.group_inverse_exists = rep.axiom_residual <= 1e-8;
    rep.group_inverse = gi.inverse;
    const auto nn = nonneg_on_range(a, *gi.inverse, tol);
    rep.nonneg_on_range = nn.holds;
    rep.range_rays = nn.rays.size();
  }

  rep.proper_principal_submatrices_invertible_M = true;
  const std::uint32_t full = (1u << n) - 1u;
  for (std::uint32_t mask = 1; mask < full; ++mask) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (1u << i)) idx.push_back(i);
    Matrix sub(idx.size(), idx.size());
    for (std::size_t i = 0; i < idx.size(); ++i)
      for (std::size_t j = 0; j < idx.size(); ++j) sub(i, j) = a(idx[i], idx[j]);
    if (classify(sub, tol).m_class != MClass::InvertibleM) {
      rep.proper_principal_submatrices_invertible_M = false;
      std::string name = "{";
      for (std::size_t i = 0; i < idx.size(); ++i) name += (i ? "," : "") + std::to_string(idx[i] + 1);
      rep.failed_submatrix = name + "}";
      break;
    }
  }

  rep.almost_monotone_decision = orthant_intersection(SubspaceSpec::vectors(n, linalg::range_basis(a, tol), tol), tol);
  rep.almost_monotone = rep.almost_monotone_decision.status == ConeStatus::TrivialCertified;

  const auto verdict = decide_trivial_matrix(a, tol, false);
  rep.trivially_range_monotone = verdict.trivial == Tri::Yes;
  return rep;
}

bool is_semiconvergent(const Matrix& x, const Tolerances& tol) {
  require_square(x, "is_semiconvergent");
  const std::size_t n = x.rows();
  if (n == 0) return true;
  const double t = std::max(tol.feas_tol, 1e-7);
  const auto sp = linalg::general_eigenvalues(x);
  if (sp.spectral_radius() > 1.0 + t) return false;
  for (const auto& z : sp.values) {
    if (std::abs(z) >= 1.0 - t && std::abs(z - 1.0) > t) return false;
  }
  const Matrix d = Matrix::identity(n) - x;
  return linalg::rank(d, tol) == linalg::rank(d * d, tol);
}

namespace {

// Hadamard-scaled threshold for deciding the sign of a determinant.
double det_threshold(const Matrix& m) {
  double h = 1.0;
  for (std::size_t i = 0; i < m.rows(); ++i) h *= std::max(norm2(m.row(i)), 1e-300);
  return 1e-10 * h;
}

bool has_positive_vector_with_positive_image(const Matrix& a, const Tolerances& tol) {
  const std::size_t n = a.rows();
  // Variables (x_1..x_n, t): max t, x - t e >= 0, A x - t e >= 0, x <= 1.
  lp::LinearProgram p;
  p.objective.assign(n + 1, 0.0);
  p.objective[n] = 1.0;
  p.maximize = true;
  p.lower.assign(n + 1, -lp::kInf);
  p.upper.assign(n + 1, 1.0);
  for (std::size_t i = 0; i < n; ++i) {
    Vector c(n + 1, 0.0);
    c[i] = 1.0;
    c[n] = -1.0;
    p.constraints.push_back({c, lp::Relation::GreaterEqual, 0.0});
    Vector r(n + 1, 0.0);
    for (std::size_t j = 0; j < n; ++j) r[j] = a(i, j);
    r[n] = -1.0;
    p.constraints.push_back({r, lp::Relation::GreaterEqual, 0.0});
  }
  const auto res = lp::lp_solve(p, tol);
  return res.status == lp::LpStatus::Optimal && res.objective > tol.feas_tol;
}

// A x >= 0 => x >= 0, tested by minimizing each coordinate over the box.
bool is_monotone(const Matrix& a, const Tolerances& tol) {
  const std::size_t n = a.rows();
  for (std::size_t k = 0; k < n; ++k) {
    lp::LinearProgram p;
    p.objective.assign(n, 0.0);
    p.objective[k] = 1.0;
    p.lower.assign(n, -1.0);
    p.upper.assign(n, 1.0);
    for (std::size_t i = 0; i < n; ++i) p.constraints.push_back({a.row(i), lp::Relation::GreaterEqual, 0.0});
    const auto res = lp::lp_solve(p, tol);
    if (res.status != lp::LpStatus::Optimal || res.objective < -tol.feas_tol) return false;
  }
  // Monotone matrices are injective: also exclude x != 0 with A x = 0 >= 0.
  return linalg::rank(a, tol) == n;
}

}  // namespace

EquivalenceAudit check_m_equivalences(const Matrix& a, const Tolerances& tol) {
  require_square(a, "check_m_equivalences");
  if (!is_z_matrix(a, tol)) throw Error(ErrorCode::InvalidArgument, "check_m_equivalences: not a Z-matrix");
  const std::size_t n = a.rows();
  if (n > 12) throw Error(ErrorCode::Capability, "check_m_equivalences: order exceeds 12");
  const auto cls = classify(a, tol);
  EquivalenceAudit audit;
  auto add = [&](const char* key, bool v) { audit.items.emplace_back(key, v); };

  add("invertible_m", cls.m_class == MClass::InvertibleM);
  add("positive_vector_with_positive_image", has_positive_vector_with_positive_image(a, tol));
  add("monotone", is_monotone(a, tol));

  const auto lu = linalg::lu_decompose(a);
  std::optional<Matrix> inv;
  if (!lu.singular && linalg::rank(a, tol) == n) inv = linalg::inverse(a);
  const double inv_scale = inv ? max_abs(*inv) : 0.0;
  add("inverse_nonnegative", inv && min_entry(inv->data()) >= -1e-12 * inv_scale);

  bool p_matrix = true;
  for (std::uint32_t mask = 1; mask < (1u << n) && p_matrix; ++mask) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (1u << i)) idx.push_back(i);
    Matrix sub(idx.size(), idx.size());
    for (std::size_t i = 0; i < idx.size(); ++i)
      for (std::size_t j = 0; j < idx.size(); ++j) sub(i, j) = a(idx[i], idx[j]);
    p_matrix = linalg::determinant(sub) > det_threshold(sub);
  }
  add("p_matrix", p_matrix);
  add("positive_stable", cls.positive_stable);
  add("shift_exceeds_spectral_radius", cls.s - cls.rho_b > 1e-7 * (1.0 + std::abs(cls.s)));
  if (cls.is_irreducible) add("inverse_positive", inv && min_entry(inv->data()) > 1e-12 * inv_scale);

  const bool reference = audit.items.front().second;
  std::string dissent;
  std::size_t agree = 0;
  for (const auto& [k, v] : audit.items) agree += v == reference ? 1 : 0;
  const bool majority = 2 * agree >= audit.items.size() ? reference : !reference;
  for (const auto& [k, v] : audit.items)
    if (v != majority) dissent += (dissent.empty() ? "" : ", ") + k;
  if (!dissent.empty()) {
    throw Error(ErrorCode::Inconsistent, "M-matrix characterizations disagree: " + dissent);
  }
  audit.value = reference;
  return audit;
}

NeumannResult neumann_inverse_check(const Matrix& a, double target, const Tolerances& tol) {
  const auto cls = classify(a, tol);
  if (cls.m_class != MClass::InvertibleM) {
    throw Error(ErrorCode::InvalidArgument, "neumann_inverse_check: requires an invertible M-matrix");
  }
  const std::size_t n = a.rows();
  const auto z = z_decompose(a, tol);
  const Matrix exact = linalg::inverse(a);
  const double en = frobenius_norm(exact);
  const Matrix q = (1.0 / z.s) * z.b;
  const double ratio = cls.rho_b / z.s;
  // Geometric tail: terms needed for ratio^m < target, with generous slack
  // for non-normal B.
  std::size_t cap = 1000;
  if (ratio > 0.0) cap += static_cast<std::size_t>(10.0 * std::ceil(std::log(target) / std::log(ratio)));
  cap = std::min<std::size_t>(cap, 2000000);
  NeumannResult res;
  Matrix term = Matrix::identity(n);
  Matrix acc = Matrix::identity(n);
  for (std::size_t m = 1; m <= cap; ++m) {
    term = term * q;
    acc += term;
    if (m % 16 == 0 || m == cap) {
      res.approximation = (1.0 / z.s) * acc;
      res.relative_error = frobenius_norm(res.approximation - exact) / en;
      res.terms = m + 1;
      if (res.relative_error <= target) return res;
    }
  }
  res.approximation = (1.0 / z.s) * acc;
  res.relative_error = frobenius_norm(res.approximation - exact) / en;
  res.terms = cap + 1;
  if (res.relative_error > target) throw Error(ErrorCode::NonConvergence, "neumann_inverse_check: term cap reached");
  return res;
}

}  // namespace rmono
