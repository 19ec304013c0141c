#include "rangemono/monotonicity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rangemono/groupinv.hpp"
#include "rangemono/linalg.hpp"
#include "rangemono/matclass.hpp"
#include "rangemono/symspace.hpp"

namespace rmono {

const char* to_string(Tri t) {
  switch (t) {
    case Tri::Yes: return "yes";
    case Tri::No: return "no";
    case Tri::Undecided: return "undecided";
  }
  return "?";
}

namespace {

void normalize(Vector& v) {
  const double nv = norm2(v);
  if (nv > 0.0)
    for (double& x : v) x /= nv;
}

// First coordinate that is not negligible becomes positive.
void fix_sign(Vector& v) {
  const double cut = 1e-12 * std::max(norm2(v), 1e-300);
  for (double x : v) {
    if (std::abs(x) > cut) {
      if (x < 0.0)
        for (double& y : v) y = -y;
      return;
    }
  }
}

Matrix as_column(const Vector& v) { return Matrix(v.size(), 1, v); }

// Column w of `null2` with the largest image under `t`, mapped through t.
Vector index_defect_vector(const Matrix& t, const Matrix& null2) {
  Vector best;
  double best_norm = -1.0;
  for (std::size_t j = 0; j < null2.cols(); ++j) {
    Vector img = t * null2.column(j);
    const double nv = norm2(img);
    if (nv > best_norm) {
      best_norm = nv;
      best = std::move(img);
    }
  }
  return best;
}

// X = T(W) with T^2 W = v.
Vector pull_back(const Matrix& t, const Matrix& t2, const Vector& v, const Tolerances& tol) {
  const Vector w = linalg::solve_min_norm(t2, v, tol);
  return t * w;
}

bool near(const Matrix& x, const Matrix& y, const Tolerances& tol) {
  return frobenius_norm(x - y) <= tol.eq_tol * std::max(frobenius_norm(y), 1.0);
}

// A range refutation must clear the cone residual of T(X) by a wide margin.
bool clearly_indefinite(double lam_x, double lam_tx, const Tolerances& tol) {
  return lam_x <= -std::max({tol.feas_tol, 1e-6, 1e3 * std::max(0.0, -lam_tx)});
}

void merge_fast_path(MonotonicityVerdict& v, const FastPath& fp) {
  if (fp.trivial == Tri::Yes) {
    if (v.trivial == Tri::No)
      throw Error(ErrorCode::Inconsistent,
                  "structural guarantee '" + fp.name + "' contradicts a trivial range monotonicity witness");
    v.trivial = Tri::Yes;
  }
  if (fp.range == Tri::Yes) {
    if (v.range == Tri::No)
      throw Error(ErrorCode::Inconsistent,
                  "structural guarantee '" + fp.name + "' contradicts a range monotonicity witness");
    v.range = Tri::Yes;
  }
  v.fast_path = fp.name;
}

}  // namespace

std::optional<FastPath> fast_path(const Matrix& a, OperatorKind kind, const Tolerances& tol) {
  require_square(a, "fast_path");
  if (kind == OperatorKind::General) return std::nullopt;
  const std::size_t n = a.rows();
  const double an = frobenius_norm(a);
  if (an <= tol.eq_tol) return std::nullopt;
  const Matrix id = Matrix::identity(n);
  const Matrix a2 = a * a;
  const double scale = std::max(an * an, 1.0);
  const bool lyap = kind == OperatorKind::Lyapunov;

  if (frobenius_norm(a2 + id) <= tol.eq_tol * scale) return FastPath{Tri::Yes, Tri::Yes, "A^2=-I"};
  if (!lyap && frobenius_norm(a2 - id) <= tol.eq_tol * scale) return FastPath{Tri::Yes, Tri::Yes, "A^2=I"};
  if (lyap && frobenius_norm(a + a.transpose()) <= tol.eq_tol * std::max(an, 1.0))
    return FastPath{Tri::Yes, Tri::Yes, "skew"};
  if (lyap && l_idempotent_expected(a, tol)) return FastPath{Tri::Undecided, Tri::Yes, "L-idempotent"};
  if (!lyap && s_idempotent_expected(a, tol)) return FastPath{Tri::Undecided, Tri::Yes, "S-idempotent"};
  return std::nullopt;
}

MonotonicityVerdict decide_trivial_matrix(const Matrix& a, const Tolerances& tol, bool use_fast_path) {
  require_square(a, "decide_trivial_matrix");
  const std::size_t n = a.rows();
  MonotonicityVerdict v;
  const Matrix a2 = a * a;
  const std::size_t r1 = linalg::rank(a, tol);
  const std::size_t r2 = linalg::rank(a2, tol);

  if (r1 == 0) {
    v.trivial = Tri::Yes;
    v.method = "zero-range";
    v.certificate = Vector(n, 1.0);
  } else if (r2 < r1) {
    v.index_defect = true;
    v.method = "index-defect";
    Vector x = index_defect_vector(a, linalg::null_basis(a2, tol));
    normalize(x);
    fix_sign(x);
    v.trivial = Tri::No;
    v.witness = as_column(x);
    // A x = 0, so either sign qualifies; expose a negative entry.
    Vector neg = min_entry(x) < -tol.feas_tol ? x : scaled(x, -1.0);
    v.range = Tri::No;
    v.range_witness = as_column(neg);
  } else {
    const auto spec = SubspaceSpec::vectors(n, a2, tol);
    const ConeDecision dec = orthant_intersection(spec, tol);
    v.method = dec.method;
    if (dec.status == ConeStatus::TrivialCertified) {
      v.trivial = Tri::Yes;
      v.certificate = dec.certificate;
    } else if (dec.status == ConeStatus::NontrivialWitness) {
      Vector x = pull_back(a, a2, *dec.witness, tol);
      normalize(x);
      v.trivial = Tri::No;
      v.witness = as_column(x);
      if (min_entry(x) < -tol.feas_tol) {
        v.range = Tri::No;
        v.range_witness = v.witness;
      }
    }
  }
  if (v.trivial == Tri::Yes) v.range = Tri::Yes;

  if (use_fast_path) {
    const ClassReport cls = classify(a, tol);
    if (cls.m_class == MClass::SingularM && cls.is_irreducible)
      merge_fast_path(v, FastPath{Tri::Yes, Tri::Yes, "singular-irreducible-M"});
  }
  return v;
}

MonotonicityVerdict decide_trivial_operator(const OperatorMatrix& op, const Tolerances& tol,
                                            const DecideOptions& opt) {
  const Matrix& t = op.entries;
  const std::size_t n = op.order;
  MonotonicityVerdict v;
  const Matrix t2 = t * t;
  const std::size_t r1 = linalg::rank(t, tol);
  const std::size_t r2 = linalg::rank(t2, tol);

  if (r1 == 0) {
    v.trivial = Tri::Yes;
    v.method = "zero-range";
    v.certificate = svec(Matrix::identity(n));
  } else if (r2 < r1) {
    v.index_defect = true;
    v.method = "index-defect";
    Vector x = index_defect_vector(t, linalg::null_basis(t2, tol));
    normalize(x);
    fix_sign(x);
    v.trivial = Tri::No;
    v.witness = smat_dense(x);
    // T(X) = 0: pick the sign that exposes a negative eigenvalue.
    const Matrix neg = -*v.witness;
    v.range = Tri::No;
    v.range_witness =
        linalg::min_eigenvalue(*v.witness) <= linalg::min_eigenvalue(neg) ? *v.witness : neg;
  } else {
    const auto spec = SubspaceSpec::symmetric(n, t2, tol);
    const ConeDecision dec = psd_intersection(spec, tol, opt.search);
    v.method = dec.method;
    if (dec.status == ConeStatus::TrivialCertified) {
      v.trivial = Tri::Yes;
      v.certificate = dec.certificate;
    } else if (dec.status == ConeStatus::NontrivialWitness) {
      Vector x = pull_back(t, t2, *dec.witness, tol);
      normalize(x);
      v.trivial = Tri::No;
      v.witness = smat_dense(x);
      const double lam_tx = linalg::min_eigenvalue(smat_dense(t * x));
      if (clearly_indefinite(linalg::min_eigenvalue(*v.witness), lam_tx, tol)) {
        v.range = Tri::No;
        v.range_witness = v.witness;
      }
    }
  }
  if (v.trivial == Tri::Yes) v.range = Tri::Yes;

  if (opt.use_fast_path && op.base && op.kind != OperatorKind::General) {
    if (auto fp = fast_path(*op.base, op.kind, tol)) merge_fast_path(v, *fp);
  }
  return v;
}

MonotonicityVerdict decide_range_operator(const OperatorMatrix& op, const Tolerances& tol,
                                          const DecideOptions& opt) {
  MonotonicityVerdict v = decide_trivial_operator(op, tol, opt);
  if (v.range != Tri::Undecided) return v;
  if (is_idempotent(op, tol)) {
    v.range = Tri::Yes;
    if (!v.fast_path) v.fast_path = "idempotent";
    return v;
  }
  if (v.index_defect) return v;

  const Matrix& t = op.entries;
  const Matrix t2 = t * t;
  const auto spec = SubspaceSpec::symmetric(op.order, t2, tol);
  for (int s = 0; s < opt.budget; ++s) {
    Rng rng(opt.search.seed * 7919u + 17u + static_cast<std::uint64_t>(s));
    const auto p = find_psd_point(spec, rng, 200, tol);
    if (!p) continue;
    Vector x = pull_back(t, t2, *p, tol);
    if (norm2(x) <= tol.eq_tol) continue;
    normalize(x);
    const Matrix xm = smat_dense(x);
    const double lam_tx = linalg::min_eigenvalue(smat_dense(t * x));
    if (lam_tx < -tol.feas_tol) continue;
    if (clearly_indefinite(linalg::min_eigenvalue(xm), lam_tx, tol)) {
      v.range = Tri::No;
      v.range_witness = xm;
      break;
    }
  }
  return v;
}

std::string verify_witness(const OperatorMatrix& op, const Matrix& x, bool range, const Tolerances& tol) {
  if (x.rows() != op.order || x.cols() != op.order) return "witness has the wrong order";
  if (asymmetry(x) > tol.feas_tol) return "witness is not symmetric";
  const Vector xv = svec(x);
  if (std::abs(norm2(xv) - 1.0) > tol.feas_tol) return "witness is not unit norm";
  const Matrix range_b = linalg::range_basis(op.entries, tol);
  const Vector coef = range_b.transpose() * xv;
  const Vector proj = range_b * coef;
  if (norm2(subtract(xv, proj)) > tol.feas_tol) return "witness is not in the range";
  const Matrix tx = apply(op, x);
  if (linalg::min_eigenvalue(tx) < -tol.feas_tol) return "image of the witness is not PSD";
  if (range && linalg::min_eigenvalue(x) > -tol.feas_tol) return "range witness has no negative eigenvalue";
  return {};
}

InverseClassReport inverse_class_check(const Matrix& a, const Tolerances& tol) {
  require_square(a, "inverse_class_check");
  const std::size_t n = a.rows();
  const Matrix id = Matrix::identity(n);
  const Matrix a2 = a * a;
  const double an = frobenius_norm(a);
  const double scale = std::max(an * an, 1.0);
  InverseClassReport r;
  DecideOptions opt;
  opt.use_fast_path = false;

  if (frobenius_norm(a2 + id) <= tol.eq_tol * scale) {
    r.relation = "A^2=-I";
    r.inverse = -a;
  } else if (frobenius_norm(a2 - id) <= tol.eq_tol * scale) {
    r.relation = "A^2=I";
    r.inverse = a;
  } else if (frobenius_norm(a + a.transpose()) <= tol.eq_tol * std::max(an, 1.0)) {
    r.relation = "skew";
    const auto gi = group_inverse(a, tol);
    if (!gi.exists) throw Error(ErrorCode::Inconsistent, "skew-symmetric matrix without group inverse");
    r.inverse = *gi.inverse;
  } else {
    throw Error(ErrorCode::InvalidArgument, "inverse_class_check: A is not involutory, anti-involutory or skew");
  }
  if (!near(r.inverse * a * r.inverse, r.inverse, tol))
    throw Error(ErrorCode::Inconsistent, "inverse_class_check: inverse fails X A X = X");

  if (r.relation != "A^2=I") r.lyapunov = decide_trivial_operator(lyapunov(r.inverse), tol, opt).trivial;
  if (r.relation != "skew") r.stein = decide_trivial_operator(stein(r.inverse), tol, opt).trivial;
  r.holds = (!r.lyapunov || *r.lyapunov == Tri::Yes) && (!r.stein || *r.stein == Tri::Yes);
  return r;
}

}  // namespace rmono
