#include "rangemono/conefeas.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rangemono/linalg.hpp"
#include "rangemono/lp.hpp"
#include "rangemono/symspace.hpp"

namespace rmono {

const char* to_string(ConeStatus s) {
  switch (s) {
    case ConeStatus::TrivialCertified: return "TrivialCertified";
    case ConeStatus::NontrivialWitness: return "NontrivialWitness";
    case ConeStatus::Undecided: return "Undecided";
  }
  return "?";
}

SubspaceSpec SubspaceSpec::symmetric(std::size_t n, const Matrix& spanning, const Tolerances& tol) {
  if (spanning.rows() != sym_dim(n)) throw Error(ErrorCode::InvalidArgument, "subspace: svec length mismatch");
  return {Ambient::SymSpace, n, linalg::range_basis(spanning, tol)};
}

SubspaceSpec SubspaceSpec::symmetric(std::size_t n, const std::vector<Matrix>& spanning, const Tolerances& tol) {
  Matrix cols(sym_dim(n), spanning.size());
  for (std::size_t j = 0; j < spanning.size(); ++j) {
    if (spanning[j].rows() != n || spanning[j].cols() != n) {
      throw Error(ErrorCode::InvalidArgument, "subspace: matrix order mismatch");
    }
    cols.set_column(j, svec(SymMatrix::from_dense(spanning[j], tol)));
  }
  return symmetric(n, cols, tol);
}

SubspaceSpec SubspaceSpec::vectors(std::size_t n, const Matrix& spanning, const Tolerances& tol) {
  if (spanning.rows() != n) throw Error(ErrorCode::InvalidArgument, "subspace: vector length mismatch");
  return {Ambient::Vector, n, linalg::range_basis(spanning, tol)};
}

std::size_t SubspaceSpec::ambient_dim() const { return ambient == Ambient::SymSpace ? sym_dim(n) : n; }

namespace {

// B B^T v.
Vector project_onto(const Matrix& b, std::span<const double> v) {
  const Vector c = b.transpose() * v;
  return b * c;
}

// Slice {x in S : <t, x> = 1} with g = B^T t.
Vector project_slice(const Matrix& b, const Vector& g, double gg, std::span<const double> v) {
  Vector c = b.transpose() * v;
  const double shift = (1.0 - dot(g, c)) / gg;
  axpy(shift, g, c);
  return b * c;
}

double min_eig(const Vector& sv) { return linalg::min_eigenvalue(smat_dense(sv)); }

std::optional<Matrix> cholesky(const Matrix& a) {
  const std::size_t n = a.rows();
  Matrix l(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    double d = a(j, j);
    for (std::size_t k = 0; k < j; ++k) d -= l(j, k) * l(j, k);
    if (!(d > 0.0)) return std::nullopt;
    l(j, j) = std::sqrt(d);
    for (std::size_t i = j + 1; i < n; ++i) {
      double s = a(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
      l(i, j) = s / l(j, j);
    }
  }
  return l;
}

struct BarrierResult {
  Vector y;
  double t = 0.0;
  Matrix x;   // sum y_i M_i, unit trace
  Matrix z;   // dual matrix, unit trace
  double nu = 0.0;
};

// max t s.t. sum y_i M_i - t I > 0, g^T y = 1, by a log-det barrier method.
BarrierResult max_min_eigenvalue(const std::vector<Matrix>& mats, const Vector& g, std::size_t n) {
  const std::size_t k = mats.size();
  const double gg = dot(g, g);
  Vector y = scaled(g, 1.0 / gg);
  auto assemble = [&](const Vector& yy) {
    Matrix x(n, n);
    for (std::size_t i = 0; i < k; ++i) x += yy[i] * mats[i];
    return x;
  };
  double t = linalg::min_eigenvalue(assemble(y)) - 1.0;
  const Matrix eye = Matrix::identity(n);

  auto phi = [&](const Vector& yy, double tt, double mu, bool& ok) {
    const Matrix f = assemble(yy) - tt * eye;
    const auto l = cholesky(f);
    ok = l.has_value();
    if (!ok) return 0.0;
    double logdet = 0.0;
    for (std::size_t i = 0; i < n; ++i) logdet += 2.0 * std::log((*l)(i, i));
    return -tt / mu - logdet;
  };

  double mu = 1.0;
  Matrix finv;
  for (int outer = 0; outer < 40; ++outer) {
    for (int inner = 0; inner < 100; ++inner) {
      const Matrix f = assemble(y) - t * eye;
      finv = linalg::inverse(f);
      std::vector<Matrix> c(k + 1);
      for (std::size_t a = 0; a < k; ++a) c[a] = finv * mats[a];
      c[k] = -finv;
      Vector grad(k + 1);
      for (std::size_t a = 0; a < k; ++a) grad[a] = -trace(c[a]);
      grad[k] = -1.0 / mu - trace(c[k]);
      const std::size_t m = k + 2;
      Matrix kkt(m, m);
      for (std::size_t a = 0; a <= k; ++a) {
        for (std::size_t b = a; b <= k; ++b) {
          double s = 0.0;
          for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) s += c[a](i, j) * c[b](j, i);
          kkt(a, b) = kkt(b, a) = s;
        }
      }
      for (std::size_t a = 0; a < k; ++a) kkt(a, k + 1) = kkt(k + 1, a) = g[a];
      Vector rhs(m, 0.0);
      for (std::size_t a = 0; a <= k; ++a) rhs[a] = -grad[a];
      rhs[k + 1] = 1.0 - dot(g, y);
      Vector step;
      try {
        step = linalg::solve(kkt, rhs);
      } catch (const Error&) {
        break;
      }
      double dec2 = 0.0;
      for (std::size_t a = 0; a <= k; ++a) dec2 -= grad[a] * step[a];
      if (dec2 < 1e-11 && std::abs(rhs[k + 1]) < 1e-14) break;
      bool ok = false;
      const double f0 = phi(y, t, mu, ok);
      double s = 1.0;
      Vector ny(k);
      double nt = t;
      bool accepted = false;
      for (int ls = 0; ls < 60; ++ls) {
        for (std::size_t a = 0; a < k; ++a) ny[a] = y[a] + s * step[a];
        nt = t + s * step[k];
        const double f1 = phi(ny, nt, mu, ok);
        if (ok && f1 <= f0 - 0.25 * s * std::max(dec2, 0.0)) {
          accepted = true;
          break;
        }
        s *= 0.5;
      }
      if (!accepted) break;
      y = ny;
      t = nt;
    }
    if (mu * static_cast<double>(n) < 1e-14) break;
    mu *= 0.1;
  }

  BarrierResult r;
  r.y = y;
  r.t = t;
  r.x = assemble(y);
  const Matrix f = r.x - t * eye;
  r.z = mu * linalg::inverse(f);
  double zg = 0.0;
  for (std::size_t a = 0; a < k; ++a) zg += trace_inner(r.z, mats[a]) * g[a];
  r.nu = zg / gg;
  return r;
}

struct FacialOutcome {
  ConeStatus status = ConeStatus::Undecided;
  Matrix x;               // witness at this level (dense)
  std::optional<Vector> certificate;
  std::string method;
};

FacialOutcome facial_reduction(const Matrix& basis, std::size_t n, const Tolerances& tol, int depth) {
  FacialOutcome out;
  out.method = depth == 0 ? "barrier" : "facial-reduction";
  const std::size_t k = basis.cols();
  if (k == 0 || n == 0) return out;
  std::vector<Matrix> mats(k);
  Vector g(k);
  for (std::size_t i = 0; i < k; ++i) {
    mats[i] = smat_dense(basis.column(i));
    g[i] = trace(mats[i]);
  }
  if (norm2(g) <= 1e-13) return out;

  const BarrierResult br = max_min_eigenvalue(mats, g, n);
  if (br.t > tol.feas_tol) {
    out.status = ConeStatus::NontrivialWitness;
    out.x = br.x;
    return out;
  }

  if (depth == 0) {
    // Dual certificate P = proj_{S-perp}(Z - nu I), rescaled to trace n.
    const Vector p0 = svec(br.z - br.nu * Matrix::identity(n));
    Vector p = subtract(p0, project_onto(basis, p0));
    const double tr = trace(smat_dense(p));
    if (tr > 0.0) {
      p = scaled(p, static_cast<double>(n) / tr);
      if (min_eig(p) >= tol.feas_tol) {
        out.status = ConeStatus::TrivialCertified;
        out.certificate = p;
        return out;
      }
    }
  }
  if (br.t < -tol.feas_tol || depth >= static_cast<int>(n)) return out;

  // Boundary case: restrict to the face spanned by the large eigenvectors.
  const auto eig = linalg::sym_eigen(br.x, Tolerances{1e-9, 1e-9, 1e-7, 1e-6, 1});
  std::size_t split = 0;
  double best_ratio = 0.0;
  for (std::size_t j = 1; j < n; ++j) {
    const double small = std::max(eig.values[j - 1], 1e-300);
    if (eig.values[j - 1] > 1e-3) break;
    const double ratio = eig.values[j] / std::max(small, 1e-16);
    if (ratio > best_ratio) {
      best_ratio = ratio;
      split = j;
    }
  }
  if (split == 0 || best_ratio < 1e2) return out;
  const std::size_t r = n - split;
  Matrix u(n, r);
  for (std::size_t j = 0; j < r; ++j) u.set_column(j, eig.vectors.column(split + j));

  const Matrix perp = linalg::orthogonal_complement(basis);
  const std::size_t dr = sym_dim(r);
  Matrix lift(perp.cols(), dr);
  Vector e(dr, 0.0);
  for (std::size_t a = 0; a < dr; ++a) {
    std::fill(e.begin(), e.end(), 0.0);
    e[a] = 1.0;
    const Vector img = svec(u * smat_dense(e) * u.transpose());
    lift.set_column(a, perp.transpose() * img);
  }
  const Matrix face_basis = perp.cols() == 0 ? Matrix::identity(dr) : linalg::null_basis(lift, tol);
  if (face_basis.cols() == 0) return out;
  FacialOutcome inner = facial_reduction(face_basis, r, tol, depth + 1);
  if (inner.status == ConeStatus::NontrivialWitness) {
    out.status = ConeStatus::NontrivialWitness;
    out.method = "facial-reduction";
    out.x = u * inner.x * u.transpose();
  }
  return out;
}

}  // namespace

std::optional<Vector> find_psd_point(const SubspaceSpec& s, Rng& rng, int iterations, const Tolerances& tol) {
  if (s.ambient != Ambient::SymSpace) throw Error(ErrorCode::InvalidArgument, "find_psd_point: symmetric subspace required");
  const std::size_t n = s.n;
  const Matrix& b = s.basis;
  if (b.cols() == 0) return std::nullopt;
  const Vector g = b.transpose() * svec(Matrix::identity(n));
  const double gg = dot(g, g);
  if (gg <= 1e-26) return std::nullopt;
  // Random PSD start of random rank.
  const std::size_t rank = 1 + rng.index(n);
  const Matrix f = rng.normal_matrix(n, rank);
  Vector x = svec(f * f.transpose());
  for (int it = 0; it < iterations; ++it) {
    const Vector y = project_slice(b, g, gg, x);
    const Matrix ym = smat_dense(y);
    if (it % 5 == 4 || it + 1 == iterations) {
      if (linalg::min_eigenvalue(ym) >= -tol.feas_tol) return y;
    }
    x = svec(psd_project(ym));
  }
  return std::nullopt;
}

ConeDecision psd_intersection(const SubspaceSpec& s, const Tolerances& tol, const PsdSearchOptions& opt) {
  if (s.ambient != Ambient::SymSpace) throw Error(ErrorCode::InvalidArgument, "psd_intersection: symmetric subspace required");
  const std::size_t n = s.n;
  const std::size_t d = sym_dim(n);
  const Matrix& b = s.basis;
  ConeDecision dec;
  const Vector tvec = svec(Matrix::identity(n));

  // (i) Trace functional vanishes on S: nonzero PSD matrices have positive trace.
  const Vector g = b.transpose() * tvec;
  const double gg = dot(g, g);
  if (b.cols() == 0 || std::sqrt(gg) <= tol.eq_tol) {
    dec.status = ConeStatus::TrivialCertified;
    dec.certificate = tvec;
    dec.method = "trace-functional";
    return dec;
  }

  // (ii) Dykstra between the unit-trace slice of S and the PSD cone.
  int stalled = 0;
  for (int start = 0; start < opt.starts && stalled < 2; ++start) {
    Vector x(d, 0.0);
    if (start == 0) {
      x = scaled(tvec, 1.0 / static_cast<double>(n));
    } else {
      Rng rng(opt.seed * 1000003ULL + static_cast<std::uint64_t>(start));
      x = svec(rng.symmetric(n));
    }
    Vector q(d, 0.0);
    double gap_mark = std::numeric_limits<double>::infinity();
    for (int it = 1; it <= opt.iterations; ++it) {
      const Vector y = project_slice(b, g, gg, x);
      Vector v = y;
      axpy(1.0, q, v);
      x = svec(psd_project(smat_dense(v)));
      q = subtract(v, x);
      if (it % 10 == 0 && min_eig(y) >= -tol.feas_tol) {
        dec.status = ConeStatus::NontrivialWitness;
        dec.witness = y;
        dec.method = "dykstra";
        return dec;
      }
      if (it % 50 == 0) {
        const double gap = norm2(subtract(y, x));
        if (it >= 100 && gap > 0.9 * gap_mark) {
          ++stalled;
          break;
        }
        gap_mark = gap;
      }
    }
  }

  // (iii) Dual ascent of lambda_min over {P in S-perp : tr P = n}.
  Vector h = subtract(tvec, project_onto(b, tvec));
  const double hh = dot(h, h);
  if (hh > 1e-24) {
    Vector p = scaled(h, static_cast<double>(n) / hh);
    double best = -std::numeric_limits<double>::infinity();
    int since_best = 0;
    for (int k = 1; k <= opt.ascent_steps; ++k) {
      const auto eig = linalg::sym_eigen(smat_dense(p), Tolerances{1e-9, 1e-9, 1e-7, 1e-6, 1});
      const double lam = eig.values.front();
      if (lam > tol.feas_tol) {
        dec.status = ConeStatus::TrivialCertified;
        dec.certificate = p;
        dec.method = "dual-ascent";
        return dec;
      }
      if (lam > best + 1e-12) {
        best = lam;
        since_best = 0;
      } else if (++since_best > 500) {
        break;
      }
      const Vector v = eig.vectors.column(0);
      Matrix vv(n, n);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) vv(i, j) = v[i] * v[j];
      Vector gs = svec(vv);
      gs = subtract(gs, project_onto(b, gs));
      axpy(-dot(gs, h) / hh, h, gs);
      const double gn = norm2(gs);
      if (gn <= 1e-14) break;
      axpy(1.0 / (std::sqrt(static_cast<double>(k)) * gn), gs, p);
      if (k % 100 == 0) {
        p = subtract(p, project_onto(b, p));
        axpy((static_cast<double>(n) - dot(p, tvec)) / hh, h, p);
      }
    }
  }

  // (iv) Barrier method, with facial reduction on boundary cases.
  FacialOutcome fr = facial_reduction(b, n, tol, 0);
  if (fr.status == ConeStatus::NontrivialWitness) {
    Vector w = project_onto(b, svec(fr.x));
    const double tr = dot(w, tvec);
    if (tr > 0.0) {
      w = scaled(w, 1.0 / tr);
      if (min_eig(w) >= -tol.feas_tol) {
        dec.status = ConeStatus::NontrivialWitness;
        dec.witness = w;
        dec.method = fr.method;
        return dec;
      }
    }
  } else if (fr.status == ConeStatus::TrivialCertified) {
    dec.status = ConeStatus::TrivialCertified;
    dec.certificate = fr.certificate;
    dec.method = fr.method;
    return dec;
  }
  dec.status = ConeStatus::Undecided;
  dec.method = "budget-exhausted";
  return dec;
}

ConeDecision orthant_intersection(const SubspaceSpec& s, const Tolerances& tol) {
  if (s.ambient != Ambient::Vector) throw Error(ErrorCode::InvalidArgument, "orthant_intersection: vector subspace required");
  const std::size_t n = s.n;
  const Matrix& b = s.basis;
  ConeDecision dec;
  dec.method = "stiemke-lp";
  if (b.cols() == 0) {
    dec.status = ConeStatus::TrivialCertified;
    dec.certificate = Vector(n, 1.0);
    return dec;
  }
  const Matrix perp = linalg::orthogonal_complement(b, tol);

  // Primal: max sum y, y in S, 0 <= y <= 1.
  lp::LinearProgram p1;
  p1.objective.assign(n, 1.0);
  p1.maximize = true;
  p1.upper.assign(n, 1.0);
  for (std::size_t c = 0; c < perp.cols(); ++c) p1.constraints.push_back({perp.column(c), lp::Relation::Equal, 0.0});
  const auto r1 = lp::lp_solve(p1, tol);
  bool primal = false;
  if (r1.status == lp::LpStatus::Optimal && r1.objective > tol.feas_tol) {
    Vector w = project_onto(b, r1.x);
    const double sw = sum(w);
    if (sw > 0.0) {
      w = scaled(w, 1.0 / sw);
      for (double& v : w)
        if (std::abs(v) < 1e-14) v = 0.0;
      if (min_entry(w) >= -tol.feas_tol) {
        primal = true;
        dec.witness = w;
      }
    }
  }

  // Dual: z in S-perp with z >= 1.
  lp::LinearProgram p2;
  p2.objective.assign(n, 1.0);
  p2.lower.assign(n, 1.0);
  p2.upper.assign(n, lp::kInf);
  for (std::size_t c = 0; c < b.cols(); ++c) p2.constraints.push_back({b.column(c), lp::Relation::Equal, 0.0});
  const auto r2 = lp::lp_solve(p2, tol);
  bool dual = false;
  if (r2.status == lp::LpStatus::Optimal) {
    Vector z = subtract(r2.x, project_onto(b, r2.x));
    const double zmin = min_entry(z);
    if (zmin > 0.0) {
      z = scaled(z, 1.0 / zmin);
      dual = true;
      dec.certificate = z;
    }
  }
  if (primal == dual) {
    throw Error(ErrorCode::Inconsistent, primal ? "orthant_intersection: witness and certificate both found"
                                                : "orthant_intersection: neither witness nor certificate found");
  }
  dec.status = primal ? ConeStatus::NontrivialWitness : ConeStatus::TrivialCertified;
  if (primal) {
    dec.certificate.reset();
  } else {
    dec.witness.reset();
  }
  return dec;
}

std::string verify_decision(const SubspaceSpec& s, const ConeDecision& d, const Tolerances& tol) {
  if (d.witness && d.certificate) return "both witness and certificate present";
  const bool sym = s.ambient == Ambient::SymSpace;
  auto cone_min = [&](const Vector& v) { return sym ? min_eig(v) : min_entry(v); };
  auto total = [&](const Vector& v) { return sym ? trace(smat_dense(v)) : sum(v); };
  if (d.status == ConeStatus::NontrivialWitness) {
    if (!d.witness) return "witness missing";
    const Vector& w = *d.witness;
    if (w.size() != s.ambient_dim()) return "witness has wrong length";
    if (norm2(subtract(w, project_onto(s.basis, w))) > tol.feas_tol) return "witness not in subspace";
    if (cone_min(w) < -tol.feas_tol) return "witness not in cone";
    if (std::abs(total(w) - 1.0) > tol.feas_tol) return "witness not normalized";
  } else if (d.status == ConeStatus::TrivialCertified) {
    if (!d.certificate) return "certificate missing";
    const Vector& c = *d.certificate;
    if (c.size() != s.ambient_dim()) return "certificate has wrong length";
    if (norm2(s.basis.transpose() * c) > tol.feas_tol * std::max(1.0, norm2(c))) return "certificate not orthogonal";
    if (cone_min(c) < tol.feas_tol) return "certificate not strictly inside cone";
  }
  return {};
}

}  // namespace rmono
