// Acceptance run: one line per criterion, nonzero exit if any fails.
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>

#include "rangemono/catalog.hpp"
#include "rangemono/conefeas.hpp"
#include "rangemono/groupinv.hpp"
#include "rangemono/matclass.hpp"
#include "rangemono/monotonicity.hpp"
#include "rangemono/operators.hpp"
#include "rangemono/report.hpp"
#include "support.hpp"

using namespace rmono;

namespace {

struct Outcome {
  bool passed = true;
  std::string detail;
};

class Failures {
 public:
  void expect(bool ok, const std::string& what) {
    if (ok) return;
    if (count_++ < 5) notes_ << (count_ > 1 ? "; " : "") << what;
  }
  int count() const { return count_; }
  Outcome outcome(const std::string& summary) const {
    return {count_ == 0, count_ == 0 ? summary : summary + "; " + std::to_string(count_) + " failures: " + notes_.str()};
  }

 private:
  int count_ = 0;
  std::ostringstream notes_;
};

double fro(const Matrix& m) { return frobenius_norm(m); }

Matrix block_rotations(std::size_t n) {
  Matrix a(n, n);
  for (std::size_t i = 0; i + 1 < n; i += 2) {
    a(i, i + 1) = 1.0;
    a(i + 1, i) = -1.0;
  }
  return a;
}

// I + 0.5 N keeps the conjugations well conditioned.
Matrix random_conjugator(Rng& rng, std::size_t n) {
  while (true) {
    const Matrix p = Matrix::identity(n) + 0.5 * rng.normal_matrix(n, n);
    if (auto inv = rmtest::gauss_inverse(p)) {
      if (fro(*inv) < 50.0) return p;
    }
  }
}

Matrix conjugate(const Matrix& p, const Matrix& d) { return p * d * *rmtest::gauss_inverse(p); }

double spectral_radius(const Matrix& m) {
  double r = 0.0;
  for (const auto& z : rmtest::durand_kerner(rmtest::char_poly(m))) r = std::max(r, std::abs(z));
  return r;
}

double min_real_part(const Matrix& m) {
  double r = std::numeric_limits<double>::infinity();
  for (const auto& z : rmtest::durand_kerner(rmtest::char_poly(m))) r = std::min(r, z.real());
  return r;
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

// ---------------------------------------------------------------- criteria

Outcome operator_identities() {
  Failures f;
  Rng rng(rmtest::kSeed);
  double worst = 0.0;
  auto check_l = [&](const Matrix& a, double alpha, const std::string& tag) {
    const auto l = lyapunov(a);
    const double r = fro(power(l, 3).entries - alpha * l.entries) / fro(l.entries);
    worst = std::max(worst, r);
    f.expect(r <= 1e-8, tag + " L^3 residual " + fmt("%.3g", r));
  };
  auto check_s = [&](const Matrix& a, const std::string& tag) {
    const auto s = stein(a);
    const double r = fro(power(s, 2).entries - 2.0 * s.entries) / fro(s.entries);
    worst = std::max(worst, r);
    f.expect(r <= 1e-8, tag + " S^2 residual " + fmt("%.3g", r));
  };
  check_l(rmtest::rot(), -4.0, "rot");
  check_s(rmtest::rot(), "rot");
  int instances = 1;
  for (int t = 0; t < 20; ++t, ++instances) {
    const std::size_t n = t % 2 ? 4 : 2;
    const Matrix a = conjugate(random_conjugator(rng, n), block_rotations(n));
    f.expect(fro(a * a + Matrix::identity(n)) <= 1e-10 * (1 + fro(a) * fro(a)), "construction A^2=-I");
    check_l(a, -4.0, "A^2=-I #" + std::to_string(t));
    check_s(a, "A^2=-I #" + std::to_string(t));
  }
  for (int t = 0; t < 20; ++t, ++instances) {
    const std::size_t n = 2 + rng.index(3);
    Vector d(n);
    for (std::size_t i = 0; i < n; ++i) d[i] = i == 0 ? 1.0 : (i == 1 ? -1.0 : (rng.uniform() < 0.5 ? 1.0 : -1.0));
    const Matrix a = conjugate(random_conjugator(rng, n), Matrix::diagonal(d));
    check_l(a, 4.0, "A^2=I #" + std::to_string(t));
  }
  check_l(rmtest::flip(), 4.0, "flip");
  return f.outcome(std::to_string(instances + 1) + " instances, worst relative residual " + fmt("%.2e", worst));
}

Outcome table_reproduction() {
  Failures f;
  const auto t = reproduce_table();
  f.expect(t.passed, "table flagged as failed");
  f.expect(t.rows.size() == 4, "expected 4 rows");
  if (t.rows.size() == 4) {
    const char* classes[] = {"A^2=-I", "A^2=I", "A^T=-A", "A^T=A"};
    const char* lyap[] = {"Yes", "No", "Yes", "No"};
    const char* stein_[] = {"Yes", "Yes", "Yes (n=2)", "No"};
    for (std::size_t i = 0; i < 4; ++i) {
      const auto& row = t.rows[i];
      f.expect(row.matrix_class == classes[i], "row " + std::to_string(i) + " class " + row.matrix_class);
      f.expect(row.lyapunov.computed.rfind(lyap[i], 0) == 0, row.matrix_class + " lyapunov " + row.lyapunov.computed);
      f.expect(row.stein.computed.rfind(stein_[i], 0) == 0, row.matrix_class + " stein " + row.stein.computed);
      f.expect(row.lyapunov.passed && row.stein.passed, row.matrix_class + " cell failed");
      for (const auto& c : row.checks) f.expect(c.passed, row.matrix_class + ": " + c.name);
      // Each No cites a catalog entry whose witness re-verifies.
      for (const auto* cell : {&row.lyapunov, &row.stein}) {
        if (cell->computed.find("No") == std::string::npos) continue;
        f.expect(!cell->basis.empty(), row.matrix_class + " No without a cited entry");
        for (const auto& id : cell->basis) f.expect(run_entry(id).passed, "cited entry " + id);
      }
    }
    f.expect(t.rows[2].stein.computed.find("No (n>=3)") != std::string::npos, "skew Stein lacks the n>=3 No");
  }
  return f.outcome("4 rows: (Yes,Yes) (No,Yes) (Yes,Yes n=2/No n>=3) (No,No)");
}

Outcome catalog_all() {
  Failures f;
  std::set<std::string> seen;
  int relations = 0;
  for (const auto& rep : run_all()) {
    seen.insert(rep.id);
    f.expect(rep.passed, rep.id);
    for (const auto& c : rep.checks) {
      ++relations;
      f.expect(c.passed, rep.id + ": " + c.name + " " + c.detail);
    }
  }
  for (const char* id : {"ex31", "remstein", "illus_st(a)", "illus_st(b)", "illus_lyst", "invlyo", "tilde-extension+",
                         "tilde-extension-", "skewssteinorder2", "skewsstein1", "skewsstein2", "skewsstein3-n5",
                         "skewsstein3-n6", "symstein"})
    f.expect(seen.count(id) == 1, std::string("missing entry ") + id);
  return f.outcome(std::to_string(seen.size()) + " entries, " + std::to_string(relations) + " checks");
}

Outcome singular_irreducible() {
  Failures f;
  Rng rng(rmtest::kSeed + 4);
  int count = 0;
  auto audit = [&](const Matrix& a, const std::string& tag) {
    ++count;
    const std::size_t n = a.rows();
    SimReport r;
    try {
      r = verify_sim(a);
    } catch (const Error& e) {
      f.expect(false, tag + " threw " + e.what());
      return;
    }
    f.expect(r.all(), tag + " not all-true");
    f.expect(r.rank == n - 1, tag + " rank");
    f.expect(r.perron.size() == n && min_entry(r.perron) > 1e-9, tag + " Perron positivity");
    f.expect(norm2(a * r.perron) <= 1e-7, tag + " |Ax|");
    f.expect(r.axiom_residual <= 1e-8, tag + " axioms " + fmt("%.2e", r.axiom_residual));
    f.expect(r.almost_monotone_decision.status == ConeStatus::TrivialCertified, tag + " almost monotone uncertified");
  };
  for (int t = 0; t < 50; ++t) {
    const std::size_t n = 1 + rng.index(6);
    const Matrix b = rng.uniform_matrix(n, n, 0.05, 1.0);
    audit(spectral_radius(b) * Matrix::identity(n) - b, "rho(B)I-B #" + std::to_string(t));
  }
  for (int t = 0; t < 20; ++t) {
    const std::size_t n = 2 + rng.index(5);
    audit(Matrix::identity(n) - rmtest::random_stochastic(rng, n).transpose(), "I-T^T #" + std::to_string(t));
  }
  return f.outcome(std::to_string(count) + " instances all-true");
}

Outcome idempotency() {
  Failures f;
  Rng rng(rmtest::kSeed + 5);
  int count = 0;
  auto compare = [&](const Matrix& a, const std::string& tag) {
    ++count;
    f.expect(is_idempotent(lyapunov(a)) == l_idempotent_expected(a), tag + " L disagreement");
    f.expect(is_idempotent(stein(a)) == s_idempotent_expected(a), tag + " S disagreement");
  };
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 1 + rng.index(4);
    compare(rng.uniform_matrix(n, n, -2, 2), "random #" + std::to_string(t));
  }
  for (std::size_t n = 1; n <= 4; ++n)
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
      Vector d(n);
      for (std::size_t i = 0; i < n; ++i) d[i] = (mask >> i) & 1u ? 0.5 : 0.0;
      compare(Matrix::diagonal(d), "diag mask " + std::to_string(mask));
    }
  int s_idem = 0;
  for (int t = 0; t < 50; ++t) {
    const std::size_t n = 1 + rng.index(4);
    Vector d(n);
    for (std::size_t i = 0; i < n; ++i) d[i] = rng.uniform() < 0.5 ? 1.0 : 0.0;
    Matrix a = conjugate(random_conjugator(rng, n), Matrix::diagonal(d));
    if (t % 2) a = -1.0 * a;
    compare(a, "A^2=+-A #" + std::to_string(t));
    f.expect(is_idempotent(stein(a)), "constructed S_A not idempotent");
    s_idem += s_idempotent_expected(a);
  }
  return f.outcome(std::to_string(count) + " matrices, 0 disagreements; " + std::to_string(s_idem) +
                   " constructed S-idempotent");
}

Outcome group_inverse_audit() {
  Failures f;
  Rng rng(rmtest::kSeed + 6);
  int exists = 0, missing = 0;
  auto audit = [&](const Matrix& m, const std::string& tag) {
    const auto a = group_inverse_exists_audit(m);
    const bool all = a.all();
    const bool none = !a.axioms_solvable && !a.complementary && !a.range_stable && !a.null_stable;
    f.expect(all || none, tag + " conditions disagree");
    (all ? exists : missing)++;
    return all;
  };
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 2 + rng.index(2);
    const std::size_t d = sym_dim(n);
    Matrix m;
    switch (t % 5) {
      case 0: m = lyapunov(rng.normal_matrix(n, n)).entries; break;
      case 1: m = stein(rng.normal_matrix(n, n)).entries; break;
      case 2: m = rmtest::random_index_one(rng, d, 1 + rng.index(d)).m; break;
      case 3: {
        // Strictly upper triangular: nilpotent, index above one.
        Matrix u(d, d);
        for (std::size_t i = 0; i < d; ++i)
          for (std::size_t j = i + 1; j < d; ++j) u(i, j) = rng.normal();
        const Matrix p = random_conjugator(rng, d);
        m = conjugate(p, u);
        break;
      }
      default: m = rng.normal_matrix(d, 2) * rng.normal_matrix(2, d); break;
    }
    audit(m, "random #" + std::to_string(t));
  }
  for (const auto& e : catalog_entries()) {
    if (e.kind == "lyapunov") audit(lyapunov(e.a).entries, e.id);
    if (e.kind == "stein") audit(stein(e.a).entries, e.id);
    if (e.kind == "matrix") audit(e.a, e.id);
  }
  for (int t = 0; t < 20; ++t) {
    const std::size_t n = 2 + rng.index(3);
    Matrix nil(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) nil(i, j) = rng.normal();
    f.expect(!group_inverse(lyapunov(nil).entries).exists, "lyapunov(nilpotent) reported existence");
    f.expect(!audit(lyapunov(nil).entries, "nilpotent"), "nilpotent audit");
    const Matrix s = rng.symmetric(n);
    const Matrix k = rng.normal_matrix(n, n) - rng.normal_matrix(n, n).transpose();
    const Matrix kk = k - k.transpose();
    for (const auto& a : {s, kk}) {
      f.expect(group_inverse(lyapunov(a).entries).exists && audit(lyapunov(a).entries, "L sym/skew"),
               "L_A group inverse missing for symmetric/skew A");
      f.expect(group_inverse(stein(a).entries).exists && audit(stein(a).entries, "S sym/skew"),
               "S_A group inverse missing for symmetric/skew A");
    }
  }
  return f.outcome(std::to_string(exists + missing) + " audits (" + std::to_string(exists) + " exist, " +
                   std::to_string(missing) + " do not), all consistent");
}

Outcome stability_solve() {
  Failures f;
  Rng rng(rmtest::kSeed + 7);
  double worst_res = 0.0, worst_eig = std::numeric_limits<double>::infinity();
  for (int t = 0; t < 100; ++t) {
    const bool lyap = t < 50;
    const std::size_t n = 1 + rng.index(5);
    const Matrix m = rng.normal_matrix(n, n);
    Matrix a;
    if (lyap) {
      a = m + (std::max(0.0, -min_real_part(m)) + 0.1 + rng.uniform()) * Matrix::identity(n);
    } else {
      a = (1.0 / (spectral_radius(m) * (1.05 + 0.5 * rng.uniform()))) * m;
    }
    const Matrix r = rng.normal_matrix(n, n);
    const Matrix q = r * r.transpose() + 0.1 * Matrix::identity(n);
    const std::string tag = std::string(lyap ? "lyapunov" : "stein") + " #" + std::to_string(t);
    try {
      const auto op = lyap ? lyapunov(a) : stein(a);
      const auto s = solve(op, q);
      const Matrix img = lyap ? a * s.x + s.x * a.transpose() : s.x - a * s.x * a.transpose();
      const double res = fro(img - q) / fro(q);
      const double lmin = rmtest::min_eig_any(0.5 * (s.x + s.x.transpose()));
      worst_res = std::max(worst_res, res);
      worst_eig = std::min(worst_eig, lmin);
      f.expect(res <= 1e-8, tag + " residual " + fmt("%.2e", res));
      f.expect(lmin > 0.0, tag + " lambda_min " + fmt("%.2e", lmin));
      f.expect(s.stable_base && s.x_positive_definite.value_or(false), tag + " flags");
    } catch (const Error& e) {
      f.expect(false, tag + " threw " + e.what());
    }
  }
  return f.outcome("100 solves, worst relative residual " + fmt("%.2e", worst_res) + ", smallest lambda_min " +
                   fmt("%.2e", worst_eig));
}

// Subspace of R^n spanned by the columns of g; does it hold a nonzero
// nonnegative vector? Checks every zero pattern for a one-dimensional
// solution set, i.e. every candidate extreme ray.
bool orthant_support_oracle(const Matrix& g) {
  const std::size_t n = g.rows(), k = g.cols();
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    std::vector<Vector> rows;
    for (std::size_t i = 0; i < n; ++i)
      if ((mask >> i) & 1u) rows.push_back(g.row(i));
    // Null space of the selected rows by Gauss-Jordan with full pivoting.
    Matrix m(rows.size(), k);
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (std::size_t j = 0; j < k; ++j) m(i, j) = rows[i][j];
    std::vector<int> pivot_col;
    std::size_t r = 0;
    std::vector<bool> is_pivot(k, false);
    for (std::size_t c = 0; c < k && r < m.rows(); ++c) {
      std::size_t best = r;
      for (std::size_t i = r; i < m.rows(); ++i)
        if (std::abs(m(i, c)) > std::abs(m(best, c))) best = i;
      if (std::abs(m(best, c)) < 1e-10) continue;
      for (std::size_t j = 0; j < k; ++j) std::swap(m(r, j), m(best, j));
      const double pv = m(r, c);
      for (std::size_t j = 0; j < k; ++j) m(r, j) /= pv;
      for (std::size_t i = 0; i < m.rows(); ++i)
        if (i != r && m(i, c) != 0.0) {
          const double fct = m(i, c);
          for (std::size_t j = 0; j < k; ++j) m(i, j) -= fct * m(r, j);
        }
      pivot_col.push_back(static_cast<int>(c));
      is_pivot[c] = true;
      ++r;
    }
    if (k - r != 1) continue;
    std::size_t free_col = 0;
    while (is_pivot[free_col]) ++free_col;
    Vector c(k, 0.0);
    c[free_col] = 1.0;
    for (std::size_t i = 0; i < r; ++i) c[pivot_col[i]] = -m(i, free_col);
    Vector x = g * c;
    const double nx = norm2(x);
    if (nx < 1e-12) continue;
    for (double& v : x) v /= nx;
    if (min_entry(x) >= -1e-9 || *std::max_element(x.begin(), x.end()) <= 1e-9) return true;
  }
  return false;
}

Outcome cone_oracle() {
  Failures f;
  Rng rng(rmtest::kSeed + 8);
  int decided = 0, undecided = 0, unknown = 0, nontrivial = 0;
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 2 + rng.index(2);
    const std::size_t k = 1 + rng.index(2);
    std::vector<Matrix> gens;
    for (std::size_t i = 0; i < k; ++i) gens.push_back(rng.symmetric(n));
    if (t % 4 == 0) gens[0] = rng.positive_definite(n) - 0.3 * rng.uniform() * Matrix::identity(n);
    const auto spec = SubspaceSpec::symmetric(n, gens);
    std::vector<Matrix> ortho;
    for (std::size_t c = 0; c < spec.dim(); ++c) ortho.push_back(smat_dense(spec.basis.column(c)));
    const auto oracle = rmtest::psd_sweep_oracle(ortho);
    PsdSearchOptions opt;
    opt.seed = 1000 + t;
    const auto d = psd_intersection(spec, {}, opt);
    if (oracle == rmtest::Oracle::Unknown) ++unknown;
    if (d.status == ConeStatus::Undecided) {
      ++undecided;
      continue;
    }
    ++decided;
    nontrivial += d.status == ConeStatus::NontrivialWitness;
    f.expect(verify_decision(spec, d).empty(), "PSD #" + std::to_string(t) + " unverified");
    if (oracle == rmtest::Oracle::Trivial)
      f.expect(d.status == ConeStatus::TrivialCertified, "PSD #" + std::to_string(t) + " contradiction");
    if (oracle == rmtest::Oracle::Nontrivial)
      f.expect(d.status == ConeStatus::NontrivialWitness, "PSD #" + std::to_string(t) + " contradiction");
  }
  f.expect(undecided <= 10, "Undecided rate " + std::to_string(undecided) + "/200");
  int mismatches = 0;
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = 2 + rng.index(7);
    const std::size_t k = 1 + rng.index(n - 1);
    Matrix g = rng.normal_matrix(n, k);
    if (t % 3 == 0)
      for (std::size_t i = 0; i < n; ++i) g(i, 0) = std::abs(g(i, 0));
    const auto s = SubspaceSpec::vectors(n, g);
    const auto d = orthant_intersection(s);
    const bool meets = orthant_support_oracle(g);
    const bool ok = d.status != ConeStatus::Undecided && meets == (d.status == ConeStatus::NontrivialWitness) &&
                    verify_decision(s, d).empty();
    mismatches += !ok;
    f.expect(ok, "orthant #" + std::to_string(t));
  }
  return f.outcome("PSD " + std::to_string(decided) + " decided (" + std::to_string(nontrivial) + " nontrivial), " + std::to_string(undecided) + " undecided (" +
                   std::to_string(unknown) + " oracle-unknown); orthant 100 subspaces, " +
                   std::to_string(mismatches) + " mismatches");
}

Outcome reduction_validity() {
  Failures f;
  Rng rng(rmtest::kSeed + 9);
  int yes = 0, no = 0, undecided = 0, total = 0;
  auto check = [&](const OperatorMatrix& op, const std::string& tag) {
    ++total;
    const auto v = decide_trivial_operator(op);
    if (v.trivial == Tri::Yes) {
      ++yes;
      Rng r2(rmtest::kSeed + 1000 + total);
      const auto hit = rmtest::refute_trivial(op, r2, 100000);
      f.expect(!hit, tag + " Yes refuted by sampling");
    } else if (v.trivial == Tri::No) {
      ++no;
      f.expect(v.witness && verify_witness(op, *v.witness, false).empty(), tag + " No without a valid witness");
    } else {
      ++undecided;
    }
  };
  for (const auto& e : catalog_entries()) {
    if (e.kind == "lyapunov") check(lyapunov(e.a), e.id);
    if (e.kind == "stein") check(stein(e.a), e.id);
  }
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 2 + rng.index(2);
    const std::size_t d = sym_dim(n);
    OperatorMatrix op;
    switch (t % 6) {
      case 0: op = lyapunov(rng.normal_matrix(n, n)); break;
      case 1: op = stein(rng.normal_matrix(n, n)); break;
      case 2: op = lyapunov(rng.normal_matrix(n, n) - rng.normal_matrix(n, n).transpose()); break;
      case 3: op = general_operator(rng.normal_matrix(d, 2) * rng.normal_matrix(2, d)); break;
      case 4: op = general_operator(rng.normal_matrix(d, 1) * rng.normal_matrix(1, d)); break;
      default: op = general_operator(rng.normal_matrix(d, d)); break;
    }
    check(op, "random #" + std::to_string(t));
  }
  return f.outcome(std::to_string(total) + " operators: " + std::to_string(yes) + " Yes (1e5 samples each), " +
                   std::to_string(no) + " No, " + std::to_string(undecided) + " Undecided");
}

std::string suite_json(std::uint64_t seed) {
  report::Context ctx;
  ctx.seed = seed;
  ctx.argv = {"acceptance"};
  std::string out;
  out += report::reproduce_all(ctx).json;
  out += report::reproduce_table(ctx).json;
  out += report::classify(ctx, Matrix{{1, -1}, {-1, 1}}).json;
  out += report::operator_analysis(ctx, OperatorKind::Stein, Matrix::diagonal(std::vector<double>{1, 2}), true).json;
  out += report::operator_analysis(ctx, OperatorKind::Lyapunov, Matrix{{1, 1}, {0, 0}}, true).json;
  out += report::solve(ctx, OperatorKind::Lyapunov, rmtest::rot(), Matrix::identity(2)).json;
  out += report::group_inverse(ctx, Matrix{{1, -1}, {-1, 1}}).json;
  out += report::feasibility(ctx, report::parse_basis_text(
                                       R"({"n": 3, "matrices": [[[1, 0, 0], [0, -1, 0], [0, 0, 0.5]],
                                                                [[0, 1, 0], [1, 0, 2], [0, 2, -1]]]})"))
             .json;
  return out;
}

Outcome determinism() {
  Failures f;
  const std::string a = suite_json(42), b = suite_json(42);
  f.expect(a == b, "JSON differs between runs");
  f.expect(a.size() > 1000, "suite output unexpectedly short");
  return f.outcome(std::to_string(a.size()) + " JSON bytes identical across two runs with seed 42");
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double budget_s;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "operator identities", 1.0, operator_identities},
      {2, "summary table", 10.0, table_reproduction},
      {3, "catalog reproduction", 30.0, catalog_all},
      {4, "singular irreducible M-matrices", 30.0, singular_irreducible},
      {5, "idempotency characterizations", 0.0, idempotency},
      {6, "group inverse existence audit", 0.0, group_inverse_audit},
      {7, "stability solvability", 0.0, stability_solve},
      {8, "cone feasibility oracles", 0.0, cone_oracle},
      {9, "reduction validity", 0.0, reduction_validity},
      {10, "determinism", 0.0, determinism},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.budget_s > 0.0 && secs >= c.budget_s) {
      o.passed = false;
      o.detail += "; runtime budget " + fmt("%.0f", c.budget_s) + " s exceeded";
    }
    failed += !o.passed;
    std::printf("[%s] %2d %s (%.2f s): %s\n", o.passed ? "PASS" : "FAIL", c.id, c.name, secs, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
