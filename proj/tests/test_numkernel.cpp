#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "rangemono/linalg.hpp"
#include "rangemono/lp.hpp"
#include "support.hpp"

using namespace rmono;
using rmtest::near;

TEST_CASE("matrix basics") {
  const Matrix a{{1, 2}, {3, 4}};
  CHECK(a.rows() == 2);
  CHECK(a.transpose()(0, 1) == 3);
  CHECK(near(a * Matrix::identity(2), a));
  CHECK(trace(a) == 5);
  CHECK(near(matrix_power(a, 0), Matrix::identity(2)));
  CHECK(asymmetry(a) == 1);
  CHECK_THROWS_AS(Matrix(2, 2, std::vector<double>{1, 2, 3}), Error);
  CHECK_THROWS_AS((Matrix{{1, 2}, {3}}), Error);
  Tolerances bad;
  bad.rank_tol = 0;
  CHECK_THROWS_AS(bad.validate(), Error);
  bad = {};
  bad.max_iter = 0;
  CHECK_THROWS_AS(bad.validate(), Error);
}

TEST_CASE("qr_column_pivoted ranks") {
  CHECK(linalg::qr_column_pivoted(Matrix::identity(3)).rank == 3);
  CHECK(linalg::qr_column_pivoted(Matrix{{1, -1}, {-1, 1}}).rank == 1);
  CHECK(linalg::qr_column_pivoted(Matrix{{0, 1}, {0, 0}}).rank == 1);
  CHECK(linalg::qr_column_pivoted(Matrix(3, 2)).rank == 0);
}

TEST_CASE("qr reconstruction on random input") {
  Rng rng(rmtest::kSeed);
  for (int t = 0; t < 30; ++t) {
    const std::size_t m = 1 + rng.index(6), n = 1 + rng.index(6);
    const Matrix a = rng.normal_matrix(m, n);
    const auto f = linalg::qr_column_pivoted(a);
    const Matrix qr = f.q * f.r;
    Matrix ap(m, n);
    for (std::size_t j = 0; j < n; ++j) ap.set_column(j, a.column(f.perm[j]));
    CHECK(rmtest::max_diff(qr, ap) <= 1e-9 * (1 + frobenius_norm(a)));
    CHECK(near(f.q.transpose() * f.q, Matrix::identity(m), 1e-10));
  }
}

TEST_CASE("range and null bases") {
  const Matrix a{{1, -1}, {-1, 1}};
  const Matrix r = linalg::range_basis(a);
  REQUIRE(r.cols() == 1);
  CHECK(std::abs(std::abs(r(0, 0)) - 1 / std::sqrt(2.0)) < 1e-12);
  CHECK(std::abs(r(0, 0) + r(1, 0)) < 1e-12);
  CHECK(linalg::null_basis(a).cols() == 1);

  CHECK(linalg::range_basis(Matrix(3, 3)).cols() == 0);
  CHECK(linalg::null_basis(Matrix(3, 3)).cols() == 3);
  CHECK(linalg::range_basis(Matrix{{2, 1}, {1, 3}}).cols() == 2);
  CHECK(linalg::null_basis(Matrix{{2, 1}, {1, 3}}).cols() == 0);

  Rng rng(rmtest::kSeed + 1);
  for (int t = 0; t < 20; ++t) {
    const std::size_t n = 2 + rng.index(5);
    const std::size_t k = 1 + rng.index(n);
    const Matrix m = rng.normal_matrix(n, k) * rng.normal_matrix(k, n);
    const Matrix rb = linalg::range_basis(m), nb = linalg::null_basis(m);
    CHECK(rb.cols() + nb.cols() == n);
    CHECK(rb.cols() == k);
    CHECK(near(rb.transpose() * rb, Matrix::identity(rb.cols()), 1e-10));
    if (nb.cols() > 0) CHECK(max_abs(m * nb) <= 1e-9 * (1 + max_abs(m)));
  }
}

TEST_CASE("sym_eigen examples") {
  auto ev = [](const Matrix& m) { return linalg::sym_eigen(m).values; };
  CHECK(rmtest::max_diff(ev(Matrix::diagonal(std::vector<double>{3, 1})), Vector{1, 3}) < 1e-14);
  CHECK(rmtest::max_diff(ev(rmtest::flip()), Vector{-1, 1}) < 1e-14);
  // lambda^2 - 2 lambda has roots 0 and 2.
  CHECK(rmtest::max_diff(ev(Matrix{{1, -1}, {-1, 1}}), Vector{0, 2}) < 1e-14);
  CHECK_THROWS_AS(linalg::sym_eigen(Matrix{{1, 2}, {0, 1}}), Error);
}

TEST_CASE("sym_eigen reconstruction property") {
  Rng rng(rmtest::kSeed + 2);
  for (int t = 0; t < 40; ++t) {
    const std::size_t n = 1 + rng.index(8);
    const Matrix s = rng.symmetric(n);
    const auto e = linalg::sym_eigen(s);
    const Matrix rec = e.vectors * Matrix::diagonal(e.values) * e.vectors.transpose();
    CHECK(rmtest::max_diff(rec, s) <= 1e-8 * (1 + max_abs(s)));
    CHECK(near(e.vectors.transpose() * e.vectors, Matrix::identity(n), 1e-10));
    for (std::size_t i = 1; i < n; ++i) CHECK(e.values[i - 1] <= e.values[i]);
    // Eigenvalues agree with the characteristic polynomial roots.
    if (n <= 4) {
      std::vector<rmtest::cplx> lib(e.values.begin(), e.values.end());
      CHECK(rmtest::match_distance(lib, rmtest::durand_kerner(rmtest::char_poly(s))) < 1e-6);
    }
  }
}

TEST_CASE("rank from QR matches eigenvalue count of M^T M") {
  Rng rng(rmtest::kSeed + 3);
  for (int t = 0; t < 40; ++t) {
    const std::size_t n = 1 + rng.index(6);
    const std::size_t k = rng.index(n + 1);
    Matrix m = k == 0 ? Matrix(n, n) : rng.normal_matrix(n, k) * rng.normal_matrix(k, n);
    const auto e = linalg::sym_eigen(m.transpose() * m);
    const double top = e.values.empty() ? 0.0 : e.values.back();
    std::size_t count = 0;
    for (double v : e.values)
      if (v > 1e-9 * top && v > 0) ++count;
    CHECK(linalg::rank(m) == count);
    CHECK(linalg::rank(m) == k);
  }
}

TEST_CASE("general_eigenvalues examples") {
  using rmtest::cplx;
  CHECK(rmtest::match_distance(linalg::general_eigenvalues(rmtest::rot()).values, {cplx(0, 1), cplx(0, -1)}) < 1e-12);
  CHECK(rmtest::match_distance(linalg::general_eigenvalues(rmtest::flip()).values, {1.0, -1.0}) < 1e-12);
  CHECK(rmtest::match_distance(linalg::general_eigenvalues(Matrix{{1, 1}, {0, 1}}).values, {1.0, 1.0}) < 1e-7);
  CHECK(linalg::general_eigenvalues(rmtest::rot()).spectral_radius() == doctest::Approx(1.0));
}

TEST_CASE("companion matrices recover polynomial roots") {
  Rng rng(rmtest::kSeed + 4);
  for (int t = 0; t < 50; ++t) {
    const std::size_t deg = 1 + rng.index(5);
    Vector c(deg + 1);
    for (std::size_t i = 0; i < deg; ++i) c[i] = rng.uniform(-3, 3);
    c[deg] = 1.0;
    Matrix comp(deg, deg);
    for (std::size_t i = 1; i < deg; ++i) comp(i, i - 1) = 1.0;
    for (std::size_t i = 0; i < deg; ++i) comp(i, deg - 1) = -c[i];
    const auto spec = linalg::general_eigenvalues(comp);
    REQUIRE(spec.values.size() == deg);
    CHECK(rmtest::match_distance(spec.values, rmtest::durand_kerner(c)) < 1e-6);
    for (const auto& z : spec.values) {
      if (z.imag() == 0.0) continue;
      bool paired = false;
      for (const auto& w : spec.values) paired = paired || std::abs(w - std::conj(z)) < 1e-9;
      CHECK(paired);
    }
  }
}

TEST_CASE("determinant matches the product of eigenvalues") {
  Rng rng(rmtest::kSeed + 5);
  for (int t = 0; t < 30; ++t) {
    const std::size_t n = 1 + rng.index(4);
    const Matrix m = rng.normal_matrix(n, n);
    std::complex<double> prod = 1.0;
    for (const auto& z : linalg::general_eigenvalues(m).values) prod *= z;
    CHECK(std::abs(prod.real() - linalg::determinant(m)) <= 1e-8 * (1 + std::abs(linalg::determinant(m))));
    CHECK(std::abs(prod.imag()) < 1e-8 * (1 + std::abs(prod)));
  }
}

TEST_CASE("inverse, solve and min-norm solve") {
  const Matrix a{{2, 1}, {1, 3}};
  CHECK(near(a * linalg::inverse(a), Matrix::identity(2), 1e-14));
  CHECK_THROWS_AS(linalg::inverse(Matrix{{1, 1}, {1, 1}}), Error);
  const Vector x = linalg::solve(a, Vector{3, 4});
  CHECK(rmtest::max_diff(x, Vector{1, 1}) < 1e-14);
  // x1 + x2 = 2 has minimum-norm solution (1, 1).
  const Vector y = linalg::solve_min_norm(Matrix{{1, 1}}, Vector{2});
  CHECK(rmtest::max_diff(y, Vector{1, 1}) < 1e-12);
}

TEST_CASE("singular values") {
  const Vector s = linalg::singular_values(Matrix{{3, 0}, {0, -4}});
  CHECK(rmtest::max_diff(s, Vector{4, 3}) < 1e-12);
}

TEST_CASE("lp_solve examples") {
  using namespace lp;
  auto max_t = [](const Matrix& a) {
    // Variables (x_1..x_n, t): max t s.t. x_i >= t, (A x)_i >= t, x <= e.
    const std::size_t n = a.rows();
    LinearProgram p;
    p.maximize = true;
    p.objective.assign(n + 1, 0.0);
    p.objective[n] = 1.0;
    p.lower.assign(n + 1, 0.0);
    p.lower[n] = -kInf;
    p.upper.assign(n + 1, 1.0);
    p.upper[n] = kInf;
    for (std::size_t i = 0; i < n; ++i) {
      Vector c(n + 1, 0.0);
      c[i] = 1.0;
      c[n] = -1.0;
      p.constraints.push_back({c, Relation::GreaterEqual, 0.0});
      Vector r(n + 1, 0.0);
      for (std::size_t j = 0; j < n; ++j) r[j] = a(i, j);
      r[n] = -1.0;
      p.constraints.push_back({r, Relation::GreaterEqual, 0.0});
    }
    return lp_solve(p);
  };
  const auto id = max_t(Matrix::identity(2));
  CHECK(id.status == LpStatus::Optimal);
  CHECK(id.objective == doctest::Approx(1.0));
  CHECK(rmtest::max_diff(Vector(id.x.begin(), id.x.begin() + 2), Vector{1, 1}) < 1e-9);
  // (1,1)^T A = 0, so A x > 0 is impossible.
  const auto sing = max_t(Matrix{{1, -1}, {-1, 1}});
  CHECK(sing.status == LpStatus::Optimal);
  CHECK(std::abs(sing.objective) < 1e-9);

  LinearProgram empty;
  empty.objective = {0.0, 0.0};
  const auto e = lp_solve(empty);
  CHECK(e.status == LpStatus::Optimal);
  CHECK(e.objective == 0.0);

  LinearProgram unb;
  unb.objective = {1.0};
  unb.maximize = true;
  CHECK(lp_solve(unb).status == LpStatus::Unbounded);

  LinearProgram inf;
  inf.objective = {1.0};
  inf.constraints.push_back({{1.0}, Relation::LessEqual, -1.0});
  CHECK(lp_solve(inf).status == LpStatus::Infeasible);
}

TEST_CASE("lp_solve agrees with vertex enumeration") {
  using namespace lp;
  Rng rng(rmtest::kSeed + 6);
  int optimal = 0, infeasible = 0;
  for (int t = 0; t < 300; ++t) {
    LinearProgram p;
    const std::size_t n = 1 + rng.index(4), m = rng.index(7);
    p.maximize = rng.uniform() < 0.5;
    for (std::size_t j = 0; j < n; ++j) p.objective.push_back(rng.uniform(-2, 2));
    for (std::size_t j = 0; j < n; ++j) {
      p.lower.push_back(rng.uniform(-2, 0));
      p.upper.push_back(rng.uniform(0.5, 3));
    }
    for (std::size_t i = 0; i < m; ++i) {
      Vector c;
      for (std::size_t j = 0; j < n; ++j) c.push_back(std::round(rng.uniform(-3, 3)));
      const double u = rng.uniform();
      const Relation rel = u < 0.45 ? Relation::LessEqual : u < 0.9 ? Relation::GreaterEqual : Relation::Equal;
      p.constraints.push_back({c, rel, rng.uniform(-2, 2)});
    }
    const auto got = lp_solve(p);
    const auto want = rmtest::lp_vertex_oracle(p);
    if (want) {
      ++optimal;
      REQUIRE(got.status == LpStatus::Optimal);
      CHECK(got.objective == doctest::Approx(*want).epsilon(1e-7));
    } else {
      ++infeasible;
      CHECK(got.status == LpStatus::Infeasible);
    }
  }
  CHECK(optimal > 50);
  CHECK(infeasible > 5);
}
