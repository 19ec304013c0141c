#include "rangemono/lp.hpp"

#include <algorithm>
#include <cmath>

namespace rmono::lp {

namespace {

constexpr double kPivotEps = 1e-11;
constexpr double kCostEps = 1e-10;

// How an original variable maps onto nonnegative tableau columns:
// x = offset + sign * t[col] (- t[col2] when free).
struct VarMap {
  double offset = 0.0;
  double sign = 1.0;
  std::size_t col = 0;
  std::ptrdiff_t col2 = -1;
};

class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols) : m_(rows), n_(cols), t_(rows * (cols + 1), 0.0), basis_(rows, 0) {}

  double& at(std::size_t i, std::size_t j) { return t_[i * (n_ + 1) + j]; }
  double at(std::size_t i, std::size_t j) const { return t_[i * (n_ + 1) + j]; }
  double& rhs(std::size_t i) { return at(i, n_); }
  double rhs(std::size_t i) const { return at(i, n_); }
  std::size_t rows() const { return m_; }
  std::size_t cols() const { return n_; }
  std::vector<std::size_t>& basis() { return basis_; }
  const std::vector<std::size_t>& basis() const { return basis_; }

  void pivot(std::size_t r, std::size_t c) {
    const double p = at(r, c);
    for (std::size_t j = 0; j <= n_; ++j) at(r, j) /= p;
    at(r, c) = 1.0;
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == r) continue;
      const double f = at(i, c);
      if (f == 0.0) continue;
      for (std::size_t j = 0; j <= n_; ++j) at(i, j) -= f * at(r, j);
      at(i, c) = 0.0;
    }
    basis_[r] = c;
  }

  // Minimizes cost over the columns flagged in `allowed`. Returns false when
  // the objective is unbounded below.
  bool minimize(const Vector& cost, const std::vector<bool>& allowed, long& budget) {
    for (;;) {
      std::ptrdiff_t enter = -1;
      for (std::size_t j = 0; j < n_; ++j) {
        if (!allowed[j]) continue;
        double rc = cost[j];
        for (std::size_t i = 0; i < m_; ++i) rc -= cost[basis_[i]] * at(i, j);
        if (rc < -kCostEps) {
          enter = static_cast<std::ptrdiff_t>(j);
          break;
        }
      }
      if (enter < 0) return true;
      const auto c = static_cast<std::size_t>(enter);
      std::ptrdiff_t leave = -1;
      double best = 0.0;
      for (std::size_t i = 0; i < m_; ++i) {
        const double a = at(i, c);
        if (a <= kPivotEps) continue;
        const double ratio = rhs(i) / a;
        if (leave < 0 || ratio < best - 1e-13 ||
            (ratio <= best + 1e-13 && basis_[i] < basis_[static_cast<std::size_t>(leave)])) {
          leave = static_cast<std::ptrdiff_t>(i);
          best = ratio;
        }
      }
      if (leave < 0) return false;
      if (--budget < 0) throw Error(ErrorCode::NonConvergence, "lp_solve: pivot limit exceeded");
      pivot(static_cast<std::size_t>(leave), c);
    }
  }

 private:
  std::size_t m_;
  std::size_t n_;
  std::vector<double> t_;
  std::vector<std::size_t> basis_;
};

}  // namespace

const char* to_string(LpStatus s) {
  switch (s) {
    case LpStatus::Optimal: return "Optimal";
    case LpStatus::Infeasible: return "Infeasible";
    case LpStatus::Unbounded: return "Unbounded";
  }
  return "?";
}

LpResult lp_solve(const LinearProgram& program, const Tolerances& tol) {
  const std::size_t nvar = program.objective.size();
  Vector lower = program.lower.empty() ? Vector(nvar, 0.0) : program.lower;
  Vector upper = program.upper.empty() ? Vector(nvar, kInf) : program.upper;
  if (lower.size() != nvar || upper.size() != nvar) {
    throw Error(ErrorCode::InvalidArgument, "lp_solve: bound vector length mismatch");
  }
  for (double c : program.objective)
    if (!std::isfinite(c)) throw Error(ErrorCode::InvalidArgument, "lp_solve: non-finite objective");
  for (const auto& con : program.constraints) {
    if (con.coeffs.size() != nvar) throw Error(ErrorCode::InvalidArgument, "lp_solve: constraint length mismatch");
    if (!std::isfinite(con.rhs)) throw Error(ErrorCode::InvalidArgument, "lp_solve: non-finite right-hand side");
  }
  for (std::size_t j = 0; j < nvar; ++j) {
    if (lower[j] > upper[j]) return {LpStatus::Infeasible, 0.0, {}};
  }

  // Substitute bounds so every structural column is nonnegative.
  std::vector<VarMap> map(nvar);
  std::size_t ncols = 0;
  std::vector<std::size_t> bound_rows;  // variables needing an explicit upper-bound row
  for (std::size_t j = 0; j < nvar; ++j) {
    const bool lo = std::isfinite(lower[j]);
    const bool hi = std::isfinite(upper[j]);
    if (lo) {
      map[j] = {lower[j], 1.0, ncols++, -1};
      if (hi) bound_rows.push_back(j);
    } else if (hi) {
      map[j] = {upper[j], -1.0, ncols++, -1};
    } else {
      map[j].col = ncols++;
      map[j].col2 = static_cast<std::ptrdiff_t>(ncols++);
    }
  }

  struct Row {
    Vector a;
    Relation rel;
    double b;
  };
  std::vector<Row> rows;
  auto add_row = [&](const Vector& coeffs, Relation rel, double rhs) {
    Row r{Vector(ncols, 0.0), rel, rhs};
    for (std::size_t j = 0; j < nvar; ++j) {
      const double c = coeffs[j];
      if (c == 0.0) continue;
      r.b -= c * map[j].offset;
      r.a[map[j].col] += c * map[j].sign;
      if (map[j].col2 >= 0) r.a[static_cast<std::size_t>(map[j].col2)] -= c;
    }
    if (r.b < 0.0) {
      for (double& x : r.a) x = -x;
      r.b = -r.b;
      if (r.rel == Relation::LessEqual) {
        r.rel = Relation::GreaterEqual;
      } else if (r.rel == Relation::GreaterEqual) {
        r.rel = Relation::LessEqual;
      }
    }
    rows.push_back(std::move(r));
  };
  for (const auto& con : program.constraints) add_row(con.coeffs, con.rel, con.rhs);
  for (std::size_t j : bound_rows) {
    Vector e(nvar, 0.0);
    e[j] = 1.0;
    add_row(e, Relation::LessEqual, upper[j]);
  }

  const std::size_t m = rows.size();
  std::size_t nslack = 0;
  std::size_t nart = 0;
  for (const auto& r : rows) {
    if (r.rel != Relation::Equal) ++nslack;
    if (r.rel != Relation::LessEqual) ++nart;
  }
  const std::size_t total = ncols + nslack + nart;
  Tableau tab(m, total);
  std::vector<bool> is_art(total, false);
  std::size_t s = ncols;
  std::size_t a = ncols + nslack;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < ncols; ++j) tab.at(i, j) = rows[i].a[j];
    tab.rhs(i) = rows[i].b;
    switch (rows[i].rel) {
      case Relation::LessEqual:
        tab.at(i, s) = 1.0;
        tab.basis()[i] = s++;
        break;
      case Relation::GreaterEqual:
        tab.at(i, s++) = -1.0;
        tab.at(i, a) = 1.0;
        is_art[a] = true;
        tab.basis()[i] = a++;
        break;
      case Relation::Equal:
        tab.at(i, a) = 1.0;
        is_art[a] = true;
        tab.basis()[i] = a++;
        break;
    }
  }

  long budget = std::max<long>(tol.max_iter, 50L * static_cast<long>(m + total));

  if (nart > 0) {
    Vector phase1(total, 0.0);
    for (std::size_t j = 0; j < total; ++j)
      if (is_art[j]) phase1[j] = 1.0;
    std::vector<bool> all(total, true);
    tab.minimize(phase1, all, budget);
    double infeas = 0.0;
    for (std::size_t i = 0; i < m; ++i)
      if (is_art[tab.basis()[i]]) infeas += tab.rhs(i);
    if (infeas > tol.feas_tol) return {LpStatus::Infeasible, 0.0, {}};
    // Drive remaining artificials out of the basis where possible.
    for (std::size_t i = 0; i < m; ++i) {
      if (!is_art[tab.basis()[i]]) continue;
      std::ptrdiff_t col = -1;
      for (std::size_t j = 0; j < total && col < 0; ++j) {
        if (!is_art[j] && std::abs(tab.at(i, j)) > kPivotEps) col = static_cast<std::ptrdiff_t>(j);
      }
      if (col >= 0) tab.pivot(i, static_cast<std::size_t>(col));
    }
  }

  Vector cost(total, 0.0);
  const double dir = program.maximize ? -1.0 : 1.0;
  for (std::size_t j = 0; j < nvar; ++j) {
    const double c = dir * program.objective[j];
    cost[map[j].col] += c * map[j].sign;
    if (map[j].col2 >= 0) cost[static_cast<std::size_t>(map[j].col2)] -= c;
  }
  std::vector<bool> allowed(total);
  for (std::size_t j = 0; j < total; ++j) allowed[j] = !is_art[j];
  if (!tab.minimize(cost, allowed, budget)) return {LpStatus::Unbounded, 0.0, {}};

  Vector t(total, 0.0);
  for (std::size_t i = 0; i < m; ++i) t[tab.basis()[i]] = std::max(tab.rhs(i), 0.0);
  LpResult out{LpStatus::Optimal, 0.0, Vector(nvar, 0.0)};
  for (std::size_t j = 0; j < nvar; ++j) {
    double v = map[j].offset + map[j].sign * t[map[j].col];
    if (map[j].col2 >= 0) v -= t[static_cast<std::size_t>(map[j].col2)];
    out.x[j] = v;
  }
  double obj = 0.0;
  for (std::size_t j = 0; j < nvar; ++j) obj += program.objective[j] * out.x[j];
  out.objective = obj;
  return out;
}

}  // namespace rmono::lp
