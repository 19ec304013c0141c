#include "rangemono/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace rmono::linalg {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

double sign_of(double magnitude, double s) { return s >= 0.0 ? std::abs(magnitude) : -std::abs(magnitude); }

}  // namespace

QrResult qr_column_pivoted(const Matrix& m, const Tolerances& tol) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  Matrix a = m;
  Matrix q = Matrix::identity(rows);
  std::vector<std::size_t> perm(cols);
  std::iota(perm.begin(), perm.end(), std::size_t{0});

  const std::size_t steps = std::min(rows, cols);
  Vector v;
  for (std::size_t k = 0; k < steps; ++k) {
    std::size_t best = k;
    double best_norm = -1.0;
    for (std::size_t j = k; j < cols; ++j) {
      double s = 0.0;
      for (std::size_t i = k; i < rows; ++i) s += a(i, j) * a(i, j);
      if (s > best_norm) {
        best_norm = s;
        best = j;
      }
    }
    if (best != k) {
      for (std::size_t i = 0; i < rows; ++i) std::swap(a(i, k), a(i, best));
      std::swap(perm[k], perm[best]);
    }

    const std::size_t len = rows - k;
    v.assign(len, 0.0);
    for (std::size_t i = 0; i < len; ++i) v[i] = a(k + i, k);
    double alpha = norm2(v);
    if (alpha == 0.0) continue;
    if (v[0] > 0.0) alpha = -alpha;
    v[0] -= alpha;
    const double vnorm2 = dot(v, v);
    if (vnorm2 == 0.0) continue;

    for (std::size_t j = k; j < cols; ++j) {
      double s = 0.0;
      for (std::size_t i = 0; i < len; ++i) s += v[i] * a(k + i, j);
      const double f = 2.0 * s / vnorm2;
      for (std::size_t i = 0; i < len; ++i) a(k + i, j) -= f * v[i];
    }
    for (std::size_t i = 0; i < rows; ++i) {
      double s = 0.0;
      for (std::size_t l = 0; l < len; ++l) s += q(i, k + l) * v[l];
      const double f = 2.0 * s / vnorm2;
      for (std::size_t l = 0; l < len; ++l) q(i, k + l) -= f * v[l];
    }
    a(k, k) = alpha;
    for (std::size_t i = k + 1; i < rows; ++i) a(i, k) = 0.0;
  }

  QrResult out{std::move(q), std::move(a), std::move(perm), 0};
  if (steps > 0) {
    const double largest = std::abs(out.r(0, 0));
    if (largest > 0.0) {
      for (std::size_t k = 0; k < steps; ++k) {
        if (std::abs(out.r(k, k)) > tol.rank_tol * largest) {
          ++out.rank;
        } else {
          break;
        }
      }
    }
  }
  return out;
}

std::size_t rank(const Matrix& m, const Tolerances& tol) { return qr_column_pivoted(m, tol).rank; }

Matrix range_basis(const Matrix& m, const Tolerances& tol) {
  auto qr = qr_column_pivoted(m, tol);
  return qr.q.leading_columns(qr.rank);
}

Matrix null_basis(const Matrix& m, const Tolerances& tol) {
  const std::size_t r = rank(m, tol);
  auto qr = qr_column_pivoted(m.transpose(), tol);
  return qr.q.block(0, r, m.cols(), m.cols() - r);
}

Matrix orthogonal_complement(const Matrix& basis, const Tolerances& tol) {
  return null_basis(basis.transpose(), tol);
}

SymEigen sym_eigen(const Matrix& s, const Tolerances& tol) {
  require_square(s, "sym_eigen");
  const double scale = max_abs(s);
  if (asymmetry(s) > tol.eq_tol * std::max(scale, 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "sym_eigen: matrix is not symmetric");
  }
  const std::size_t n = s.rows();
  Matrix a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j) = 0.5 * (s(i, j) + s(j, i));
  Matrix v = Matrix::identity(n);
  const double frob = frobenius_norm(a);

  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += a(p, q) * a(p, q);
    if (off == 0.0 || std::sqrt(off) <= 1e-16 * frob) break;

    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (std::abs(apq) <= 1e-300) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        double t;
        if (std::abs(theta) > 1e150) {
          t = 1.0 / (2.0 * theta);
        } else {
          t = sign_of(1.0, theta) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        }
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double sn = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - sn * akq;
          a(k, q) = sn * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - sn * aqk;
          a(q, k) = sn * apk + c * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v(k, p);
          const double vkq = v(k, q);
          v(k, p) = c * vkp - sn * vkq;
          v(k, q) = sn * vkp + c * vkq;
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return a(x, x) < a(y, y); });
  SymEigen out{Vector(n), Matrix(n, n)};
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = a(order[k], order[k]);
    for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = v(i, order[k]);
  }
  return out;
}

double min_eigenvalue(const Matrix& s) {
  if (s.rows() == 0) return 0.0;
  Tolerances loose;
  loose.eq_tol = 1e-6;
  return sym_eigen(s, loose).values.front();
}

double Spectrum::spectral_radius() const {
  double r = 0.0;
  for (const auto& z : values) r = std::max(r, std::abs(z));
  return r;
}

double Spectrum::min_real_part() const {
  double r = std::numeric_limits<double>::infinity();
  for (const auto& z : values) r = std::min(r, z.real());
  return r;
}

namespace {

void balance(Matrix& a) {
  constexpr double radix = 2.0;
  constexpr double sqrdx = radix * radix;
  const std::size_t n = a.rows();
  bool done = false;
  int guard = 0;
  while (!done && guard++ < 1000) {
    done = true;
    for (std::size_t i = 0; i < n; ++i) {
      double r = 0.0;
      double c = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i) continue;
        c += std::abs(a(j, i));
        r += std::abs(a(i, j));
      }
      if (c == 0.0 || r == 0.0) continue;
      double g = r / radix;
      double f = 1.0;
      const double s = c + r;
      while (c < g) {
        f *= radix;
        c *= sqrdx;
      }
      g = r * radix;
      while (c > g) {
        f /= radix;
        c /= sqrdx;
      }
      if ((c + r) / f < 0.95 * s) {
        done = false;
        g = 1.0 / f;
        for (std::size_t j = 0; j < n; ++j) a(i, j) *= g;
        for (std::size_t j = 0; j < n; ++j) a(j, i) *= f;
      }
    }
  }
}

void reduce_to_hessenberg(Matrix& h) {
  const std::size_t n = h.rows();
  if (n < 3) return;
  Vector v;
  for (std::size_t k = 0; k + 2 < n; ++k) {
    const std::size_t len = n - k - 1;
    v.assign(len, 0.0);
    for (std::size_t i = 0; i < len; ++i) v[i] = h(k + 1 + i, k);
    double alpha = norm2(v);
    if (alpha == 0.0) continue;
    if (v[0] > 0.0) alpha = -alpha;
    v[0] -= alpha;
    const double vnorm2 = dot(v, v);
    if (vnorm2 == 0.0) continue;
    for (std::size_t j = 0; j < n; ++j) {
      double s = 0.0;
      for (std::size_t i = 0; i < len; ++i) s += v[i] * h(k + 1 + i, j);
      const double f = 2.0 * s / vnorm2;
      for (std::size_t i = 0; i < len; ++i) h(k + 1 + i, j) -= f * v[i];
    }
    for (std::size_t i = 0; i < n; ++i) {
      double s = 0.0;
      for (std::size_t l = 0; l < len; ++l) s += h(i, k + 1 + l) * v[l];
      const double f = 2.0 * s / vnorm2;
      for (std::size_t l = 0; l < len; ++l) h(i, k + 1 + l) -= f * v[l];
    }
    for (std::size_t i = k + 2; i < n; ++i) h(i, k) = 0.0;
  }
}

// Francis double-shift QR on an upper Hessenberg matrix (EISPACK hqr layout).
std::vector<std::complex<double>> hessenberg_qr(Matrix& a) {
  const int n = static_cast<int>(a.rows());
  std::vector<std::complex<double>> w(static_cast<std::size_t>(n));
  double anorm = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = std::max(i - 1, 0); j < n; ++j) anorm += std::abs(a(i, j));

  const long cap = 100L * std::max(n, 1);
  long total = 0;
  int nn = n - 1;
  double t = 0.0;
  int l = 0;
  int m = 0;
  double p = 0, q = 0, r = 0, s = 0, x = 0, y = 0, z = 0, ww = 0, u = 0, vv = 0;
  while (nn >= 0) {
    int its = 0;
    do {
      for (l = nn; l > 0; --l) {
        s = std::abs(a(l - 1, l - 1)) + std::abs(a(l, l));
        if (s == 0.0) s = anorm;
        if (std::abs(a(l, l - 1)) <= kEps * s) {
          a(l, l - 1) = 0.0;
          break;
        }
      }
      x = a(nn, nn);
      if (l == nn) {
        w[static_cast<std::size_t>(nn)] = x + t;
        --nn;
      } else {
        y = a(nn - 1, nn - 1);
        ww = a(nn, nn - 1) * a(nn - 1, nn);
        if (l == nn - 1) {
          p = 0.5 * (y - x);
          q = p * p + ww;
          z = std::sqrt(std::abs(q));
          x += t;
          if (q >= 0.0) {
            z = p + sign_of(z, p);
            w[static_cast<std::size_t>(nn - 1)] = w[static_cast<std::size_t>(nn)] = x + z;
            if (z != 0.0) w[static_cast<std::size_t>(nn)] = x - ww / z;
          } else {
            w[static_cast<std::size_t>(nn)] = {x + p, -z};
            w[static_cast<std::size_t>(nn - 1)] = {x + p, z};
          }
          nn -= 2;
        } else {
          if (++total > cap) {
            throw Error(ErrorCode::NonConvergence, "general_eigenvalues: QR iteration cap exceeded");
          }
          if (its > 0 && its % 10 == 0) {
            t += x;
            for (int i = 0; i <= nn; ++i) a(i, i) -= x;
            s = std::abs(a(nn, nn - 1)) + std::abs(a(nn - 1, nn - 2));
            y = x = 0.75 * s;
            ww = -0.4375 * s * s;
          }
          ++its;
          for (m = nn - 2; m >= l; --m) {
            z = a(m, m);
            r = x - z;
            s = y - z;
            p = (r * s - ww) / a(m + 1, m) + a(m, m + 1);
            q = a(m + 1, m + 1) - z - r - s;
            r = a(m + 2, m + 1);
            s = std::abs(p) + std::abs(q) + std::abs(r);
            p /= s;
            q /= s;
            r /= s;
            if (m == l) break;
            u = std::abs(a(m, m - 1)) * (std::abs(q) + std::abs(r));
            vv = std::abs(p) * (std::abs(a(m - 1, m - 1)) + std::abs(z) + std::abs(a(m + 1, m + 1)));
            if (u <= kEps * vv) break;
          }
          for (int i = m; i < nn - 1; ++i) {
            a(i + 2, i) = 0.0;
            if (i != m) a(i + 2, i - 1) = 0.0;
          }
          for (int k = m; k < nn; ++k) {
            if (k != m) {
              p = a(k, k - 1);
              q = a(k + 1, k - 1);
              r = 0.0;
              if (k + 1 != nn) r = a(k + 2, k - 1);
              if ((x = std::abs(p) + std::abs(q) + std::abs(r)) != 0.0) {
                p /= x;
                q /= x;
                r /= x;
              }
            }
            if ((s = sign_of(std::sqrt(p * p + q * q + r * r), p)) != 0.0) {
              if (k == m) {
                if (l != m) a(k, k - 1) = -a(k, k - 1);
              } else {
                a(k, k - 1) = -s * x;
              }
              p += s;
              x = p / s;
              y = q / s;
              z = r / s;
              q /= p;
              r /= p;
              for (int j = k; j <= nn; ++j) {
                p = a(k, j) + q * a(k + 1, j);
                if (k + 1 != nn) {
                  p += r * a(k + 2, j);
                  a(k + 2, j) -= p * z;
                }
                a(k + 1, j) -= p * y;
                a(k, j) -= p * x;
              }
              const int mmin = nn < k + 3 ? nn : k + 3;
              for (int i = l; i <= mmin; ++i) {
                p = x * a(i, k) + y * a(i, k + 1);
                if (k + 1 != nn) {
                  p += z * a(i, k + 2);
                  a(i, k + 2) -= p * r;
                }
                a(i, k + 1) -= p * q;
                a(i, k) -= p;
              }
            }
          }
        }
      }
    } while (l + 1 < nn);
  }
  return w;
}

}  // namespace

Spectrum general_eigenvalues(const Matrix& m) {
  require_square(m, "general_eigenvalues");
  if (!m.all_finite()) throw Error(ErrorCode::InvalidArgument, "general_eigenvalues: non-finite input");
  Matrix h = m;
  balance(h);
  reduce_to_hessenberg(h);
  Spectrum out{hessenberg_qr(h)};
  // Pair conjugates exactly and order deterministically.
  for (auto& z : out.values) {
    if (std::abs(z.imag()) <= 1e-14 * std::max(1.0, std::abs(z))) z = {z.real(), 0.0};
  }
  std::sort(out.values.begin(), out.values.end(), [](const auto& a, const auto& b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  return out;
}

Vector singular_values(const Matrix& m) {
  Matrix u = m.rows() >= m.cols() ? m : m.transpose();
  const std::size_t rows = u.rows();
  const std::size_t cols = u.cols();
  for (int sweep = 0; sweep < 100; ++sweep) {
    bool rotated = false;
    for (std::size_t i = 0; i < cols; ++i) {
      for (std::size_t j = i + 1; j < cols; ++j) {
        double alpha = 0.0, beta = 0.0, gamma = 0.0;
        for (std::size_t k = 0; k < rows; ++k) {
          alpha += u(k, i) * u(k, i);
          beta += u(k, j) * u(k, j);
          gamma += u(k, i) * u(k, j);
        }
        if (gamma == 0.0 || std::abs(gamma) <= 1e-15 * std::sqrt(alpha * beta)) continue;
        rotated = true;
        const double zeta = (beta - alpha) / (2.0 * gamma);
        const double t = sign_of(1.0, zeta) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        for (std::size_t k = 0; k < rows; ++k) {
          const double ui = u(k, i);
          const double uj = u(k, j);
          u(k, i) = c * ui - s * uj;
          u(k, j) = s * ui + c * uj;
        }
      }
    }
    if (!rotated) break;
  }
  Vector sv(cols);
  for (std::size_t j = 0; j < cols; ++j) sv[j] = norm2(u.column(j));
  std::sort(sv.begin(), sv.end(), std::greater<>());
  return sv;
}

LuResult lu_decompose(const Matrix& a) {
  require_square(a, "lu_decompose");
  const std::size_t n = a.rows();
  LuResult out{a, std::vector<std::size_t>(n), 1, false};
  std::iota(out.piv.begin(), out.piv.end(), std::size_t{0});
  Matrix& lu = out.lu;
  const double scale = std::max(max_abs(a), std::numeric_limits<double>::min());
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(lu(i, k)) > std::abs(lu(p, k))) p = i;
    if (std::abs(lu(p, k)) <= 64 * kEps * scale) {
      out.singular = true;
      continue;
    }
    if (p != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(lu(p, j), lu(k, j));
      std::swap(out.piv[p], out.piv[k]);
      out.sign = -out.sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      lu(i, k) /= lu(k, k);
      const double f = lu(i, k);
      if (f == 0.0) continue;
      for (std::size_t j = k + 1; j < n; ++j) lu(i, j) -= f * lu(k, j);
    }
  }
  return out;
}

double determinant(const Matrix& a) {
  require_square(a, "determinant");
  if (a.rows() == 0) return 1.0;
  auto lu = lu_decompose(a);
  double d = lu.sign;
  for (std::size_t i = 0; i < a.rows(); ++i) d *= lu.lu(i, i);
  return lu.singular ? 0.0 : d;
}

namespace {

Vector lu_solve(const LuResult& f, std::span<const double> b) {
  const std::size_t n = f.lu.rows();
  Vector x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = b[f.piv[i]];
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j) x[i] -= f.lu(i, j) * x[j];
  for (std::size_t ii = n; ii-- > 0;) {
    for (std::size_t j = ii + 1; j < n; ++j) x[ii] -= f.lu(ii, j) * x[j];
    x[ii] /= f.lu(ii, ii);
  }
  return x;
}

}  // namespace

Matrix inverse(const Matrix& a) {
  auto f = lu_decompose(a);
  if (f.singular) throw Error(ErrorCode::SingularOperator, "inverse: matrix is singular");
  const std::size_t n = a.rows();
  Matrix inv(n, n);
  Vector e(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    std::fill(e.begin(), e.end(), 0.0);
    e[j] = 1.0;
    inv.set_column(j, lu_solve(f, e));
  }
  return inv;
}

Vector solve(const Matrix& a, std::span<const double> b) {
  auto f = lu_decompose(a);
  if (f.singular) throw Error(ErrorCode::SingularOperator, "solve: matrix is singular");
  return lu_solve(f, b);
}

Vector solve_min_norm(const Matrix& a, std::span<const double> b, const Tolerances& tol) {
  if (b.size() != a.rows()) throw Error(ErrorCode::InvalidArgument, "solve_min_norm: shape mismatch");
  // A^T P = Q R  =>  A = P R^T Q^T.
  auto qr = qr_column_pivoted(a.transpose(), tol);
  const std::size_t rho = qr.rank;
  Vector y(rho, 0.0);
  for (std::size_t j = 0; j < rho; ++j) {
    double c = b[qr.perm[j]];
    for (std::size_t i = 0; i < j; ++i) c -= qr.r(i, j) * y[i];
    y[j] = c / qr.r(j, j);
  }
  Vector x(a.cols(), 0.0);
  for (std::size_t i = 0; i < a.cols(); ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < rho; ++j) s += qr.q(i, j) * y[j];
    x[i] = s;
  }
  return x;
}

}  // namespace rmono::linalg
