#include "rangemono/sampling.hpp"

#include <cmath>
#include <numbers>

#include "rangemono/linalg.hpp"

namespace rmono {

double Rng::uniform(double lo, double hi) {
  // 53 random bits mapped to [0, 1).
  const double u = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * u;
}

double Rng::normal() {
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::size_t Rng::index(std::size_t n) { return static_cast<std::size_t>(engine_() % n); }

Vector Rng::normal_vector(std::size_t n) {
  Vector v(n);
  for (double& x : v) x = normal();
  return v;
}

Matrix Rng::normal_matrix(std::size_t rows, std::size_t cols) {
  Matrix m(rows, cols);
  for (double& x : m.data()) x = normal();
  return m;
}

Matrix Rng::uniform_matrix(std::size_t rows, std::size_t cols, double lo, double hi) {
  Matrix m(rows, cols);
  for (double& x : m.data()) x = uniform(lo, hi);
  return m;
}

Matrix Rng::orthogonal(std::size_t n) {
  auto qr = linalg::qr_column_pivoted(normal_matrix(n, n));
  return qr.q;
}

Matrix Rng::symmetric(std::size_t n) {
  Matrix g = normal_matrix(n, n);
  return 0.5 * (g + g.transpose());
}

Matrix Rng::positive_definite(std::size_t n) {
  Matrix g = normal_matrix(n, n);
  return g * g.transpose() + 0.5 * Matrix::identity(n);
}

}  // namespace rmono
