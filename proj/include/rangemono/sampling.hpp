// Seeded random generation. Every randomized routine in the library takes
// an explicit seed and draws from its own Rng, so results are reproducible.
#pragma once

#include <cstdint>
#include <random>

#include "rangemono/matrix.hpp"

namespace rmono {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform(double lo = 0.0, double hi = 1.0);
  /// Standard normal via Box-Muller (portable across standard libraries).
  double normal();
  std::size_t index(std::size_t n);

  Vector normal_vector(std::size_t n);
  Matrix normal_matrix(std::size_t rows, std::size_t cols);
  Matrix uniform_matrix(std::size_t rows, std::size_t cols, double lo, double hi);
  /// Haar-like orthogonal matrix from the QR factor of a Gaussian matrix.
  Matrix orthogonal(std::size_t n);
  Matrix symmetric(std::size_t n);
  Matrix positive_definite(std::size_t n);

 private:
  std::mt19937_64 engine_;
};

}  // namespace rmono
