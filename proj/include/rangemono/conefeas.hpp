// Does a linear subspace meet a cone only at the origin?
//
// Two cones are supported: the PSD cone in S^n (subspaces given in svec
// coordinates) and the nonnegative orthant in R^n. A decision either
// exhibits a nonzero witness in the intersection or a certificate in the
// orthogonal complement that lies strictly inside the (self-dual) cone.
#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "rangemono/matrix.hpp"
#include "rangemono/sampling.hpp"

namespace rmono {

enum class Ambient { SymSpace, Vector };

struct SubspaceSpec {
  Ambient ambient = Ambient::Vector;
  std::size_t n = 0;  // matrix order or vector length
  Matrix basis;       // orthonormal columns, length d = n(n+1)/2 or n

  /// Orthonormalizes the spanning columns (svec coordinates).
  static SubspaceSpec symmetric(std::size_t n, const Matrix& spanning, const Tolerances& tol = {});
  static SubspaceSpec symmetric(std::size_t n, const std::vector<Matrix>& spanning, const Tolerances& tol = {});
  static SubspaceSpec vectors(std::size_t n, const Matrix& spanning, const Tolerances& tol = {});

  std::size_t ambient_dim() const;
  std::size_t dim() const { return basis.cols(); }
};

enum class ConeStatus { TrivialCertified, NontrivialWitness, Undecided };
const char* to_string(ConeStatus s);

struct ConeDecision {
  ConeStatus status = ConeStatus::Undecided;
  std::optional<Vector> witness;      // in S and in the cone, unit trace / unit sum
  std::optional<Vector> certificate;  // in S-perp, strictly inside the cone
  std::string method;
};

struct PsdSearchOptions {
  int starts = 16;
  int iterations = 5000;
  int ascent_steps = 5000;
  std::uint64_t seed = 1;
};

/// Stages: trace test, Dykstra projections, dual supergradient ascent,
/// then a log-det barrier with facial reduction for boundary cases.
ConeDecision psd_intersection(const SubspaceSpec& s, const Tolerances& tol = {}, const PsdSearchOptions& opt = {});

/// Exact decision through Stiemke's alternative (two LPs). Throws
/// Inconsistent when both or neither LP succeeds.
ConeDecision orthant_intersection(const SubspaceSpec& s, const Tolerances& tol = {});

/// One alternating-projection run between {X in S : tr X = 1} and the PSD
/// cone from a random PSD start. Returns svec of a point of S with unit
/// trace and min eigenvalue >= -feas_tol, if one is reached.
std::optional<Vector> find_psd_point(const SubspaceSpec& s, Rng& rng, int iterations, const Tolerances& tol = {});

/// Re-verifies the invariants of a decision (membership, cone conditions,
/// normalization). Returns an empty string when valid, else a reason.
std::string verify_decision(const SubspaceSpec& s, const ConeDecision& d, const Tolerances& tol = {});

}  // namespace rmono
