// SPDX-License-Identifier: Apache-2.0
//
// Finite-dimensional pseudo-adjoint algebra.
//
// An operator O : V+ -> V- between spaces carrying Hermitian automorphisms
// eta+ and eta- has the pseudo-adjoint O# = eta+^{-1} O^dagger eta-. O is
// eta-pseudo-Hermitian when V+ = V-, eta+ = eta- = eta and O# = O, which is
// the same as eta O = O^dagger eta.

#pragma once

#include <complex>
#include <cstdint>
#include <random>

#include <Eigen/Dense>

#include "pseudoherm/error.hpp"

namespace pseudoherm {

using cplx = std::complex<double>;
using Index = Eigen::Index;
using Op = Eigen::MatrixXcd;
using StateVec = Eigen::VectorXcd;

/// Default relative tolerance for algebraic identities.
inline constexpr double kDefaultTol = 1e-10;

/// Throws DimensionError unless `op` is square, ValidationError on NaN/Inf.
void validate_op(const Op& op, const char* what = "operator");

bool is_finite(const Op& op);

/// ||a - b||_F / max(||a||_F, ||b||_F); 0 when both vanish.
double relative_difference(const Op& a, const Op& b);

/// ||[a, b]||_F.
double commutator_norm(const Op& a, const Op& b);

/// A validated Hermitian invertible operator with its inverse cached.
///
/// Construction symmetrizes the input as (eta + eta^dagger)/2 after checking
/// that the antihermitian part is within `tol` relative, then computes the
/// inverse once. Everything downstream reuses the cached inverse.
class Metric {
 public:
  explicit Metric(const Op& eta, double tol = kDefaultTol);

  static Metric identity(Index dim);
  /// diag(signature); entries must be nonzero reals.
  static Metric diagonal(const Eigen::VectorXd& signature);
  /// diag(a, b), reusing the cached inverses.
  static Metric block_diagonal(const Metric& a, const Metric& b);

  const Op& op() const noexcept { return op_; }
  const Op& inverse() const noexcept { return inverse_; }
  Index dim() const noexcept { return op_.rows(); }
  /// ||eta - eta^dagger||_F / ||eta||_F of the input, before symmetrization.
  double hermiticity_residual() const noexcept { return hermiticity_residual_; }
  /// 1-norm condition number ||eta||_1 ||eta^{-1}||_1.
  double condition_estimate() const noexcept { return condition_estimate_; }

 private:
  struct Trusted {};
  Metric(Trusted, Op op, Op inverse);

  Op op_;
  Op inverse_;
  double hermiticity_residual_ = 0.0;
  double condition_estimate_ = 1.0;
};

/// O# = eta_plus^{-1} O^dagger eta_minus for O : V+ -> V-.
/// O has eta_minus.dim() rows and eta_plus.dim() columns.
Op pseudo_adjoint(const Op& O, const Metric& eta_plus, const Metric& eta_minus);
Op pseudo_adjoint(const Op& O, const Metric& eta);

/// ||eta H - H^dagger eta||_F / (||eta||_F ||H||_F); 0 for H = 0.
double pseudo_hermiticity_residual(const Op& H, const Metric& eta);

/// <psi1| eta |psi2>, conjugate-linear in the first argument.
cplx indefinite_inner(const StateVec& psi1, const StateVec& psi2, const Metric& eta);

/// Real value of <psi|eta|psi>. Throws ValidationError if the imaginary part
/// exceeds tol * ||eta||_F ||psi||^2.
double eta_semi_norm_sq(const StateVec& psi, const Metric& eta, double tol = kDefaultTol);

struct Transported {
  Op op;
  Metric eta;
};

/// (U^dagger O U, U^dagger eta U). Requires ||U^dagger U - I||_F <= tol.
Transported unitary_transport(const Op& O, const Metric& eta, const Op& U,
                              double tol = kDefaultTol);

/// eta2^{-1} eta1; commutes with any H that is pseudo-Hermitian for both.
Op symmetry_candidate(const Metric& eta1, const Metric& eta2);

// Random instances ---------------------------------------------------------

/// Mixes (seed, stream) into a well-spread 64-bit seed (splitmix64).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(derive_seed(seed, 0)) {}
  double normal() { return normal_(engine_); }
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }
  bool coin() { return std::bernoulli_distribution(0.5)(engine_); }
  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

/// Complex Ginibre matrix, entries (N(0,1) + i N(0,1)) / sqrt(2).
Op random_ginibre(Index rows, Index cols, Rng& rng);

/// Haar-distributed unitary from the phase-corrected QR of a Ginibre matrix.
Op random_unitary(Index dim, Rng& rng);

/// Q diag(s_k d_k) Q^dagger with Q unitary, d_k in [0.5, 2] and random signs.
/// At least one sign is negative when dim > 1, so the metric is indefinite.
Metric random_metric(Index dim, Rng& rng);

/// H = (B + eta^{-1} B^dagger eta) / 2 for a Ginibre B seeded by `seed`.
Op random_pseudo_hermitian(const Metric& eta, Index dim, std::uint64_t seed);

}  // namespace pseudoherm
