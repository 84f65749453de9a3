// SPDX-License-Identifier: Apache-2.0
//
// Batch kernels over independent random instances or parameter values.
// Instance i draws from derive_seed(seed, i), so Exec::Serial and
// Exec::Parallel produce identical results.

#pragma once

#include <cstdint>
#include <vector>

#include "pseudoherm/biorthogonal.hpp"
#include "pseudoherm/wdw.hpp"

namespace pseudoherm {

enum class Exec { Serial, Parallel };

/// Worker threads used by Exec::Parallel (1 without OpenMP).
int parallel_threads();

// Sharp-adjoint identities ----------------------------------------------------

struct SharpAlgebraInstance {
  double involution = 0.0;     // (O#)# vs O
  double antilinearity = 0.0;  // (z1 O1 + z2 O2)# vs z1* O1# + z2* O2#
  double product = 0.0;        // (B A)# vs A# B# across three metrics
  double identity = 0.0;       // I# vs I
};

struct SharpAlgebraSummary {
  std::vector<SharpAlgebraInstance> instances;
  double max_involution = 0.0;
  double max_antilinearity = 0.0;
  double max_product = 0.0;
  double max_identity = 0.0;
  double max_all() const;
};

/// Each instance draws three random indefinite metrics eta1..3 on C^dim,
/// operators A, A' : V1 -> V2 and B : V2 -> V3, and complex scalars.
SharpAlgebraSummary sharp_algebra_batch(Index instances, Index dim, std::uint64_t seed, Exec exec);

// Forward direction: pseudo-Hermitian => real or conjugate-paired spectrum --

struct ForwardInstance {
  SpectrumKind kind = SpectrumKind::AllReal;
  Index real_count = 0;
  Index pair_count = 0;
  double generator_residual = 0.0;  // pseudo_hermiticity_residual(H, eta)
  double pair_tol = 0.0;
};

struct ForwardSummary {
  std::vector<ForwardInstance> instances;
  Index all_real = 0;
  Index paired = 0;
  Index mixed = 0;
  Index not_pseudo_hermitian = 0;
  double max_generator_residual = 0.0;
};

/// H = random_pseudo_hermitian(eta, dim) for a random indefinite eta; the
/// spectrum is classified with pair_tol = pair_scale * spectral radius.
ForwardSummary spectrum_forward_batch(Index instances, Index dim, std::uint64_t seed,
                                     double pair_scale, Exec exec);

// Converse direction: real or paired spectrum => explicit metric -------------

struct ConverseInstance {
  double residual = 0.0;            // ||eta H - H^dagger eta|| / (||eta|| ||H||)
  double eta_hermiticity = 0.0;     // of eta before symmetrization
  double gram_error = 0.0;          // max |G - pattern| after gauge alignment
  double completeness = 0.0;        // ||R L^dagger - I||
  Eigen::VectorXi signs;
};

struct ConverseSummary {
  std::vector<ConverseInstance> instances;
  double max_residual = 0.0;
  double max_eta_hermiticity = 0.0;
  double max_gram_error = 0.0;
};

/// H = R diag(spectrum) R^{-1} for Ginibre R, then eig -> classify ->
/// construct_eta -> align_gauge.
ConverseSummary metric_converse_batch(const Eigen::VectorXcd& spectrum, Index instances,
                                       std::uint64_t seed, double pair_tol, Exec exec);

// WDW alpha sweep -------------------------------------------------------------

struct WdwSweepPoint {
  double alpha = 0.0;
  SpectrumKind kind = SpectrumKind::AllReal;
  Index real_count = 0;
  Index pair_count = 0;
  bool boundary_case = false;
  Eigen::VectorXcd lowest;  // lowest `keep` eigenvalues by |E|
};

std::vector<WdwSweepPoint> wdw_alpha_sweep(const WdwModel& model, const std::vector<double>& alphas,
                                           Index keep, Exec exec);

}  // namespace pseudoherm
