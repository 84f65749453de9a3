// SPDX-License-Identifier: Apache-2.0
//
// Biorthonormal eigensystems, spectrum classification and explicit metric
// construction.
//
// For a diagonalizable H the right eigenvectors psi_k (columns of R) and the
// left eigenvectors phi_k (columns of L = R^{-dagger}) satisfy
//   <phi_m|psi_n> = delta_mn,   sum_k |psi_k><phi_k| = 1.
// H is pseudo-Hermitian exactly when its spectrum is real or made of complex
// conjugate pairs of equal multiplicity, and then
//   eta = sum_real |phi><phi| + sum_pairs (|phi_-><phi_+| + |phi_+><phi_-|)
// is a metric for it.

#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pseudoherm/operators.hpp"

namespace pseudoherm {

/// A group of numerically equal eigenvalues.
struct Cluster {
  cplx value;                   // mean of the member eigenvalues
  std::vector<Index> members;   // basis-vector indices
  Index multiplicity() const { return static_cast<Index>(members.size()); }
};

struct BiSystem {
  Eigen::VectorXcd eigenvalues;  // one per basis vector
  Op right;                      // columns |psi_k>
  Op left;                       // columns |phi_k>, <phi_m|psi_n> = delta_mn
  std::vector<Cluster> clusters;
  std::vector<Index> cluster_of;  // basis-vector index -> cluster index
  double completeness_residual = 0.0;       // ||R L^dagger - I||_F
  double biorthonormality_residual = 0.0;   // ||L^dagger R - I||_F
  double eigen_residual = 0.0;              // ||H R - R Lambda||_F / (||H|| ||R||)
  double condition_number = 1.0;            // 2-norm condition of R

  Index dim() const { return eigenvalues.size(); }
  Index multiplicity(Index k) const { return clusters[cluster_of[k]].multiplicity(); }
};

struct BiorthonormalOptions {
  /// Eigenvalues closer than cluster_tol * max(1, spectral radius) are merged.
  double cluster_tol = 1e-8;
  /// Condition number of R above which H is declared defective.
  double max_condition = 1e12;
};

/// Right eigenvectors from the dense complex eigensolver, left vectors from
/// the inverse of R. Degenerate clusters get an orthonormal basis of the
/// null space of H - lambda. Throws DefectiveMatrix when R is too badly
/// conditioned or a cluster has fewer eigenvectors than its multiplicity.
BiSystem eig_biorthonormal(const Op& H, const BiorthonormalOptions& options = {});

/// Union-find grouping of `values` whose distance is <= threshold.
std::vector<Cluster> cluster_eigenvalues(const Eigen::VectorXcd& values, double threshold);

/// Dense eigenvalues only. Uses the real solver when H has no imaginary part.
Eigen::VectorXcd eigenvalues(const Op& H);

/// Sort permutation by (real part, imaginary part).
std::vector<Index> order_by_real_part(const Eigen::VectorXcd& values);

enum class SpectrumKind { AllReal, ConjugatePaired, Mixed, NotPseudoHermitian };

std::string to_string(SpectrumKind kind);

struct SpectrumClass {
  std::vector<Index> real_indices;
  /// (index with Im > 0, index with Im < 0)
  std::vector<std::pair<Index, Index>> pairs;
  std::vector<Index> unpaired;
  SpectrumKind kind = SpectrumKind::AllReal;
  double pair_tol = 0.0;

  bool pseudo_hermitian() const { return kind != SpectrumKind::NotPseudoHermitian; }
  /// Partner index for each basis vector, -1 for real or unpaired ones.
  std::vector<Index> partners(Index dim) const;
};

/// Eigenvalues with |Im E| <= pair_tol (1 + |E|) are real; the rest are
/// matched greedily by smallest |E_i - conj(E_j)| among equal-multiplicity
/// candidates within the same tolerance. Ties go to the lower index.
SpectrumClass classify_spectrum(const BiSystem& sys, double pair_tol);

/// Same rule on a bare eigenvalue list; `multiplicity[k]` is the cluster size
/// of value k (all ones when empty).
SpectrumClass classify_eigenvalues(const Eigen::VectorXcd& values, double pair_tol,
                                   const std::vector<Index>& multiplicity = {});

struct GaugeAlignment {
  /// c^(n0)_ab = <phi_a| eta^{-1} |phi_b> per real cluster, before alignment.
  std::vector<Op> c_real;
  /// c^(n+)_ab = <phi_{-,a}| eta^{-1} |phi_{+,b}> per conjugate cluster pair.
  std::vector<Op> c_pair;
  /// Cluster indices of each entry of c_real / c_pair.
  std::vector<Index> real_clusters;
  std::vector<std::pair<Index, Index>> pair_clusters;
  /// Per basis vector: factor applied to |psi> (its inverse goes to |phi>).
  Eigen::VectorXd rescale_factors;
  /// Per basis vector: +-1 for real-eigenvalue vectors, +1 otherwise. A
  /// negative entry is a direction where <phi|eta^{-1}|phi> < 0, which no
  /// rescaling can turn positive.
  Eigen::VectorXi signs;
  /// Per basis vector: aligned partner index (conjugate eigenvalue), -1 if real.
  std::vector<Index> partner;
  /// Largest ||c' - target||_F over all blocks after alignment.
  double residual = 0.0;
};

struct AlignedSystem {
  BiSystem system;
  GaugeAlignment alignment;
};

/// Rotates and rescales each degenerate block so that the c-matrices become
/// diag(signs) (real clusters) or the identity (conjugate pairs), which gives
/// phi_0 = sign eta psi_0 and phi_+- = eta psi_-+. Throws ValidationError if
/// a c-block is singular, meaning eta does not pair the eigenspaces.
AlignedSystem align_gauge(const BiSystem& sys, const SpectrumClass& cls, const Metric& eta);
AlignedSystem align_gauge(const BiSystem& sys, const Metric& eta, double pair_tol = 1e-8);

/// Gram matrix G_ij = <psi_i| eta |psi_j>.
Op eta_gram(const BiSystem& sys, const Metric& eta);

/// The block pattern expected of eta_gram after alignment: signs on the real
/// diagonal, ones on (k, partner[k]), zeros elsewhere.
Op expected_gram_pattern(const GaugeAlignment& alignment);

/// Assembles eta from the left vectors with unit weights, then symmetrizes.
/// Throws ValidationError if the classification has unpaired eigenvalues.
Metric construct_eta(const BiSystem& sys, const SpectrumClass& cls);

/// The same sums with right vectors in place of left ones; the inverse of
/// construct_eta's result.
Op construct_eta_inverse(const BiSystem& sys, const SpectrumClass& cls);

/// H = sum_k E_k |psi_k><phi_k| with psi = columns of `basis`, phi from its
/// inverse. The spectrum must be real or conjugate-paired (checked with
/// `pair_tol`). Throws ValidationError for a singular basis.
Op synthesize_hamiltonian(const Eigen::VectorXcd& spectrum, const Op& basis,
                          double pair_tol = 1e-12);

/// ||P conj(H) P - H||_F / ||H||_F, with time reversal as entrywise complex
/// conjugation in the represented basis. Throws ValidationError unless P^2 = I.
double is_pt_symmetric(const Op& H, const Op& parity, double tol = kDefaultTol);

/// Certificate produced by the eig -> classify -> construct pipeline.
struct Certificate {
  BiSystem system;
  SpectrumClass classification;
  std::optional<Metric> eta;   // empty when not pseudo-Hermitian
  double residual = 0.0;       // pseudo_hermiticity_residual(H, eta)
};

Certificate certify_pseudo_hermiticity(const Op& H, double pair_tol,
                                       const BiorthonormalOptions& options = {});

}  // namespace pseudoherm
