// SPDX-License-Identifier: Apache-2.0
//
// Pseudo-supersymmetric quantum mechanics on H+ (+) H-.
//
// Given D : H+ -> H- and metrics eta+-, the partner Hamiltonians
//   H+ = D# D / 2,  H- = D D# / 2,  D# = eta+^{-1} D^dagger eta-
// are eta+- pseudo-Hermitian and intertwined by D. With the odd charge
// Q = [[0, 0], [D, 0]] and the grading tau = diag(1, -1) they close the
// algebra Q^2 = Q#^2 = 0, {Q, Q#} = 2H.
//
// The first-order family D = p + f(x) + i g(x) with eta+- = +-P gives a
// Hermitian H+ (hence a real spectrum for H- too) whenever g is odd and
// equals -f+'/(2 f+). Writing f+ = lambda e^xi, xi even:
//   H+ = 1/2 ([p + f-]^2 + xi'^2/4 - xi''/2 - lambda^2 e^{2 xi})
//   H- = 1/2 ([p + f-]^2 + xi'^2/4 + xi''/2 - lambda^2 e^{2 xi}
//             + 2 i lambda e^xi xi')

#pragma once

#include <string>
#include <utility>
#include <vector>

#include "pseudoherm/biorthogonal.hpp"
#include "pseudoherm/discretize.hpp"

namespace pseudoherm {

struct Grading {
  Op tau;
  /// diag(I_{n_plus}, -I_{n_minus}).
  static Grading make(Index n_plus, Index n_minus);
};

struct SusyPair {
  Op D;        // n_minus x n_plus
  Op D_sharp;  // n_plus x n_minus
  Op H_plus;
  Op H_minus;
  Metric eta_plus;
  Metric eta_minus;
  Metric eta;  // diag(eta+, eta-)
  Op Q;        // [[0, 0], [D, 0]]
  Op Q_sharp;  // [[0, D#], [0, 0]]
  Op H;        // diag(H+, H-)
  Grading tau;
};

SusyPair build_susy_pair(const Op& D, const Metric& eta_plus, const Metric& eta_minus);

/// All residuals are Frobenius norms relative to the natural scale of the
/// identity being checked (0 for exact identities).
struct SusyResiduals {
  double d_sharp = 0.0;          // D# vs eta+^{-1} D^dagger eta-
  double q_sharp = 0.0;          // Q# vs eta^{-1} Q^dagger eta
  double q_square = 0.0;         // ||Q^2||
  double q_sharp_square = 0.0;   // ||Q#^2||
  double anticommutator = 0.0;   // {Q, Q#} vs 2H
  double intertwining = 0.0;     // D H+ vs H- D
  double intertwining_sharp = 0.0;  // D# H- vs H+ D#
  double grading_charge = 0.0;   // {tau, Q}
  double grading_metric = 0.0;   // [tau, eta]
  double grading_hamiltonian = 0.0;  // [tau, H]
  double pseudo_hermiticity_plus = 0.0;
  double pseudo_hermiticity_minus = 0.0;
};

SusyResiduals susy_residuals(const SusyPair& pair);

/// ||D H+ - H- D||_F / (||D||_F max(||H+||_F, ||H-||_F)).
double intertwining_residual(const Op& D, const Op& H_plus, const Op& H_minus);

struct LevelMatch {
  cplx energy;          // eigenvalue of the source Hamiltonian
  cplx partner_energy;  // nearest eigenvalue of the partner
  double mismatch = 0.0;         // |energy - partner_energy| / max(1, |energy|)
  double vector_residual = 0.0;  // ||H' w - E w|| / (||H'|| ||w||), w the mapped vector
};

struct SpectralMapReport {
  std::vector<LevelMatch> forward;    // H+ eigenvectors pushed through D
  std::vector<LevelMatch> backward;   // H- eigenvectors pushed through D#
  std::vector<cplx> zero_modes_plus;   // D v = 0
  std::vector<cplx> zero_modes_minus;  // D# w = 0
  double max_mismatch = 0.0;
  double max_vector_residual = 0.0;
  double max_zero_mode_energy = 0.0;
};

/// Checks that D (resp. D#) carries each of the lowest `levels` eigenvectors
/// of H+ (resp. H-) to an eigenvector of the partner with the same
/// eigenvalue, unless ||D v|| <= kernel_tol ||D||_F ||v||, in which case the
/// vector is reported as a zero mode.
SpectralMapReport spectral_map(const SusyPair& pair, Index levels, double kernel_tol = 1e-8);

// First-order family ----------------------------------------------------------

/// The even function xi with its first two derivatives. When `first` and
/// `second` are empty, derivatives come from finite differences whose order
/// follows the momentum stencil.
struct XiProfile {
  RealFn value;
  RealFn first;
  RealFn second;
  std::string label;

  bool analytic() const { return static_cast<bool>(first) && static_cast<bool>(second); }

  /// xi = -(x/ell)^{2n}, n >= 1, ell > 0.
  static XiProfile polynomial(int n, double ell);
  static XiProfile constant(double c);
  static XiProfile numeric(RealFn value, std::string label);
};

struct FirstOrderData {
  Grid1D grid;
  Stencil stencil = Stencil::Sinc;
  RealFn f_minus;   // odd; empty means zero
  XiProfile xi;     // even
  double lambda = 1.0;
  RealFn g_plus;    // even part of g; empty means zero
};

/// FirstOrderData tabulated on the grid nodes.
struct FirstOrderTerms {
  Grid1D grid;
  Stencil stencil;
  double lambda = 0.0;
  Eigen::VectorXd xi, xi1, xi2;
  Eigen::VectorXd f_plus, f_minus, g_plus, g_minus;
  /// xi' vanishes on every node: H- is Hermitian as well.
  bool degenerate = false;

  /// All terms zero (D = p).
  static FirstOrderTerms zero(const Grid1D& grid, Stencil stencil);
};

/// Validates parities, lambda != 0 and g+ = 0, then tabulates
/// f+ = lambda e^xi and g- = -xi'/2.
FirstOrderTerms hermitian_plus_condition(const FirstOrderData& data);

GridOps grid_ops_for(const FirstOrderTerms& terms);

/// D = p + f(x) + i g(x), f = f+ + f-, g = g+ + g-.
Op first_order_D(const FirstOrderTerms& terms, const GridOps& ops);

/// D# written out for eta+- = +-P: p - f+ + f- + i (g+ - g-).
Op first_order_D_sharp(const FirstOrderTerms& terms, const GridOps& ops);

/// (eta+, eta-) = (P, -P).
std::pair<Metric, Metric> parity_metrics(const GridOps& ops);

struct XiFamily {
  Op H_plus;
  Op H_minus;
};

/// The closed-form partner Hamiltonians. (p + f-)^2 is realized as
/// Kin + Pmom f- + f- Pmom + f-^2, which keeps H+ exactly Hermitian.
XiFamily xi_family_hamiltonians(const FirstOrderTerms& terms, const GridOps& ops);

struct PartnerSpectra {
  Eigen::VectorXcd plus;    // lowest `levels` of H+, zero modes removed
  Eigen::VectorXcd minus;   // lowest `levels` of H-, zero modes removed
  Index zero_modes_plus = 0;
  Index zero_modes_minus = 0;
  double max_relative_gap = 0.0;   // max |E+ - E-| / max(1, |E+|)
  double max_imag_minus = 0.0;     // over the resolved H- levels
  double max_imag_plus = 0.0;
};

/// Sorts both spectra by real part, drops |E| <= zero_tol * spectral radius,
/// and compares the lowest `levels`. The imaginary-part maxima run over the
/// lowest `resolved` levels.
PartnerSpectra compare_partner_spectra(const Op& H_plus, const Op& H_minus, Index levels,
                                       Index resolved, double zero_tol = 1e-8);

/// Number of low modes treated as resolved on an n-point grid: n / 4.
Index resolved_mode_count(Index n_points);

}  // namespace pseudoherm
