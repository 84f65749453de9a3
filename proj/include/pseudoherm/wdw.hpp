// SPDX-License-Identifier: Apache-2.0
//
// Two-component Wheeler-DeWitt Hamiltonian for an FRW minisuperspace coupled
// to a massive scalar field phi. The log scale factor alpha plays the role of
// time and
//   D = -d^2/dphi^2 + m^2 e^{6 alpha} phi^2 - kappa e^{4 alpha},
//   H = 1/2 [[1 + D, -1 + D], [1 - D, -1 - D]],
// which is pseudo-Hermitian for the Klein-Gordon metric diag(1, -1) (x) I.
// Each eigenvalue d of D gives the pair +-sqrt(d) of H.

#pragma once

#include <optional>
#include <vector>

#include "pseudoherm/biorthogonal.hpp"
#include "pseudoherm/discretize.hpp"

namespace pseudoherm {

class WdwModel {
 public:
  WdwModel(int kappa, double mass, double alpha, Grid1D phi_grid,
           Stencil stencil = Stencil::Central);

  int kappa() const noexcept { return kappa_; }
  double mass() const noexcept { return mass_; }
  double alpha() const noexcept { return alpha_; }
  const Grid1D& phi_grid() const noexcept { return grid_; }
  Stencil stencil() const noexcept { return stencil_; }
  /// m e^{3 alpha}
  double omega() const;

  WdwModel at_alpha(double alpha) const;

 private:
  int kappa_;
  double mass_;
  double alpha_;
  Grid1D grid_;
  Stencil stencil_;
};

/// Default phi half-width max(6, 6/sqrt(omega)).
double default_phi_half_width(double omega);

/// Discrete D on the phi grid (real symmetric).
Op wdw_d_operator(const WdwModel& model);

/// The 2N x 2N block Hamiltonian built from D.
Op wdw_hamiltonian(const Op& D);

/// diag(1, -1) (x) I_n.
Metric wdw_metric(Index n);

/// alpha* = ln(m (2n + 1)) where mode n of a closed (kappa = +1) universe
/// turns imaginary. Empty for kappa != +1.
std::optional<double> wdw_reality_boundary(const WdwModel& model, int n);

struct WdwSpectrum {
  Eigen::VectorXcd eigenvalues;    // of H, sorted by (|E|, Re E, Im E)
  Eigen::VectorXd d_eigenvalues;   // of D, ascending
  SpectrumClass classification;
  /// D has an eigenvalue within tolerance of zero: H has a 2x2 Jordan block.
  bool boundary_case = false;
};

/// Dense eigenvalues of H plus the Hermitian eigenvalues of D.
WdwSpectrum wdw_spectrum(const WdwModel& model, double pair_tol = 1e-8);

/// alpha -> H(alpha) with alpha = alpha0 + rate * t, for time evolution.
std::function<Op(double)> wdw_generator(const WdwModel& model, double rate);

}  // namespace pseudoherm
