// SPDX-License-Identifier: Apache-2.0
//
// Uniform symmetric 1-D grids and the matrix realizations of x, p and the
// parity reflection on them (hbar = 1, Dirichlet walls just outside +-L).

#pragma once

#include <functional>
#include <string>
#include <vector>

#include "pseudoherm/operators.hpp"

namespace pseudoherm {

using RealFn = std::function<double(double)>;

/// n_points odd nodes x_j = (j - (n+1)/2) * dx, j = 1..n, dx = 2L/(n+1).
/// Nodes are computed from integer offsets, so x_{n+1-j} = -x_j bit-for-bit.
class Grid1D {
 public:
  static Grid1D make(Index n_points, double half_width);

  Index n_points() const noexcept { return nodes_.size(); }
  double half_width() const noexcept { return half_width_; }
  double spacing() const noexcept { return spacing_; }
  const Eigen::VectorXd& nodes() const noexcept { return nodes_; }
  double node(Index j) const { return nodes_[j]; }
  /// Index of the mirror node -x_j.
  Index mirror(Index j) const noexcept { return n_points() - 1 - j; }

  /// f(x_j) on every node; an empty f tabulates as zero.
  Eigen::VectorXd tabulate(const RealFn& f) const;

 private:
  Grid1D(Eigen::VectorXd nodes, double half_width, double spacing)
      : nodes_(std::move(nodes)), half_width_(half_width), spacing_(spacing) {}

  Eigen::VectorXd nodes_;
  double half_width_;
  double spacing_;
};

enum class Stencil {
  /// -i (psi_{j+1} - psi_{j-1}) / (2 dx); p^2 is the compact 3-point
  /// second difference.
  Central,
  /// Sinc (band-limited) derivative, D_jk = (-1)^{j-k} / ((j-k) dx); p^2 is
  /// Pmom * Pmom. Dense, spectrally accurate on smooth decaying states.
  Sinc,
};

std::string to_string(Stencil stencil);
Stencil parse_stencil(const std::string& name);

struct GridOps {
  Grid1D grid;
  Stencil stencil;
  Op X;     // diag(x_j)
  Op Pmom;  // Hermitian, Par Pmom Par = -Pmom
  Op Kin;   // realization of p^2, real symmetric and parity-even
  Op Par;   // anti-identity permutation
};

GridOps build_ops(const Grid1D& grid, Stencil stencil = Stencil::Central);

enum class Parity { Even, Odd };

/// Node indices j where f(x_j) and +-f(-x_j) differ by more than
/// tol * (1 + |f(x_j)|).
std::vector<Index> parity_violations(const Grid1D& grid, const RealFn& f, Parity parity,
                                     double tol = 1e-12);

/// Tabulates f on the nodes after checking its parity, then projects onto the
/// exact even or odd part so mirror nodes agree bit-for-bit. Throws
/// ValidationError listing the offending nodes.
Eigen::VectorXd tabulate_with_parity(const Grid1D& grid, const RealFn& f, Parity parity,
                                     const char* name, double tol = 1e-12);

/// H = p^2 / (2 mass) + diag(V_even(x_j) + i V_odd(x_j)).
Op schrodinger_hamiltonian(const GridOps& ops, double mass, const RealFn& v_even,
                           const RealFn& v_odd);

/// p^2 + x^2 p  (PT-symmetric, not P-pseudo-Hermitian).
Op example_h1(const GridOps& ops);

/// p^2 + i (x^2 p + p x^2)  (P-pseudo-Hermitian, not PT-symmetric).
Op example_h2(const GridOps& ops);

}  // namespace pseudoherm
