// SPDX-License-Identifier: Apache-2.0

#include "pseudoherm/discretize.hpp"

#include <cmath>
#include <sstream>

namespace pseudoherm {

Grid1D Grid1D::make(Index n_points, double half_width) {
  if (n_points < 3 || n_points % 2 == 0) {
    throw ValidationError("grid needs an odd number of points >= 3 (got " +
                          std::to_string(n_points) + ")");
  }
  if (!(half_width > 0.0) || !std::isfinite(half_width)) {
    throw ValidationError("grid half-width must be positive and finite");
  }
  const double dx = 2.0 * half_width / static_cast<double>(n_points + 1);
  const Index centre = (n_points - 1) / 2;
  Eigen::VectorXd nodes(n_points);
  for (Index j = 0; j < n_points; ++j) nodes[j] = static_cast<double>(j - centre) * dx;
  return Grid1D(std::move(nodes), half_width, dx);
}

Eigen::VectorXd Grid1D::tabulate(const RealFn& f) const {
  Eigen::VectorXd v = Eigen::VectorXd::Zero(n_points());
  if (!f) return v;
  for (Index j = 0; j < n_points(); ++j) v[j] = f(nodes_[j]);
  return v;
}

std::string to_string(Stencil stencil) {
  return stencil == Stencil::Central ? "central" : "sinc";
}

Stencil parse_stencil(const std::string& name) {
  if (name == "central") return Stencil::Central;
  if (name == "sinc") return Stencil::Sinc;
  throw ValidationError("unknown stencil '" + name + "' (expected central or sinc)");
}

GridOps build_ops(const Grid1D& grid, Stencil stencil) {
  const Index n = grid.n_points();
  const double dx = grid.spacing();

  Eigen::MatrixXd deriv = Eigen::MatrixXd::Zero(n, n);
  Eigen::MatrixXd kin = Eigen::MatrixXd::Zero(n, n);
  if (stencil == Stencil::Central) {
    const double h = 1.0 / (2.0 * dx);
    const double k = 1.0 / (dx * dx);
    for (Index j = 0; j < n; ++j) {
      kin(j, j) = 2.0 * k;
      if (j + 1 < n) {
        deriv(j, j + 1) = h;
        deriv(j + 1, j) = -h;
        kin(j, j + 1) = -k;
        kin(j + 1, j) = -k;
      }
    }
  } else {
    for (Index j = 0; j < n; ++j) {
      for (Index k = 0; k < n; ++k) {
        if (j == k) continue;
        const Index off = j - k;
        const double sign = (off % 2 == 0) ? 1.0 : -1.0;
        deriv(j, k) = sign / (static_cast<double>(off) * dx);
      }
    }
    // Pmom^2 = -deriv^2; average away the roundoff of the product so that
    // symmetry and parity-evenness hold exactly.
    kin = -(deriv * deriv);
    kin = ((kin + kin.transpose()) / 2.0).eval();
    kin = ((kin + kin.reverse()) / 2.0).eval();
  }

  GridOps ops{grid, stencil, Op::Zero(n, n), Op::Zero(n, n), Op::Zero(n, n), Op::Zero(n, n)};
  for (Index j = 0; j < n; ++j) {
    ops.X(j, j) = grid.node(j);
    ops.Par(j, grid.mirror(j)) = 1.0;
  }
  ops.Pmom = cplx(0.0, -1.0) * deriv.cast<cplx>();
  ops.Kin = kin.cast<cplx>();
  return ops;
}

std::vector<Index> parity_violations(const Grid1D& grid, const RealFn& f, Parity parity,
                                     double tol) {
  const Eigen::VectorXd v = grid.tabulate(f);
  const double s = parity == Parity::Even ? 1.0 : -1.0;
  std::vector<Index> bad;
  for (Index j = 0; j < grid.n_points(); ++j) {
    const double mirrored = s * v[grid.mirror(j)];
    if (!std::isfinite(v[j]) || std::abs(v[j] - mirrored) > tol * (1.0 + std::abs(v[j]))) {
      bad.push_back(j);
    }
  }
  return bad;
}

Eigen::VectorXd tabulate_with_parity(const Grid1D& grid, const RealFn& f, Parity parity,
                                     const char* name, double tol) {
  const std::vector<Index> bad = parity_violations(grid, f, parity, tol);
  if (!bad.empty()) {
    std::ostringstream os;
    os << name << " is not " << (parity == Parity::Even ? "even" : "odd") << " on "
       << bad.size() << " node(s):";
    for (std::size_t k = 0; k < bad.size() && k < 8; ++k) {
      os << " x[" << bad[k] << "]=" << grid.node(bad[k]);
    }
    if (bad.size() > 8) os << " ...";
    throw ValidationError(os.str());
  }
  const Eigen::VectorXd v = grid.tabulate(f);
  const double s = parity == Parity::Even ? 1.0 : -1.0;
  Eigen::VectorXd out(v.size());
  for (Index j = 0; j < v.size(); ++j) out[j] = 0.5 * (v[j] + s * v[grid.mirror(j)]);
  return out;
}

Op schrodinger_hamiltonian(const GridOps& ops, double mass, const RealFn& v_even,
                           const RealFn& v_odd) {
  if (!(mass > 0.0)) throw ValidationError("mass must be positive");
  const Eigen::VectorXd ve = tabulate_with_parity(ops.grid, v_even, Parity::Even, "V_even");
  const Eigen::VectorXd vo = tabulate_with_parity(ops.grid, v_odd, Parity::Odd, "V_odd");
  Op h = ops.Kin / (2.0 * mass);
  for (Index j = 0; j < h.rows(); ++j) h(j, j) += cplx(ve[j], vo[j]);
  return h;
}

Op example_h1(const GridOps& ops) {
  const Op x2 = ops.X * ops.X;
  return ops.Kin + x2 * ops.Pmom;
}

Op example_h2(const GridOps& ops) {
  const Op x2 = ops.X * ops.X;
  return ops.Kin + cplx(0.0, 1.0) * (x2 * ops.Pmom + ops.Pmom * x2);
}

}  // namespace pseudoherm
