// SPDX-License-Identifier: Apache-2.0

#include "pseudoherm/psusy.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace pseudoherm {

namespace {

double ratio(double num, double den) {
  return den > 0.0 ? num / den : num;
}

Op block_diag(const Op& a, const Op& b) {
  Op out = Op::Zero(a.rows() + b.rows(), a.cols() + b.cols());
  out.topLeftCorner(a.rows(), a.cols()) = a;
  out.bottomRightCorner(b.rows(), b.cols()) = b;
  return out;
}

struct SortedSystem {
  BiSystem sys;
  std::vector<Index> order;
};

SortedSystem sorted_system(const Op& H) {
  SortedSystem s{eig_biorthonormal(H), {}};
  s.order = order_by_real_part(s.sys.eigenvalues);
  return s;
}

cplx nearest(const Eigen::VectorXcd& values, cplx target) {
  Index best = 0;
  (values.array() - target).abs().minCoeff(&best);
  return values[best];
}

void push_levels(const SortedSystem& src, const Eigen::VectorXcd& partner_values, const Op& map,
                 const Op& H_partner, Index levels, double kernel_tol,
                 std::vector<LevelMatch>& matches, std::vector<cplx>& zero_modes) {
  const double map_norm = map.norm();
  const double h_norm = H_partner.norm();
  const Index count = std::min<Index>(levels, static_cast<Index>(src.order.size()));
  for (Index k = 0; k < count; ++k) {
    const Index idx = src.order[static_cast<std::size_t>(k)];
    const cplx e = src.sys.eigenvalues[idx];
    const StateVec v = src.sys.right.col(idx);
    const StateVec w = map * v;
    if (w.norm() <= kernel_tol * map_norm * v.norm()) {
      zero_modes.push_back(e);
      continue;
    }
    LevelMatch m;
    m.energy = e;
    m.partner_energy = nearest(partner_values, e);
    m.mismatch = std::abs(e - m.partner_energy) / std::max(1.0, std::abs(e));
    m.vector_residual = ratio((H_partner * w - e * w).norm(), h_norm * w.norm());
    matches.push_back(m);
  }
}

// Centred finite-difference weights on offsets 1..4 (8th order) or 1 (2nd).
struct FdWeights {
  std::vector<double> first;   // antisymmetric, weight for +k
  std::vector<double> second;  // symmetric, weight for +-k
  double centre = 0.0;         // second-derivative centre weight
};

FdWeights fd_weights(Stencil stencil) {
  if (stencil == Stencil::Central) return {{0.5}, {1.0}, -2.0};
  return {{4.0 / 5.0, -1.0 / 5.0, 4.0 / 105.0, -1.0 / 280.0},
          {8.0 / 5.0, -1.0 / 5.0, 8.0 / 315.0, -1.0 / 560.0},
          -205.0 / 72.0};
}

RealFn fd_first(RealFn f, double h, Stencil stencil) {
  const FdWeights w = fd_weights(stencil);
  return [f = std::move(f), h, w](double x) {
    double acc = 0.0;
    for (std::size_t k = 0; k < w.first.size(); ++k) {
      const double s = static_cast<double>(k + 1) * h;
      acc += w.first[k] * (f(x + s) - f(x - s));
    }
    return acc / h;
  };
}

RealFn fd_second(RealFn f, double h, Stencil stencil) {
  const FdWeights w = fd_weights(stencil);
  return [f = std::move(f), h, w](double x) {
    double acc = w.centre * f(x);
    for (std::size_t k = 0; k < w.second.size(); ++k) {
      const double s = static_cast<double>(k + 1) * h;
      acc += w.second[k] * (f(x + s) + f(x - s));
    }
    return acc / (h * h);
  };
}

Eigen::VectorXd parity_project(const Grid1D& grid, const Eigen::VectorXd& v, Parity parity) {
  const double s = parity == Parity::Even ? 1.0 : -1.0;
  Eigen::VectorXd out(v.size());
  for (Index j = 0; j < v.size(); ++j) out[j] = 0.5 * (v[j] + s * v[grid.mirror(j)]);
  return out;
}

Op diag_op(const Eigen::VectorXcd& d) {
  return d.asDiagonal();
}

}  // namespace

Grading Grading::make(Index n_plus, Index n_minus) {
  if (n_plus < 0 || n_minus < 0) throw DimensionError("grading: negative block size");
  Eigen::VectorXcd d(n_plus + n_minus);
  d.head(n_plus).setOnes();
  d.tail(n_minus).setConstant(-1.0);
  return Grading{diag_op(d)};
}

SusyPair build_susy_pair(const Op& D, const Metric& eta_plus, const Metric& eta_minus) {
  if (!is_finite(D)) throw ValidationError("D has non-finite entries");
  if (D.rows() != eta_minus.dim() || D.cols() != eta_plus.dim()) {
    std::ostringstream os;
    os << "D is " << D.rows() << "x" << D.cols() << " but eta+ has dim " << eta_plus.dim()
       << " and eta- has dim " << eta_minus.dim();
    throw DimensionError(os.str());
  }
  const Index np = D.cols();
  const Index nm = D.rows();
  const Op d_sharp = pseudo_adjoint(D, eta_plus, eta_minus);

  Op q = Op::Zero(np + nm, np + nm);
  q.bottomLeftCorner(nm, np) = D;
  const Metric eta = Metric::block_diagonal(eta_plus, eta_minus);

  SusyPair pair{D,
                d_sharp,
                0.5 * d_sharp * D,
                0.5 * D * d_sharp,
                eta_plus,
                eta_minus,
                eta,
                q,
                Op::Zero(np + nm, np + nm),
                Op(),
                Grading::make(np, nm)};
  pair.Q_sharp.topRightCorner(np, nm) = d_sharp;
  pair.H = block_diag(pair.H_plus, pair.H_minus);
  return pair;
}

double intertwining_residual(const Op& D, const Op& H_plus, const Op& H_minus) {
  const double scale = D.norm() * std::max(H_plus.norm(), H_minus.norm());
  return ratio((D * H_plus - H_minus * D).norm(), scale);
}

SusyResiduals susy_residuals(const SusyPair& p) {
  SusyResiduals r;
  r.d_sharp = relative_difference(p.D_sharp, pseudo_adjoint(p.D, p.eta_plus, p.eta_minus));
  r.q_sharp = relative_difference(p.Q_sharp, pseudo_adjoint(p.Q, p.eta));
  const double q2 = p.Q.squaredNorm();
  const double qs2 = p.Q_sharp.squaredNorm();
  r.q_square = ratio((p.Q * p.Q).norm(), q2);
  r.q_sharp_square = ratio((p.Q_sharp * p.Q_sharp).norm(), qs2);
  r.anticommutator = relative_difference(p.Q * p.Q_sharp + p.Q_sharp * p.Q, 2.0 * p.H);
  r.intertwining = intertwining_residual(p.D, p.H_plus, p.H_minus);
  r.intertwining_sharp = intertwining_residual(p.D_sharp, p.H_minus, p.H_plus);
  // tau is diagonal, so products with it are row/column sign flips.
  const auto tau = p.tau.tau.diagonal().asDiagonal();
  r.grading_charge = ratio((tau * p.Q + p.Q * tau).norm(), p.Q.norm());
  r.grading_metric = ratio((tau * p.eta.op() - p.eta.op() * tau).norm(), p.eta.op().norm());
  r.grading_hamiltonian = ratio((tau * p.H - p.H * tau).norm(), p.H.norm());
  r.pseudo_hermiticity_plus = pseudo_hermiticity_residual(p.H_plus, p.eta_plus);
  r.pseudo_hermiticity_minus = pseudo_hermiticity_residual(p.H_minus, p.eta_minus);
  return r;
}

SpectralMapReport spectral_map(const SusyPair& pair, Index levels, double kernel_tol) {
  if (levels < 0) throw ValidationError("spectral_map: levels must be non-negative");
  const SortedSystem plus = sorted_system(pair.H_plus);
  const SortedSystem minus = sorted_system(pair.H_minus);

  SpectralMapReport rep;
  push_levels(plus, minus.sys.eigenvalues, pair.D, pair.H_minus, levels, kernel_tol, rep.forward,
              rep.zero_modes_plus);
  push_levels(minus, plus.sys.eigenvalues, pair.D_sharp, pair.H_plus, levels, kernel_tol,
              rep.backward, rep.zero_modes_minus);

  for (const auto* list : {&rep.forward, &rep.backward}) {
    for (const LevelMatch& m : *list) {
      rep.max_mismatch = std::max(rep.max_mismatch, m.mismatch);
      rep.max_vector_residual = std::max(rep.max_vector_residual, m.vector_residual);
    }
  }
  for (const auto* list : {&rep.zero_modes_plus, &rep.zero_modes_minus}) {
    for (cplx e : *list) rep.max_zero_mode_energy = std::max(rep.max_zero_mode_energy, std::abs(e));
  }
  return rep;
}

// First-order family ----------------------------------------------------------

XiProfile XiProfile::polynomial(int n, double ell) {
  if (n < 1) throw ValidationError("xi polynomial order n must be >= 1");
  if (!(ell > 0.0) || !std::isfinite(ell)) throw ValidationError("xi length ell must be positive");
  const double p = 2.0 * n;
  const double scale = std::pow(ell, -p);
  XiProfile xi;
  xi.value = [p, scale](double x) { return -scale * std::pow(x, p); };
  xi.first = [p, scale](double x) { return -p * scale * std::pow(x, p - 1.0); };
  xi.second = [p, scale](double x) {
    return p == 2.0 ? -2.0 * scale : -p * (p - 1.0) * scale * std::pow(x, p - 2.0);
  };
  std::ostringstream os;
  os << "poly:" << n << ":" << ell;
  xi.label = os.str();
  return xi;
}

XiProfile XiProfile::constant(double c) {
  XiProfile xi;
  xi.value = [c](double) { return c; };
  xi.first = [](double) { return 0.0; };
  xi.second = [](double) { return 0.0; };
  xi.label = "const:" + std::to_string(c);
  return xi;
}

XiProfile XiProfile::numeric(RealFn value, std::string label) {
  XiProfile xi;
  xi.value = std::move(value);
  xi.label = std::move(label);
  return xi;
}

FirstOrderTerms FirstOrderTerms::zero(const Grid1D& grid, Stencil stencil) {
  const Index n = grid.n_points();
  const Eigen::VectorXd z = Eigen::VectorXd::Zero(n);
  return FirstOrderTerms{grid, stencil, 0.0, z, z, z, z, z, z, z, true};
}

FirstOrderTerms hermitian_plus_condition(const FirstOrderData& data) {
  if (!(data.lambda != 0.0) || !std::isfinite(data.lambda)) {
    throw ValidationError("lambda must be a nonzero real number");
  }
  if (!data.xi.value) throw ValidationError("xi is not set");
  const Grid1D& grid = data.grid;
  const Index n = grid.n_points();

  FirstOrderTerms t = FirstOrderTerms::zero(grid, data.stencil);
  t.lambda = data.lambda;
  t.xi = tabulate_with_parity(grid, data.xi.value, Parity::Even, "xi");
  if (data.f_minus) t.f_minus = tabulate_with_parity(grid, data.f_minus, Parity::Odd, "f_minus");
  if (data.g_plus) {
    const Eigen::VectorXd g = grid.tabulate(data.g_plus);
    for (Index j = 0; j < n; ++j) {
      if (g[j] != 0.0) {
        std::ostringstream os;
        os << "g_plus must vanish for a Hermitian H+ (g_plus(" << grid.node(j) << ") = " << g[j]
           << ")";
        throw ValidationError(os.str());
      }
    }
  }

  const double h = grid.spacing();
  const RealFn d1 = data.xi.first ? data.xi.first : fd_first(data.xi.value, h, data.stencil);
  const RealFn d2 = data.xi.second ? data.xi.second : fd_second(data.xi.value, h, data.stencil);
  t.xi1 = parity_project(grid, grid.tabulate(d1), Parity::Odd);
  t.xi2 = parity_project(grid, grid.tabulate(d2), Parity::Even);
  if (!t.xi1.allFinite() || !t.xi2.allFinite() || !t.xi.allFinite()) {
    throw ValidationError("xi or its derivatives are not finite on the grid");
  }

  t.f_plus = data.lambda * t.xi.array().exp();
  if (!t.f_plus.allFinite()) throw ValidationError("lambda e^xi overflows on the grid");
  t.g_minus = -0.5 * t.xi1;
  const double xscale = 1.0 + t.xi.cwiseAbs().maxCoeff();
  t.degenerate = t.xi1.cwiseAbs().maxCoeff() <= 1e-14 * xscale;
  return t;
}

GridOps grid_ops_for(const FirstOrderTerms& terms) {
  return build_ops(terms.grid, terms.stencil);
}

Op first_order_D(const FirstOrderTerms& t, const GridOps& ops) {
  if (ops.Pmom.rows() != t.grid.n_points()) throw DimensionError("first_order_D: grid mismatch");
  Eigen::VectorXcd d(t.grid.n_points());
  d.real() = t.f_plus + t.f_minus;
  d.imag() = t.g_plus + t.g_minus;
  return ops.Pmom + diag_op(d);
}

Op first_order_D_sharp(const FirstOrderTerms& t, const GridOps& ops) {
  if (ops.Pmom.rows() != t.grid.n_points()) {
    throw DimensionError("first_order_D_sharp: grid mismatch");
  }
  Eigen::VectorXcd d(t.grid.n_points());
  d.real() = t.f_minus - t.f_plus;
  d.imag() = t.g_plus - t.g_minus;
  return ops.Pmom + diag_op(d);
}

std::pair<Metric, Metric> parity_metrics(const GridOps& ops) {
  return {Metric(ops.Par), Metric(Op(-ops.Par))};
}

XiFamily xi_family_hamiltonians(const FirstOrderTerms& t, const GridOps& ops) {
  if (ops.Pmom.rows() != t.grid.n_points()) {
    throw DimensionError("xi_family_hamiltonians: grid mismatch");
  }
  const Op fm = diag_op(t.f_minus.cast<cplx>());
  Op a2 = ops.Kin + ops.Pmom * fm + fm * ops.Pmom;
  a2.diagonal().array() += t.f_minus.array().square().cast<cplx>();

  const Eigen::ArrayXd common =
      0.25 * t.xi1.array().square() - t.lambda * t.lambda * (2.0 * t.xi.array()).exp();
  Eigen::VectorXcd vp = (common - 0.5 * t.xi2.array()).cast<cplx>().matrix();
  Eigen::VectorXcd vm(t.grid.n_points());
  vm.real() = common + 0.5 * t.xi2.array();
  vm.imag() = 2.0 * t.lambda * t.xi.array().exp() * t.xi1.array();

  XiFamily fam{0.5 * (a2 + diag_op(vp)), 0.5 * (a2 + diag_op(vm))};
  return fam;
}

PartnerSpectra compare_partner_spectra(const Op& H_plus, const Op& H_minus, Index levels,
                                       Index resolved, double zero_tol) {
  validate_op(H_plus, "H+");
  validate_op(H_minus, "H-");
  if (levels < 0 || resolved < 0) throw ValidationError("level counts must be non-negative");

  auto nonzero_sorted = [zero_tol](const Op& H, Index& zeros) {
    const Eigen::VectorXcd ev = eigenvalues(H);
    const double radius = ev.size() ? ev.cwiseAbs().maxCoeff() : 0.0;
    std::vector<cplx> kept;
    zeros = 0;
    for (Index k : order_by_real_part(ev)) {
      if (std::abs(ev[k]) <= zero_tol * radius) {
        ++zeros;
      } else {
        kept.push_back(ev[k]);
      }
    }
    return kept;
  };

  PartnerSpectra out;
  const std::vector<cplx> p = nonzero_sorted(H_plus, out.zero_modes_plus);
  const std::vector<cplx> m = nonzero_sorted(H_minus, out.zero_modes_minus);
  const Index count = std::min({levels, static_cast<Index>(p.size()), static_cast<Index>(m.size())});
  out.plus.resize(count);
  out.minus.resize(count);
  for (Index k = 0; k < count; ++k) {
    out.plus[k] = p[static_cast<std::size_t>(k)];
    out.minus[k] = m[static_cast<std::size_t>(k)];
    out.max_relative_gap = std::max(
        out.max_relative_gap, std::abs(out.plus[k] - out.minus[k]) / std::max(1.0, std::abs(out.plus[k])));
  }
  for (std::size_t k = 0; k < p.size() && static_cast<Index>(k) < resolved; ++k) {
    out.max_imag_plus = std::max(out.max_imag_plus, std::abs(p[k].imag()));
  }
  for (std::size_t k = 0; k < m.size() && static_cast<Index>(k) < resolved; ++k) {
    out.max_imag_minus = std::max(out.max_imag_minus, std::abs(m[k].imag()));
  }
  return out;
}

Index resolved_mode_count(Index n_points) {
  return n_points / 4;
}

}  // namespace pseudoherm
