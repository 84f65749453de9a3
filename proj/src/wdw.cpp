// SPDX-License-Identifier: Apache-2.0

#include "pseudoherm/wdw.hpp"

#include <algorithm>
#include <cmath>

namespace pseudoherm {

WdwModel::WdwModel(int kappa, double mass, double alpha, Grid1D phi_grid, Stencil stencil)
    : kappa_(kappa), mass_(mass), alpha_(alpha), grid_(std::move(phi_grid)), stencil_(stencil) {
  if (kappa < -1 || kappa > 1) throw ValidationError("kappa must be -1, 0 or +1");
  if (!(mass > 0.0) || !std::isfinite(mass)) throw ValidationError("mass must be positive");
  if (!std::isfinite(alpha)) throw ValidationError("alpha must be finite");
  if (!(omega() > 0.0) || !std::isfinite(omega())) {
    throw ValidationError("omega = m e^{3 alpha} overflows or vanishes");
  }
}

double WdwModel::omega() const {
  return mass_ * std::exp(3.0 * alpha_);
}

WdwModel WdwModel::at_alpha(double alpha) const {
  return WdwModel(kappa_, mass_, alpha, grid_, stencil_);
}

double default_phi_half_width(double omega) {
  return std::max(6.0, 6.0 / std::sqrt(omega));
}

Op wdw_d_operator(const WdwModel& model) {
  const GridOps ops = build_ops(model.phi_grid(), model.stencil());
  const double w2 = model.omega() * model.omega();
  const double shift = static_cast<double>(model.kappa()) * std::exp(4.0 * model.alpha());
  Op d = ops.Kin;
  for (Index j = 0; j < d.rows(); ++j) {
    const double phi = model.phi_grid().node(j);
    d(j, j) += w2 * phi * phi - shift;
  }
  return d;
}

Op wdw_hamiltonian(const Op& D) {
  validate_op(D, "D operator");
  const Index n = D.rows();
  const Op id = Op::Identity(n, n);
  Op h(2 * n, 2 * n);
  h.topLeftCorner(n, n) = (id + D) / 2.0;
  h.topRightCorner(n, n) = (D - id) / 2.0;
  h.bottomLeftCorner(n, n) = (id - D) / 2.0;
  h.bottomRightCorner(n, n) = -(id + D) / 2.0;
  return h;
}

Metric wdw_metric(Index n) {
  if (n <= 0) throw DimensionError("wdw_metric: grid size must be positive");
  Eigen::VectorXd sig(2 * n);
  sig.head(n).setOnes();
  sig.tail(n).setConstant(-1.0);
  return Metric::diagonal(sig);
}

std::optional<double> wdw_reality_boundary(const WdwModel& model, int n) {
  if (model.kappa() != 1 || n < 0) return std::nullopt;
  return std::log(model.mass() * (2.0 * n + 1.0));
}

WdwSpectrum wdw_spectrum(const WdwModel& model, double pair_tol) {
  const Op d = wdw_d_operator(model);
  WdwSpectrum out;

  Eigen::SelfAdjointEigenSolver<Op> des(d, Eigen::EigenvaluesOnly);
  out.d_eigenvalues = des.eigenvalues();
  const double dscale = std::max(1.0, out.d_eigenvalues.cwiseAbs().maxCoeff());
  out.boundary_case = (out.d_eigenvalues.cwiseAbs().array() <= 1e-10 * dscale).any();

  Eigen::VectorXcd eig = eigenvalues(wdw_hamiltonian(d));
  std::vector<Index> order(static_cast<std::size_t>(eig.size()));
  for (std::size_t k = 0; k < order.size(); ++k) order[k] = static_cast<Index>(k);
  std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) {
    const double ma = std::abs(eig[a]);
    const double mb = std::abs(eig[b]);
    if (ma != mb) return ma < mb;
    if (eig[a].real() != eig[b].real()) return eig[a].real() < eig[b].real();
    return eig[a].imag() < eig[b].imag();
  });
  out.eigenvalues.resize(eig.size());
  for (std::size_t k = 0; k < order.size(); ++k) out.eigenvalues[static_cast<Index>(k)] = eig[order[k]];

  const double radius = out.eigenvalues.size() ? out.eigenvalues.cwiseAbs().maxCoeff() : 0.0;
  const auto clusters = cluster_eigenvalues(out.eigenvalues, 1e-8 * std::max(1.0, radius));
  std::vector<Index> mult(static_cast<std::size_t>(out.eigenvalues.size()));
  for (const auto& c : clusters) {
    for (Index m : c.members) mult[m] = c.multiplicity();
  }
  out.classification = classify_eigenvalues(out.eigenvalues, pair_tol, mult);
  return out;
}

std::function<Op(double)> wdw_generator(const WdwModel& model, double rate) {
  const Op kin = build_ops(model.phi_grid(), model.stencil()).Kin;
  const Eigen::VectorXd phi2 = model.phi_grid().nodes().array().square();
  return [kin, phi2, model, rate](double t) {
    const double alpha = model.alpha() + rate * t;
    const double w = model.mass() * std::exp(3.0 * alpha);
    const double shift = static_cast<double>(model.kappa()) * std::exp(4.0 * alpha);
    Op d = kin;
    d.diagonal().array() += (w * w * phi2.array() - shift).cast<cplx>();
    return wdw_hamiltonian(d);
  };
}

}  // namespace pseudoherm
