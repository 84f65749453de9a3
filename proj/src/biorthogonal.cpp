// SPDX-License-Identifier: Apache-2.0

#include "pseudoherm/biorthogonal.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>
#include <tuple>

namespace pseudoherm {

namespace {

class UnionFind {
 public:
  explicit UnionFind(Index n) : parent_(static_cast<std::size_t>(n)) {
    std::iota(parent_.begin(), parent_.end(), Index{0});
  }
  Index find(Index x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  void unite(Index a, Index b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<Index> parent_;
};

double spectral_radius(const Eigen::VectorXcd& values) {
  return values.size() == 0 ? 0.0 : values.cwiseAbs().maxCoeff();
}

Op select_columns(const Op& m, const std::vector<Index>& cols) {
  Op out(m.rows(), static_cast<Index>(cols.size()));
  for (std::size_t k = 0; k < cols.size(); ++k) out.col(static_cast<Index>(k)) = m.col(cols[k]);
  return out;
}

void assign_columns(Op& m, const std::vector<Index>& cols, const Op& block) {
  for (std::size_t k = 0; k < cols.size(); ++k) m.col(cols[k]) = block.col(static_cast<Index>(k));
}

void fill_residuals(BiSystem& sys) {
  const Index n = sys.dim();
  const Op id = Op::Identity(n, n);
  sys.completeness_residual = (sys.right * sys.left.adjoint() - id).norm();
  sys.biorthonormality_residual = (sys.left.adjoint() * sys.right - id).norm();
}

// Left-vector columns permuted so that LP L^dagger is the eta sum.
Op paired_columns(const Op& vectors, const SpectrumClass& cls) {
  Op out = Op::Zero(vectors.rows(), vectors.cols());
  for (Index k : cls.real_indices) out.col(k) = vectors.col(k);
  for (const auto& [plus, minus] : cls.pairs) {
    out.col(plus) = vectors.col(minus);
    out.col(minus) = vectors.col(plus);
  }
  return out;
}

void require_pseudo_hermitian(const SpectrumClass& cls, const char* what) {
  if (!cls.pseudo_hermitian()) {
    std::ostringstream os;
    os << what << ": " << cls.unpaired.size()
       << " complex eigenvalue(s) without a conjugate partner of equal multiplicity";
    throw ValidationError(os.str());
  }
}

}  // namespace

std::string to_string(SpectrumKind kind) {
  switch (kind) {
    case SpectrumKind::AllReal: return "AllReal";
    case SpectrumKind::ConjugatePaired: return "ConjugatePaired";
    case SpectrumKind::Mixed: return "Mixed";
    case SpectrumKind::NotPseudoHermitian: return "NotPseudoHermitian";
  }
  return "?";
}

std::vector<Cluster> cluster_eigenvalues(const Eigen::VectorXcd& values, double threshold) {
  const Index n = values.size();
  UnionFind uf(n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n; ++j) {
      if (std::abs(values[i] - values[j]) <= threshold) uf.unite(i, j);
    }
  }
  std::map<Index, std::size_t> root_to_cluster;
  std::vector<Cluster> clusters;
  for (Index i = 0; i < n; ++i) {
    const Index r = uf.find(i);
    auto [it, inserted] = root_to_cluster.emplace(r, clusters.size());
    if (inserted) clusters.push_back(Cluster{cplx(0.0), {}});
    clusters[it->second].members.push_back(i);
  }
  for (auto& c : clusters) {
    cplx sum(0.0);
    for (Index m : c.members) sum += values[m];
    c.value = sum / static_cast<double>(c.members.size());
  }
  return clusters;
}

Eigen::VectorXcd eigenvalues(const Op& H) {
  validate_op(H, "Hamiltonian");
  if (H.imag().isZero(0.0)) {
    Eigen::EigenSolver<Eigen::MatrixXd> es(H.real(), false);
    if (es.info() != Eigen::Success) throw Error("real eigensolver did not converge");
    return es.eigenvalues();
  }
  Eigen::ComplexEigenSolver<Op> es(H, false);
  if (es.info() != Eigen::Success) throw Error("complex eigensolver did not converge");
  return es.eigenvalues();
}

std::vector<Index> order_by_real_part(const Eigen::VectorXcd& values) {
  std::vector<Index> order(static_cast<std::size_t>(values.size()));
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) {
    if (values[a].real() != values[b].real()) return values[a].real() < values[b].real();
    return values[a].imag() < values[b].imag();
  });
  return order;
}

BiSystem eig_biorthonormal(const Op& H, const BiorthonormalOptions& options) {
  validate_op(H, "Hamiltonian");
  const Index n = H.rows();

  Eigen::ComplexEigenSolver<Op> es(H, true);
  if (es.info() != Eigen::Success) throw Error("complex eigensolver did not converge");

  BiSystem sys;
  sys.eigenvalues = es.eigenvalues();
  sys.right = es.eigenvectors();

  const double threshold = options.cluster_tol * std::max(1.0, spectral_radius(sys.eigenvalues));
  sys.clusters = cluster_eigenvalues(sys.eigenvalues, threshold);
  sys.cluster_of.assign(static_cast<std::size_t>(n), 0);

  for (std::size_t c = 0; c < sys.clusters.size(); ++c) {
    Cluster& cluster = sys.clusters[c];
    for (Index m : cluster.members) sys.cluster_of[m] = static_cast<Index>(c);
    if (cluster.multiplicity() == 1) continue;

    // The solver's vectors for a repeated eigenvalue are unreliable; use the
    // null space of H - lambda instead and make sure it is large enough.
    const Index d = cluster.multiplicity();
    const Op shifted = H - cluster.value * Op::Identity(n, n);
    Eigen::BDCSVD<Op> svd(shifted, Eigen::ComputeFullV);
    const Eigen::VectorXd& sigma = svd.singularValues();
    const double null_threshold = std::sqrt(options.cluster_tol) * std::max(1.0, sigma[0]);
    if (sigma[n - d] > null_threshold) {
      std::ostringstream os;
      os << "eigenvalue " << cluster.value << " has algebraic multiplicity " << d
         << " but a smaller eigenspace (singular value " << sigma[n - d] << ")";
      throw DefectiveMatrix(os.str(), std::numeric_limits<double>::infinity());
    }
    assign_columns(sys.right, cluster.members, svd.matrixV().rightCols(d));
    for (Index m : cluster.members) sys.eigenvalues[m] = cluster.value;
  }

  Eigen::BDCSVD<Op> rsvd(sys.right);
  const Eigen::VectorXd& rs = rsvd.singularValues();
  sys.condition_number = rs[n - 1] > 0.0 ? rs[0] / rs[n - 1]
                                         : std::numeric_limits<double>::infinity();
  if (!(sys.condition_number <= options.max_condition)) {
    std::ostringstream os;
    os << "eigenvector matrix condition number " << sys.condition_number << " exceeds "
       << options.max_condition << "; no complete biorthonormal eigensystem";
    throw DefectiveMatrix(os.str(), sys.condition_number);
  }

  Eigen::PartialPivLU<Op> lu(sys.right);
  sys.left = lu.inverse().adjoint();
  fill_residuals(sys);

  const double scale = H.norm() * sys.right.norm();
  sys.eigen_residual =
      scale > 0.0 ? (H * sys.right - sys.right * sys.eigenvalues.asDiagonal()).norm() / scale : 0.0;
  return sys;
}

std::vector<Index> SpectrumClass::partners(Index dim) const {
  std::vector<Index> out(static_cast<std::size_t>(dim), -1);
  for (const auto& [plus, minus] : pairs) {
    out[plus] = minus;
    out[minus] = plus;
  }
  return out;
}

SpectrumClass classify_eigenvalues(const Eigen::VectorXcd& values, double pair_tol,
                                   const std::vector<Index>& multiplicity) {
  const Index n = values.size();
  if (!multiplicity.empty() && static_cast<Index>(multiplicity.size()) != n) {
    throw DimensionError("classify_eigenvalues: multiplicity list length mismatch");
  }
  auto mult = [&](Index k) { return multiplicity.empty() ? Index{1} : multiplicity[k]; };
  auto tol_at = [&](cplx e) { return pair_tol * (1.0 + std::abs(e)); };

  SpectrumClass cls;
  cls.pair_tol = pair_tol;
  std::vector<Index> upper, lower;
  for (Index k = 0; k < n; ++k) {
    const cplx e = values[k];
    if (std::abs(e.imag()) <= tol_at(e)) {
      cls.real_indices.push_back(k);
    } else if (e.imag() > 0.0) {
      upper.push_back(k);
    } else {
      lower.push_back(k);
    }
  }

  std::vector<std::tuple<double, Index, Index>> candidates;
  for (Index i : upper) {
    for (Index j : lower) {
      if (mult(i) != mult(j)) continue;
      const double dist = std::abs(values[i] - std::conj(values[j]));
      if (dist <= tol_at(values[i])) candidates.emplace_back(dist, i, j);
    }
  }
  std::sort(candidates.begin(), candidates.end());

  std::vector<bool> used(static_cast<std::size_t>(n), false);
  for (const auto& [dist, i, j] : candidates) {
    if (used[i] || used[j]) continue;
    used[i] = used[j] = true;
    cls.pairs.emplace_back(i, j);
  }
  std::sort(cls.pairs.begin(), cls.pairs.end());
  for (Index k : upper) if (!used[k]) cls.unpaired.push_back(k);
  for (Index k : lower) if (!used[k]) cls.unpaired.push_back(k);
  std::sort(cls.unpaired.begin(), cls.unpaired.end());

  if (!cls.unpaired.empty()) {
    cls.kind = SpectrumKind::NotPseudoHermitian;
  } else if (cls.pairs.empty()) {
    cls.kind = SpectrumKind::AllReal;
  } else if (cls.real_indices.empty()) {
    cls.kind = SpectrumKind::ConjugatePaired;
  } else {
    cls.kind = SpectrumKind::Mixed;
  }
  return cls;
}

SpectrumClass classify_spectrum(const BiSystem& sys, double pair_tol) {
  std::vector<Index> mult(static_cast<std::size_t>(sys.dim()));
  for (Index k = 0; k < sys.dim(); ++k) mult[k] = sys.multiplicity(k);
  return classify_eigenvalues(sys.eigenvalues, pair_tol, mult);
}

// Gauge alignment ----------------------------------------------------------

AlignedSystem align_gauge(const BiSystem& sys, const SpectrumClass& cls, const Metric& eta) {
  const Index n = sys.dim();
  if (eta.dim() != n) throw DimensionError("align_gauge: metric dimension mismatch");
  require_pseudo_hermitian(cls, "align_gauge");

  // Lift the index-level classification to clusters.
  const std::vector<Index> partner = cls.partners(n);
  std::vector<bool> is_real(static_cast<std::size_t>(n), false);
  for (Index k : cls.real_indices) is_real[k] = true;

  GaugeAlignment ga;
  ga.rescale_factors = Eigen::VectorXd::Ones(n);
  ga.signs = Eigen::VectorXi::Ones(n);
  ga.partner.assign(static_cast<std::size_t>(n), -1);

  std::map<Index, Index> cluster_partner;
  for (std::size_t c = 0; c < sys.clusters.size(); ++c) {
    const auto& members = sys.clusters[c].members;
    const bool real = is_real[members.front()];
    for (Index m : members) {
      if (is_real[m] != real) {
        throw ValidationError("align_gauge: cluster mixes real and complex eigenvalues");
      }
    }
    if (real) continue;
    const Index other = sys.cluster_of[partner[members.front()]];
    for (Index m : members) {
      if (sys.cluster_of[partner[m]] != other) {
        throw ValidationError("align_gauge: conjugate pairing splits a degenerate cluster");
      }
    }
    cluster_partner[static_cast<Index>(c)] = other;
  }

  Op right = sys.right;
  Op left = sys.left;
  const Op& eta_inv = eta.inverse();
  const double eta_inv_scale = eta_inv.norm();

  for (std::size_t c = 0; c < sys.clusters.size(); ++c) {
    const auto& members = sys.clusters[c].members;
    if (!is_real[members.front()]) continue;

    const Op lc = select_columns(sys.left, members);
    Op cmat = lc.adjoint() * eta_inv * lc;
    cmat = (cmat + cmat.adjoint()) / 2.0;
    Eigen::SelfAdjointEigenSolver<Op> es(cmat);
    const Eigen::VectorXd lam = es.eigenvalues();
    const double floor = 1e-12 * eta_inv_scale * lc.squaredNorm();
    if ((lam.cwiseAbs().array() <= floor).any()) {
      throw ValidationError("align_gauge: singular c-block on a real eigenvalue; the metric "
                            "does not pair this eigenspace with itself");
    }
    const Eigen::VectorXd root = lam.cwiseAbs().cwiseSqrt();
    const Op rot = es.eigenvectors();
    assign_columns(right, members, select_columns(sys.right, members) * rot *
                                       root.cast<cplx>().asDiagonal());
    assign_columns(left, members, lc * rot * root.cwiseInverse().cast<cplx>().asDiagonal());
    for (std::size_t a = 0; a < members.size(); ++a) {
      ga.rescale_factors[members[a]] = root[static_cast<Index>(a)];
      ga.signs[members[a]] = lam[static_cast<Index>(a)] > 0.0 ? 1 : -1;
    }
    ga.c_real.push_back(cmat);
    ga.real_clusters.push_back(static_cast<Index>(c));
  }

  for (const auto& [cplus, cminus] : cluster_partner) {
    if (sys.clusters[cplus].value.imag() <= 0.0) continue;  // visit each pair once
    const auto& mp = sys.clusters[cplus].members;
    const auto& mm = sys.clusters[cminus].members;
    const Op lp = select_columns(sys.left, mp);
    const Op lm = select_columns(sys.left, mm);
    const Op cmat = lm.adjoint() * eta_inv * lp;

    Eigen::JacobiSVD<Op> svd(cmat, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const Eigen::VectorXd sigma = svd.singularValues();
    const double floor = 1e-12 * eta_inv_scale * lp.norm() * lm.norm();
    if ((sigma.array() <= floor).any()) {
      throw ValidationError("align_gauge: singular c-block on a conjugate pair; the metric "
                            "does not pair these eigenspaces");
    }
    const Eigen::VectorXcd root = sigma.cwiseSqrt().cast<cplx>();
    const Eigen::VectorXcd inv_root = sigma.cwiseSqrt().cwiseInverse().cast<cplx>();
    const Op& u = svd.matrixU();
    const Op& w = svd.matrixV();
    assign_columns(right, mp, select_columns(sys.right, mp) * w * root.asDiagonal());
    assign_columns(left, mp, lp * w * inv_root.asDiagonal());
    assign_columns(right, mm, select_columns(sys.right, mm) * u * root.asDiagonal());
    assign_columns(left, mm, lm * u * inv_root.asDiagonal());
    for (std::size_t a = 0; a < mp.size(); ++a) {
      ga.rescale_factors[mp[a]] = root[static_cast<Index>(a)].real();
      ga.rescale_factors[mm[a]] = root[static_cast<Index>(a)].real();
      ga.partner[mp[a]] = mm[a];
      ga.partner[mm[a]] = mp[a];
    }
    ga.c_pair.push_back(cmat);
    ga.pair_clusters.emplace_back(cplus, cminus);
  }

  // Re-evaluate the c-blocks in the new gauge.
  double residual = 0.0;
  for (Index c : ga.real_clusters) {
    const auto& members = sys.clusters[c].members;
    const Op lc = select_columns(left, members);
    Eigen::VectorXd target(static_cast<Index>(members.size()));
    for (std::size_t a = 0; a < members.size(); ++a) target[static_cast<Index>(a)] = ga.signs[members[a]];
    const Op diff = lc.adjoint() * eta_inv * lc - Op(target.cast<cplx>().asDiagonal());
    residual = std::max(residual, diff.norm());
  }
  for (const auto& [cplus, cminus] : ga.pair_clusters) {
    const Op lp = select_columns(left, sys.clusters[cplus].members);
    const Op lm = select_columns(left, sys.clusters[cminus].members);
    const Op diff = lm.adjoint() * eta_inv * lp - Op::Identity(lp.cols(), lp.cols());
    residual = std::max(residual, diff.norm());
  }
  ga.residual = residual;

  BiSystem aligned = sys;
  aligned.right = std::move(right);
  aligned.left = std::move(left);
  fill_residuals(aligned);
  return AlignedSystem{std::move(aligned), std::move(ga)};
}

AlignedSystem align_gauge(const BiSystem& sys, const Metric& eta, double pair_tol) {
  return align_gauge(sys, classify_spectrum(sys, pair_tol), eta);
}

Op eta_gram(const BiSystem& sys, const Metric& eta) {
  if (eta.dim() != sys.dim()) throw DimensionError("eta_gram: metric dimension mismatch");
  return sys.right.adjoint() * eta.op() * sys.right;
}

Op expected_gram_pattern(const GaugeAlignment& alignment) {
  const Index n = alignment.signs.size();
  Op g = Op::Zero(n, n);
  for (Index k = 0; k < n; ++k) {
    const Index p = alignment.partner[k];
    if (p < 0) {
      g(k, k) = static_cast<double>(alignment.signs[k]);
    } else {
      g(k, p) = 1.0;
    }
  }
  return g;
}

// Metric construction ------------------------------------------------------

Metric construct_eta(const BiSystem& sys, const SpectrumClass& cls) {
  require_pseudo_hermitian(cls, "construct_eta");
  const Op eta = paired_columns(sys.left, cls) * sys.left.adjoint();
  return Metric((eta + eta.adjoint()) / 2.0);
}

Op construct_eta_inverse(const BiSystem& sys, const SpectrumClass& cls) {
  require_pseudo_hermitian(cls, "construct_eta_inverse");
  const Op inv = paired_columns(sys.right, cls) * sys.right.adjoint();
  return (inv + inv.adjoint()) / 2.0;
}

Op synthesize_hamiltonian(const Eigen::VectorXcd& spectrum, const Op& basis, double pair_tol) {
  validate_op(basis, "basis");
  if (spectrum.size() != basis.rows()) {
    throw DimensionError("synthesize_hamiltonian: " + std::to_string(spectrum.size()) +
                         " eigenvalues for a " + std::to_string(basis.rows()) + "-dim basis");
  }
  require_pseudo_hermitian(classify_eigenvalues(spectrum, pair_tol), "synthesize_hamiltonian");
  Eigen::FullPivLU<Op> lu(basis);
  if (!lu.isInvertible()) throw ValidationError("synthesize_hamiltonian: basis is singular");
  const Op left = lu.inverse().adjoint();
  return basis * spectrum.asDiagonal() * left.adjoint();
}

double is_pt_symmetric(const Op& H, const Op& parity, double tol) {
  validate_op(H, "Hamiltonian");
  validate_op(parity, "parity");
  if (parity.rows() != H.rows()) throw DimensionError("is_pt_symmetric: parity dimension mismatch");
  const Index n = H.rows();
  const double defect = (parity * parity - Op::Identity(n, n)).norm();
  if (defect > tol * std::sqrt(static_cast<double>(n))) {
    throw ValidationError("is_pt_symmetric: parity is not an involution");
  }
  const double scale = H.norm();
  if (scale == 0.0) return 0.0;
  return (parity * H.conjugate() * parity - H).norm() / scale;
}

Certificate certify_pseudo_hermiticity(const Op& H, double pair_tol,
                                       const BiorthonormalOptions& options) {
  Certificate cert;
  cert.system = eig_biorthonormal(H, options);
  cert.classification = classify_spectrum(cert.system, pair_tol);
  if (cert.classification.pseudo_hermitian()) {
    cert.eta = construct_eta(cert.system, cert.classification);
    cert.residual = pseudo_hermiticity_residual(H, *cert.eta);
  }
  return cert;
}

}  // namespace pseudoherm
