// SPDX-License-Identifier: Apache-2.0

#include "pseudoherm/operators.hpp"

#include <cmath>
#include <sstream>

namespace pseudoherm {

namespace {

double one_norm(const Op& m) {
  return m.cwiseAbs().colwise().sum().maxCoeff();
}

std::string shape(const Op& m) {
  std::ostringstream os;
  os << m.rows() << "x" << m.cols();
  return os.str();
}

}  // namespace

bool is_finite(const Op& op) {
  return op.allFinite();
}

void validate_op(const Op& op, const char* what) {
  if (op.rows() != op.cols() || op.rows() == 0) {
    throw DimensionError(std::string(what) + " must be square and non-empty, got " + shape(op));
  }
  if (!is_finite(op)) {
    throw ValidationError(std::string(what) + " has non-finite entries");
  }
}

double relative_difference(const Op& a, const Op& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError("relative_difference: " + shape(a) + " vs " + shape(b));
  }
  const double scale = std::max(a.norm(), b.norm());
  if (scale == 0.0) return 0.0;
  return (a - b).norm() / scale;
}

double commutator_norm(const Op& a, const Op& b) {
  return (a * b - b * a).norm();
}

// Metric -------------------------------------------------------------------

Metric::Metric(const Op& eta, double tol) {
  validate_op(eta, "metric");
  const double scale = eta.norm();
  if (scale == 0.0) throw ValidationError("metric is the zero operator");
  hermiticity_residual_ = (eta - eta.adjoint()).norm() / scale;
  if (hermiticity_residual_ > tol) {
    std::ostringstream os;
    os << "metric is not Hermitian: residual " << hermiticity_residual_ << " > " << tol;
    throw ValidationError(os.str());
  }
  op_ = (eta + eta.adjoint()) / 2.0;

  const Op inv = Eigen::PartialPivLU<Op>(op_).inverse();
  inverse_ = (inv + inv.adjoint()) / 2.0;
  condition_estimate_ = one_norm(op_) * one_norm(inverse_);

  const Index n = op_.rows();
  const double inv_residual = (op_ * inverse_ - Op::Identity(n, n)).norm();
  if (!std::isfinite(condition_estimate_) || inv_residual > tol * condition_estimate_) {
    std::ostringstream os;
    os << "metric is numerically singular (condition " << condition_estimate_
       << ", inverse residual " << inv_residual << ")";
    throw ValidationError(os.str());
  }
}

Metric::Metric(Trusted, Op op, Op inverse) : op_(std::move(op)), inverse_(std::move(inverse)) {
  condition_estimate_ = one_norm(op_) * one_norm(inverse_);
}

Metric Metric::identity(Index dim) {
  if (dim <= 0) throw DimensionError("metric dimension must be positive");
  return Metric(Trusted{}, Op::Identity(dim, dim), Op::Identity(dim, dim));
}

Metric Metric::diagonal(const Eigen::VectorXd& signature) {
  const Index n = signature.size();
  if (n == 0) throw DimensionError("metric dimension must be positive");
  Op op = Op::Zero(n, n);
  Op inv = Op::Zero(n, n);
  for (Index k = 0; k < n; ++k) {
    if (signature[k] == 0.0 || !std::isfinite(signature[k])) {
      throw ValidationError("diagonal metric entries must be finite and nonzero");
    }
    op(k, k) = signature[k];
    inv(k, k) = 1.0 / signature[k];
  }
  return Metric(Trusted{}, std::move(op), std::move(inv));
}

Metric Metric::block_diagonal(const Metric& a, const Metric& b) {
  const Index na = a.dim();
  const Index nb = b.dim();
  Op op = Op::Zero(na + nb, na + nb);
  Op inv = Op::Zero(na + nb, na + nb);
  op.topLeftCorner(na, na) = a.op();
  op.bottomRightCorner(nb, nb) = b.op();
  inv.topLeftCorner(na, na) = a.inverse();
  inv.bottomRightCorner(nb, nb) = b.inverse();
  return Metric(Trusted{}, std::move(op), std::move(inv));
}

// Pseudo-adjoint algebra -----------------------------------------------------

Op pseudo_adjoint(const Op& O, const Metric& eta_plus, const Metric& eta_minus) {
  if (O.rows() != eta_minus.dim() || O.cols() != eta_plus.dim()) {
    throw DimensionError("pseudo_adjoint: operator " + shape(O) + " does not map a " +
                         std::to_string(eta_plus.dim()) + "-space into a " +
                         std::to_string(eta_minus.dim()) + "-space");
  }
  return eta_plus.inverse() * O.adjoint() * eta_minus.op();
}

Op pseudo_adjoint(const Op& O, const Metric& eta) {
  return pseudo_adjoint(O, eta, eta);
}

double pseudo_hermiticity_residual(const Op& H, const Metric& eta) {
  if (H.rows() != H.cols() || H.rows() != eta.dim()) {
    throw DimensionError("pseudo_hermiticity_residual: " + shape(H) + " against a " +
                         std::to_string(eta.dim()) + "-dimensional metric");
  }
  const double scale = eta.op().norm() * H.norm();
  if (scale == 0.0) return 0.0;
  return (eta.op() * H - H.adjoint() * eta.op()).norm() / scale;
}

cplx indefinite_inner(const StateVec& psi1, const StateVec& psi2, const Metric& eta) {
  if (psi1.size() != eta.dim() || psi2.size() != eta.dim()) {
    throw DimensionError("indefinite_inner: state dimensions " + std::to_string(psi1.size()) +
                         ", " + std::to_string(psi2.size()) + " vs metric " +
                         std::to_string(eta.dim()));
  }
  return psi1.dot(eta.op() * psi2);
}

double eta_semi_norm_sq(const StateVec& psi, const Metric& eta, double tol) {
  const cplx v = indefinite_inner(psi, psi, eta);
  const double bound = tol * eta.op().norm() * psi.squaredNorm();
  if (std::abs(v.imag()) > bound) {
    std::ostringstream os;
    os << "eta semi-norm has imaginary part " << v.imag() << " (metric not Hermitian?)";
    throw ValidationError(os.str());
  }
  return v.real();
}

Transported unitary_transport(const Op& O, const Metric& eta, const Op& U, double tol) {
  validate_op(U, "unitary");
  if (O.rows() != O.cols() || O.rows() != U.rows() || eta.dim() != U.rows()) {
    throw DimensionError("unitary_transport: operator " + shape(O) + ", metric " +
                         std::to_string(eta.dim()) + ", unitary " + shape(U));
  }
  const Index n = U.rows();
  const double defect = (U.adjoint() * U - Op::Identity(n, n)).norm();
  if (defect > tol) {
    std::ostringstream os;
    os << "unitary_transport: ||U^dagger U - I|| = " << defect << " exceeds " << tol;
    throw ValidationError(os.str());
  }
  Op op_u = U.adjoint() * O * U;
  Op eta_u = U.adjoint() * eta.op() * U;
  return Transported{std::move(op_u), Metric(eta_u, std::max(tol, 1e-12))};
}

Op symmetry_candidate(const Metric& eta1, const Metric& eta2) {
  if (eta1.dim() != eta2.dim()) {
    throw DimensionError("symmetry_candidate: metric dimensions differ");
  }
  return eta2.inverse() * eta1.op();
}

// Random instances ---------------------------------------------------------

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

Op random_ginibre(Index rows, Index cols, Rng& rng) {
  Op b(rows, cols);
  const double s = 1.0 / std::sqrt(2.0);
  for (Index j = 0; j < cols; ++j) {
    for (Index i = 0; i < rows; ++i) {
      const double re = rng.normal();
      const double im = rng.normal();
      b(i, j) = cplx(re * s, im * s);
    }
  }
  return b;
}

Op random_unitary(Index dim, Rng& rng) {
  const Op g = random_ginibre(dim, dim, rng);
  Eigen::HouseholderQR<Op> qr(g);
  Op q = qr.householderQ() * Op::Identity(dim, dim);
  const Op r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Index k = 0; k < dim; ++k) {
    const cplx d = r(k, k);
    const double a = std::abs(d);
    if (a > 0.0) q.col(k) *= d / a;
  }
  return q;
}

Metric random_metric(Index dim, Rng& rng) {
  const Op q = random_unitary(dim, rng);
  Eigen::VectorXd diag(dim);
  bool any_negative = false;
  for (Index k = 0; k < dim; ++k) {
    const double mag = rng.uniform(0.5, 2.0);
    const bool negative = rng.coin();
    any_negative = any_negative || negative;
    diag[k] = negative ? -mag : mag;
  }
  if (dim > 1 && !any_negative) diag[dim - 1] = -diag[dim - 1];
  const Op eta = q * diag.cast<cplx>().asDiagonal() * q.adjoint();
  return Metric(eta);
}

Op random_pseudo_hermitian(const Metric& eta, Index dim, std::uint64_t seed) {
  if (dim != eta.dim()) {
    throw DimensionError("random_pseudo_hermitian: dim " + std::to_string(dim) +
                         " does not match metric dimension " + std::to_string(eta.dim()));
  }
  Rng rng(seed);
  const Op b = random_ginibre(dim, dim, rng);
  return (b + eta.inverse() * b.adjoint() * eta.op()) / 2.0;
}

}  // namespace pseudoherm
