// SPDX-License-Identifier: Apache-2.0

#include "pseudoherm/sweep.hpp"

#include <algorithm>
#include <exception>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace pseudoherm {

namespace {

// Runs body(i) for i in [0, n); rethrows the first exception by index.
template <class Body>
void for_each_index(Index n, Exec exec, Body&& body) {
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(n));
  if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(dynamic)
    for (Index i = 0; i < n; ++i) {
      try {
        body(i);
      } catch (...) {
        errors[static_cast<std::size_t>(i)] = std::current_exception();
      }
    }
  } else {
    for (Index i = 0; i < n; ++i) {
      try {
        body(i);
      } catch (...) {
        errors[static_cast<std::size_t>(i)] = std::current_exception();
      }
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

cplx random_scalar(Rng& rng) {
  return {rng.normal(), rng.normal()};
}

}  // namespace

int parallel_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

double SharpAlgebraSummary::max_all() const {
  return std::max({max_involution, max_antilinearity, max_product, max_identity});
}

SharpAlgebraSummary sharp_algebra_batch(Index instances, Index dim, std::uint64_t seed, Exec exec) {
  if (instances < 0 || dim < 1) throw ValidationError("sharp_algebra_batch: bad sizes");
  SharpAlgebraSummary out;
  out.instances.resize(static_cast<std::size_t>(instances));
  for_each_index(instances, exec, [&](Index i) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(i)));
    const Metric e1 = random_metric(dim, rng);
    const Metric e2 = random_metric(dim, rng);
    const Metric e3 = random_metric(dim, rng);
    const Op a = random_ginibre(dim, dim, rng);
    const Op a2 = random_ginibre(dim, dim, rng);
    const Op b = random_ginibre(dim, dim, rng);
    const cplx z1 = random_scalar(rng);
    const cplx z2 = random_scalar(rng);

    SharpAlgebraInstance r;
    const Op a_sharp = pseudo_adjoint(a, e1, e2);
    r.involution = relative_difference(pseudo_adjoint(a_sharp, e2, e1), a);
    r.antilinearity = relative_difference(
        pseudo_adjoint(z1 * a + z2 * a2, e1, e2),
        std::conj(z1) * a_sharp + std::conj(z2) * pseudo_adjoint(a2, e1, e2));
    r.product = relative_difference(pseudo_adjoint(b * a, e1, e3), a_sharp * pseudo_adjoint(b, e2, e3));
    r.identity = relative_difference(pseudo_adjoint(Op::Identity(dim, dim), e1), Op::Identity(dim, dim));
    out.instances[static_cast<std::size_t>(i)] = r;
  });
  for (const auto& r : out.instances) {
    out.max_involution = std::max(out.max_involution, r.involution);
    out.max_antilinearity = std::max(out.max_antilinearity, r.antilinearity);
    out.max_product = std::max(out.max_product, r.product);
    out.max_identity = std::max(out.max_identity, r.identity);
  }
  return out;
}

ForwardSummary spectrum_forward_batch(Index instances, Index dim, std::uint64_t seed,
                                     double pair_scale, Exec exec) {
  if (instances < 0 || dim < 1) throw ValidationError("spectrum_forward_batch: bad sizes");
  ForwardSummary out;
  out.instances.resize(static_cast<std::size_t>(instances));
  for_each_index(instances, exec, [&](Index i) {
    const std::uint64_t s = derive_seed(seed, static_cast<std::uint64_t>(i));
    Rng rng(s);
    const Metric eta = random_metric(dim, rng);
    const Op h = random_pseudo_hermitian(eta, dim, derive_seed(s, 1));
    const Eigen::VectorXcd ev = eigenvalues(h);
    const double radius = ev.cwiseAbs().maxCoeff();
    const auto clusters = cluster_eigenvalues(ev, 1e-8 * std::max(1.0, radius));
    std::vector<Index> mult(static_cast<std::size_t>(ev.size()));
    for (const auto& c : clusters) {
      for (Index m : c.members) mult[static_cast<std::size_t>(m)] = c.multiplicity();
    }
    ForwardInstance r;
    r.pair_tol = pair_scale * radius;
    const SpectrumClass cls = classify_eigenvalues(ev, r.pair_tol, mult);
    r.kind = cls.kind;
    r.real_count = static_cast<Index>(cls.real_indices.size());
    r.pair_count = static_cast<Index>(cls.pairs.size());
    r.generator_residual = pseudo_hermiticity_residual(h, eta);
    out.instances[static_cast<std::size_t>(i)] = r;
  });
  for (const auto& r : out.instances) {
    switch (r.kind) {
      case SpectrumKind::AllReal: ++out.all_real; break;
      case SpectrumKind::ConjugatePaired: ++out.paired; break;
      case SpectrumKind::Mixed: ++out.mixed; break;
      case SpectrumKind::NotPseudoHermitian: ++out.not_pseudo_hermitian; break;
    }
    out.max_generator_residual = std::max(out.max_generator_residual, r.generator_residual);
  }
  return out;
}

ConverseSummary metric_converse_batch(const Eigen::VectorXcd& spectrum, Index instances,
                                       std::uint64_t seed, double pair_tol, Exec exec) {
  if (instances < 0 || spectrum.size() < 1) throw ValidationError("metric_converse_batch: bad sizes");
  const Index n = spectrum.size();
  ConverseSummary out;
  out.instances.resize(static_cast<std::size_t>(instances));
  for_each_index(instances, exec, [&](Index i) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(i)));
    const Op basis = random_ginibre(n, n, rng);
    const Op h = synthesize_hamiltonian(spectrum, basis);
    const BiSystem sys = eig_biorthonormal(h);
    const SpectrumClass cls = classify_spectrum(sys, pair_tol);
    const Metric eta = construct_eta(sys, cls);
    const AlignedSystem aligned = align_gauge(sys, cls, eta);

    ConverseInstance r;
    r.residual = pseudo_hermiticity_residual(h, eta);
    r.eta_hermiticity = eta.hermiticity_residual();
    r.gram_error = (eta_gram(aligned.system, eta) - expected_gram_pattern(aligned.alignment))
                       .cwiseAbs()
                       .maxCoeff();
    r.completeness = sys.completeness_residual;
    r.signs = aligned.alignment.signs;
    out.instances[static_cast<std::size_t>(i)] = r;
  });
  for (const auto& r : out.instances) {
    out.max_residual = std::max(out.max_residual, r.residual);
    out.max_eta_hermiticity = std::max(out.max_eta_hermiticity, r.eta_hermiticity);
    out.max_gram_error = std::max(out.max_gram_error, r.gram_error);
  }
  return out;
}

std::vector<WdwSweepPoint> wdw_alpha_sweep(const WdwModel& model, const std::vector<double>& alphas,
                                           Index keep, Exec exec) {
  std::vector<WdwSweepPoint> out(alphas.size());
  for_each_index(static_cast<Index>(alphas.size()), exec, [&](Index i) {
    const double alpha = alphas[static_cast<std::size_t>(i)];
    const WdwSpectrum spec = wdw_spectrum(model.at_alpha(alpha));
    WdwSweepPoint p;
    p.alpha = alpha;
    p.kind = spec.classification.kind;
    p.real_count = static_cast<Index>(spec.classification.real_indices.size());
    p.pair_count = static_cast<Index>(spec.classification.pairs.size());
    p.boundary_case = spec.boundary_case;
    p.lowest = spec.eigenvalues.head(std::min(keep, spec.eigenvalues.size()));
    out[static_cast<std::size_t>(i)] = std::move(p);
  });
  return out;
}

}  // namespace pseudoherm
