// SPDX-License-Identifier: Apache-2.0

#include <algorithm>

#include "doctest.h"
#include "oracle.hpp"
#include "pseudoherm/biorthogonal.hpp"
#include "pseudoherm/discretize.hpp"

using namespace pseudoherm;

namespace {

const cplx I1(0.0, 1.0);

Op diag(std::initializer_list<cplx> d) {
  Eigen::VectorXcd v(static_cast<Index>(d.size()));
  Index k = 0;
  for (cplx z : d) v[k++] = z;
  return v.asDiagonal();
}

Eigen::VectorXcd vec(std::initializer_list<cplx> d) {
  Eigen::VectorXcd v(static_cast<Index>(d.size()));
  Index k = 0;
  for (cplx z : d) v[k++] = z;
  return v;
}

std::vector<double> sorted_real(const Eigen::VectorXcd& v) {
  std::vector<double> out;
  for (Index k = 0; k < v.size(); ++k) out.push_back(v[k].real());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("diagonal Hermitian matrix has the standard biorthonormal basis") {
  const BiSystem sys = eig_biorthonormal(diag({1.0, 2.0, 3.0}));
  CHECK(sorted_real(sys.eigenvalues) == std::vector<double>{1.0, 2.0, 3.0});
  CHECK(sys.completeness_residual < 1e-14);
  CHECK(sys.biorthonormality_residual < 1e-14);
  for (Index k = 0; k < 3; ++k) {
    // each right vector is a unit vector up to phase and its left partner matches
    CHECK(sys.right.col(k).cwiseAbs().maxCoeff() == doctest::Approx(1.0));
    CHECK((sys.left.col(k) - sys.right.col(k)).norm() < 1e-14);
  }
  CHECK(sys.clusters.size() == 3);
}

TEST_CASE("Jordan block is rejected as defective") {
  Op j(2, 2);
  j << 1.0, 1.0, 0.0, 1.0;
  CHECK_THROWS_AS(eig_biorthonormal(j), DefectiveMatrix);
  try {
    eig_biorthonormal(j);
  } catch (const DefectiveMatrix& e) {
    CHECK(e.condition() > 1e12);
  }
}

TEST_CASE("random pseudo-Hermitian 8x8 has a complete biorthonormal system") {
  Rng rng(31);
  for (int trial = 0; trial < 5; ++trial) {
    const Metric eta = random_metric(8, rng);
    const Op h = random_pseudo_hermitian(eta, 8, 100 + trial);
    const BiSystem sys = eig_biorthonormal(h);
    CHECK(sys.completeness_residual <= 1e-10);
    CHECK(sys.biorthonormality_residual <= 1e-10);
    CHECK(sys.eigen_residual <= 1e-12);
    // left vectors are eigenvectors of H^dagger with conjugate eigenvalues
    const Op lhs = h.adjoint() * sys.left;
    const Op rhs = sys.left * sys.eigenvalues.conjugate().asDiagonal();
    CHECK((lhs - rhs).norm() <= 1e-10 * h.norm() * sys.left.norm());
  }
}

TEST_CASE("degenerate eigenvalues are clustered and given a basis") {
  Rng rng(32);
  const Op basis = random_ginibre(4, 4, rng);
  const Op h = synthesize_hamiltonian(vec({2.0, 2.0, 5.0, 5.0}), basis);
  const BiSystem sys = eig_biorthonormal(h);
  REQUIRE(sys.clusters.size() == 2);
  CHECK(sys.clusters[0].multiplicity() == 2);
  CHECK(sys.clusters[1].multiplicity() == 2);
  CHECK(sys.completeness_residual <= 1e-8);
  CHECK(sys.eigen_residual <= 1e-10);
}

TEST_CASE("eigenvalue clustering") {
  const auto c = cluster_eigenvalues(vec({1.0, 1.0 + 1e-12, 3.0, 1.0 - 1e-12, 3.0 + 0.5}), 1e-9);
  REQUIRE(c.size() == 3);
  CHECK(c[0].multiplicity() == 3);
  CHECK(c[0].value.real() == doctest::Approx(1.0));
  // chains merge transitively
  CHECK(cluster_eigenvalues(vec({0.0, 0.8, 1.6}), 1.0).size() == 1);
}

TEST_CASE("spectrum classification") {
  SUBCASE("all real") {
    const SpectrumClass c = classify_eigenvalues(vec({1.0, 2.0, 3.0}), 1e-8);
    CHECK(c.kind == SpectrumKind::AllReal);
    CHECK(c.real_indices.size() == 3);
    CHECK(c.pairs.empty());
  }
  SUBCASE("one conjugate pair") {
    const SpectrumClass c = classify_eigenvalues(vec({cplx(3, 4), cplx(3, -4)}), 1e-8);
    CHECK(c.kind == SpectrumKind::ConjugatePaired);
    REQUIRE(c.pairs.size() == 1);
    CHECK(c.pairs[0] == std::pair<Index, Index>(0, 1));
  }
  SUBCASE("pair listed with the negative member first") {
    const SpectrumClass c = classify_eigenvalues(vec({cplx(3, -4), cplx(3, 4)}), 1e-8);
    REQUIRE(c.pairs.size() == 1);
    CHECK(c.pairs[0] == std::pair<Index, Index>(1, 0));
  }
  SUBCASE("mixed") {
    const SpectrumClass c = classify_eigenvalues(vec({1.0, I1, -I1}), 1e-8);
    CHECK(c.kind == SpectrumKind::Mixed);
  }
  SUBCASE("i has no partner") {
    const SpectrumClass c = classify_eigenvalues(vec({I1, 2.0}), 1e-8);
    CHECK(c.kind == SpectrumKind::NotPseudoHermitian);
    CHECK(c.unpaired == std::vector<Index>{0});
    CHECK_FALSE(c.pseudo_hermitian());
  }
  SUBCASE("multiplicities must match") {
    const SpectrumClass c =
        classify_eigenvalues(vec({I1, I1, -I1}), 1e-8, std::vector<Index>{2, 2, 1});
    CHECK(c.kind == SpectrumKind::NotPseudoHermitian);
  }
  SUBCASE("every index appears exactly once") {
    const Eigen::VectorXcd v = vec({cplx(1, 1), 0.5, cplx(1, -1), cplx(2, 3), cplx(2, -3), 7.0, I1});
    const SpectrumClass c = classify_eigenvalues(v, 1e-8);
    std::vector<int> seen(7, 0);
    for (Index k : c.real_indices) ++seen[k];
    for (auto [a, b] : c.pairs) {
      ++seen[a];
      ++seen[b];
      CHECK(v[a].imag() > 0.0);
      CHECK(std::abs(v[a] - std::conj(v[b])) <= 1e-12);
    }
    for (Index k : c.unpaired) ++seen[k];
    CHECK(std::all_of(seen.begin(), seen.end(), [](int s) { return s == 1; }));
    CHECK(c.kind == SpectrumKind::NotPseudoHermitian);
    const auto p = c.partners(7);
    CHECK(p[0] == 2);
    CHECK(p[2] == 0);
    CHECK(p[1] == -1);
  }
  SUBCASE("greedy matching prefers the closest partner") {
    const SpectrumClass c =
        classify_eigenvalues(vec({cplx(1, 1), cplx(1.001, -1), cplx(1, -1)}), 1e-2);
    REQUIRE(c.pairs.size() == 1);
    CHECK(c.pairs[0].second == 2);
    CHECK(c.unpaired == std::vector<Index>{1});
  }
}

TEST_CASE("gauge alignment") {
  SUBCASE("Hermitian H, identity metric: c-matrices already the identity") {
    const Op h = diag({1.0, 4.0, 9.0});
    const BiSystem sys = eig_biorthonormal(h);
    const AlignedSystem al = align_gauge(sys, Metric::identity(3));
    REQUIRE(al.alignment.c_real.size() == 3);
    for (const Op& c : al.alignment.c_real) CHECK(std::abs(c(0, 0) - 1.0) < 1e-14);
    CHECK((al.alignment.rescale_factors.array() - 1.0).abs().maxCoeff() < 1e-14);
    CHECK(al.alignment.signs.minCoeff() == 1);
    CHECK(al.alignment.residual < 1e-14);
  }
  SUBCASE("diag(i,-i) with the swap metric") {
    Op swap(2, 2);
    swap << 0.0, 1.0, 1.0, 0.0;
    const Metric eta(swap);
    const Op h = diag({I1, -I1});
    const BiSystem sys = eig_biorthonormal(h);
    const AlignedSystem al = align_gauge(sys, eta);
    REQUIRE(al.alignment.c_pair.size() == 1);
    CHECK(al.alignment.c_pair[0].rows() == 1);
    CHECK(std::abs(al.alignment.c_pair[0](0, 0)) == doctest::Approx(1.0));
    CHECK(al.alignment.residual < 1e-14);
    const Op g = eta_gram(al.system, eta);
    CHECK((g - expected_gram_pattern(al.alignment)).cwiseAbs().maxCoeff() < 1e-14);
  }
  SUBCASE("rescaling a non-normalized real basis") {
    // Eigenvectors of a non-normal H with real spectrum and eta from the pipeline
    Rng rng(33);
    const Op basis = random_ginibre(3, 3, rng);
    const Op h = synthesize_hamiltonian(vec({-1.0, 0.5, 2.0}), basis);
    const Certificate cert = certify_pseudo_hermiticity(h, 1e-8);
    REQUIRE(cert.eta.has_value());
    const AlignedSystem al = align_gauge(cert.system, cert.classification, *cert.eta);
    CHECK(al.alignment.residual < 1e-10);
    const Op g = eta_gram(al.system, *cert.eta);
    CHECK((g - expected_gram_pattern(al.alignment)).cwiseAbs().maxCoeff() < 1e-8);
  }
  SUBCASE("degenerate conjugate pair blocks of size two") {
    Rng rng(34);
    const Op basis = random_ginibre(6, 6, rng);
    const Eigen::VectorXcd spec =
        vec({cplx(1, 2), cplx(1, 2), cplx(1, -2), cplx(1, -2), 3.0, 3.0});
    const Op h = synthesize_hamiltonian(spec, basis);
    const Certificate cert = certify_pseudo_hermiticity(h, 1e-8);
    REQUIRE(cert.eta.has_value());
    CHECK(cert.residual <= 1e-10);
    const AlignedSystem al = align_gauge(cert.system, cert.classification, *cert.eta);
    REQUIRE(al.alignment.c_pair.size() == 1);
    CHECK(al.alignment.c_pair[0].rows() == 2);
    CHECK(al.alignment.residual <= 1e-10);
    const Op g = eta_gram(al.system, *cert.eta);
    CHECK((g - expected_gram_pattern(al.alignment)).cwiseAbs().maxCoeff() <= 1e-8);
  }
  SUBCASE("negative directions are recorded as signs") {
    const Op h = diag({1.0, 2.0});
    const Metric sig = Metric::diagonal(Eigen::Vector2d(1.0, -1.0));
    const AlignedSystem al = align_gauge(eig_biorthonormal(h), sig);
    const Eigen::VectorXi s = al.alignment.signs;
    CHECK(s.sum() == 0);
    const Op g = eta_gram(al.system, sig);
    CHECK((g - expected_gram_pattern(al.alignment)).cwiseAbs().maxCoeff() < 1e-14);
  }
  SUBCASE("a metric that does not pair the eigenspaces") {
    Op h = diag({I1, -I1});
    CHECK_THROWS_AS(align_gauge(eig_biorthonormal(h), Metric::identity(2)), ValidationError);
  }
}

TEST_CASE("metric construction") {
  SUBCASE("Hermitian H with orthonormal basis gives the identity") {
    Rng rng(35);
    const Op u = random_unitary(5, rng);
    const Op h = u * diag({-2.0, -1.0, 0.5, 1.0, 3.0}) * u.adjoint();
    const BiSystem sys = eig_biorthonormal(h);
    const SpectrumClass cls = classify_spectrum(sys, 1e-8);
    CHECK((construct_eta(sys, cls).op() - Op::Identity(5, 5)).norm() < 1e-12);
    CHECK((construct_eta_inverse(sys, cls) - Op::Identity(5, 5)).norm() < 1e-12);
  }
  SUBCASE("diag(i,-i) in the standard basis") {
    const BiSystem sys = eig_biorthonormal(diag({I1, -I1}));
    const SpectrumClass cls = classify_spectrum(sys, 1e-8);
    const Metric eta = construct_eta(sys, cls);
    // phases of the standard basis vectors drop out: |phi_-><phi_+| + h.c.
    CHECK(std::abs(eta.op()(0, 0)) < 1e-15);
    CHECK(std::abs(eta.op()(1, 1)) < 1e-15);
    CHECK(std::abs(eta.op()(0, 1)) == doctest::Approx(1.0));
    const Op inv = construct_eta_inverse(sys, cls);
    CHECK((eta.op() * inv - Op::Identity(2, 2)).norm() < 1e-14);
    CHECK(pseudo_hermiticity_residual(diag({I1, -I1}), eta) < 1e-15);
  }
  SUBCASE("prescribed spectrum with a random basis") {
    Rng rng(36);
    for (int trial = 0; trial < 10; ++trial) {
      const Op basis = random_ginibre(4, 4, rng);
      const Op h = synthesize_hamiltonian(vec({1.0, 2.0, cplx(3, 4), cplx(3, -4)}), basis);
      const BiSystem sys = eig_biorthonormal(h);
      const SpectrumClass cls = classify_spectrum(sys, 1e-8);
      CHECK(cls.kind == SpectrumKind::Mixed);
      const Metric eta = construct_eta(sys, cls);
      CHECK(pseudo_hermiticity_residual(h, eta) <= 1e-10);
      CHECK(eta.hermiticity_residual() <= 1e-12);
      CHECK((eta.op() * construct_eta_inverse(sys, cls) - Op::Identity(4, 4)).norm() <= 1e-10);
    }
  }
  SUBCASE("unpaired eigenvalue refused") {
    const BiSystem sys = eig_biorthonormal(diag({I1, 2.0 * I1}));
    const SpectrumClass cls = classify_spectrum(sys, 1e-8);
    CHECK_THROWS_AS(construct_eta(sys, cls), ValidationError);
    CHECK_THROWS_AS(construct_eta_inverse(sys, cls), ValidationError);
  }
}

TEST_CASE("Hamiltonian synthesis") {
  CHECK((synthesize_hamiltonian(vec({1.0, 2.0}), Op::Identity(2, 2)) - diag({1.0, 2.0})).norm() ==
        0.0);
  CHECK((synthesize_hamiltonian(vec({I1, -I1}), Op::Identity(2, 2)) - diag({I1, -I1})).norm() ==
        0.0);

  Rng rng(37);
  const Op basis = random_ginibre(3, 3, rng);
  const Eigen::VectorXcd spec = vec({1.0, cplx(3, 4), cplx(3, -4)});
  const Op h = synthesize_hamiltonian(spec, basis);
  Eigen::VectorXcd e = eigenvalues(h);
  const auto order = order_by_real_part(e);
  CHECK(std::abs(e[order[0]] - 1.0) <= 1e-8);
  CHECK(std::abs(e[order[1]] - cplx(3, -4)) <= 1e-8);
  CHECK(std::abs(e[order[2]] - cplx(3, 4)) <= 1e-8);

  CHECK_THROWS_AS(synthesize_hamiltonian(vec({1.0, 2.0}), Op::Zero(2, 2)), ValidationError);
  CHECK_THROWS_AS(synthesize_hamiltonian(vec({I1, 2.0}), Op::Identity(2, 2)), ValidationError);
}

TEST_CASE("PT residual") {
  Op p(3, 3);
  p << 0, 0, 1, 0, 1, 0, 1, 0, 0;
  Op h(3, 3);
  h << 2, 1, 0, 1, 5, 1, 0, 1, 2;
  CHECK(is_pt_symmetric(h, p) == 0.0);
  // i x is PT-symmetric for odd x
  CHECK(is_pt_symmetric(diag({-I1, 0.0, I1}), p) == 0.0);
  CHECK(is_pt_symmetric(diag({I1, 0.0, I1}), p) > 0.1);
  CHECK_THROWS_AS(is_pt_symmetric(h, 2.0 * p), ValidationError);

  const GridOps ops = build_ops(Grid1D::make(61, 6.0));
  CHECK(is_pt_symmetric(example_h1(ops), ops.Par) <= 1e-12);
  CHECK(is_pt_symmetric(example_h2(ops), ops.Par) > 0.1);
}

TEST_CASE("PT-symmetric discretized Hamiltonian admits a metric") {
  const GridOps ops = build_ops(Grid1D::make(41, 5.0));
  const Op h = schrodinger_hamiltonian(
      ops, 0.5, [](double x) { return x * x; }, [](double x) { return 0.5 * x; });
  REQUIRE(is_pt_symmetric(h, ops.Par) <= 1e-12);
  const Certificate cert = certify_pseudo_hermiticity(h, 1e-8 * h.norm());
  REQUIRE(cert.eta.has_value());
  CHECK(cert.classification.pseudo_hermitian());
  CHECK(cert.residual <= 1e-10);
}

TEST_CASE("certificate for a non-pseudo-Hermitian matrix") {
  const Certificate cert = certify_pseudo_hermiticity(diag({I1, 2.0 * I1}), 1e-8);
  CHECK_FALSE(cert.eta.has_value());
  CHECK(cert.classification.kind == SpectrumKind::NotPseudoHermitian);
  CHECK(to_string(cert.classification.kind) == "NotPseudoHermitian");
}

TEST_CASE("2x2 eigenvalues agree with the closed form") {
  Rng rng(38);
  const Metric sig = Metric::diagonal(Eigen::Vector2d(1.0, -1.0));
  for (int k = 0; k < 10; ++k) {
    const Op h = random_pseudo_hermitian(sig, 2, 500 + k);
    const auto [a, b] = oracle::eig2(h(0, 0), h(0, 1), h(1, 0), h(1, 1));
    const Eigen::VectorXcd e = eigenvalues(h);
    const double d1 = std::abs(e[0] - a) + std::abs(e[1] - b);
    const double d2 = std::abs(e[0] - b) + std::abs(e[1] - a);
    CHECK(std::min(d1, d2) <= 1e-12 * (1.0 + h.norm()));
    // real pair or conjugate pair
    CHECK((std::abs(a.imag()) < 1e-12 || std::abs(a - std::conj(b)) < 1e-12));
  }
}
