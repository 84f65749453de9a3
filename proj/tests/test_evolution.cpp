// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <sstream>

#include "doctest.h"
#include "pseudoherm/evolution.hpp"
#include "pseudoherm/wdw.hpp"

using namespace pseudoherm;

namespace {

const cplx I1(0.0, 1.0);

Op diag(std::initializer_list<cplx> d) {
  Eigen::VectorXcd v(static_cast<Index>(d.size()));
  Index k = 0;
  for (cplx z : d) v[k++] = z;
  return v.asDiagonal();
}

StateVec ones(Index n) {
  return StateVec::Ones(n);
}

Op swap2() {
  Op s(2, 2);
  s << 0.0, 1.0, 1.0, 0.0;
  return s;
}

}  // namespace

TEST_CASE("zero generator keeps the state") {
  StateVec psi(2);
  psi << cplx(0.3, 0.1), cplx(-1.0, 2.0);
  const Trajectory tr = evolve(Op(Op::Zero(2, 2)), psi, 1.0, 0.1);
  CHECK(tr.size() == 11);
  CHECK((tr.states.back() - psi).norm() == 0.0);
  CHECK(tr.times.back() == doctest::Approx(1.0));
}

TEST_CASE("Hermitian diagonal generator reproduces the phases") {
  const double pi = std::acos(-1.0);
  const Trajectory tr = evolve(diag({1.0, 2.0}), ones(2), pi, 1e-3);
  const StateVec& end = tr.states.back();
  CHECK(tr.times.back() == doctest::Approx(pi).epsilon(1e-15));
  CHECK(std::abs(end[0] - std::exp(-I1 * pi)) <= 1e-8);
  CHECK(std::abs(end[1] - std::exp(-2.0 * I1 * pi)) <= 1e-8);
}

TEST_CASE("non-Hermitian diag(i) grows exponentially") {
  const Trajectory tr = evolve(diag({I1}), ones(1), 1.0, 1e-3);
  CHECK(std::abs(tr.states.back()[0]) == doctest::Approx(std::exp(1.0)).epsilon(1e-6));
}

TEST_CASE("fourth-order convergence") {
  const Op h = diag({1.0, 2.0});
  auto err = [&](double dt) {
    const Trajectory tr = evolve(h, ones(2), 3.0, dt);
    StateVec exact(2);
    exact << std::exp(-I1 * 3.0), std::exp(-2.0 * I1 * 3.0);
    return (tr.states.back() - exact).norm();
  };
  const double ratio = err(0.02) / err(0.01);
  CHECK(ratio == doctest::Approx(16.0).epsilon(0.1));
}

TEST_CASE("stride and step count") {
  EvolveOptions opt;
  opt.stride = 4;
  const Trajectory tr = evolve(diag({1.0}), ones(1), 1.0, 0.1, opt);
  // 10 steps: samples at 0, 4, 8 and the final step
  REQUIRE(tr.size() == 4);
  CHECK(tr.times[1] == doctest::Approx(0.4));
  CHECK(tr.times[3] == doctest::Approx(1.0));
  // non-divisible t_final rounds the step count up
  CHECK(evolve(diag({1.0}), ones(1), 1.05, 0.1).size() == 12);
}

TEST_CASE("argument validation") {
  CHECK_THROWS_AS(evolve(diag({1.0}), ones(2), 1.0, 0.1), DimensionError);
  CHECK_THROWS_AS(evolve(diag({1.0}), ones(1), 1.0, 0.0), ValidationError);
  CHECK_THROWS_AS(evolve(diag({1.0}), ones(1), -1.0, 0.1), ValidationError);
  CHECK_THROWS_AS(evolve(Generator{}, ones(1), 1.0, 0.1), ValidationError);
  CHECK_THROWS_AS(evolve(diag({-800.0 * I1}), ones(1), 100.0, 0.5), InstabilityError);
}

TEST_CASE("inner product conservation") {
  SUBCASE("Hermitian generator, identity metric") {
    Rng rng(61);
    const Op g = random_ginibre(4, 4, rng);
    const Op h = (g + g.adjoint()) / 2.0;
    const StateVec a = random_ginibre(4, 1, rng).col(0);
    const StateVec b = random_ginibre(4, 1, rng).col(0);
    const Trajectory ta = evolve(h, a, 10.0, 1e-3);
    const Trajectory tb = evolve(h, b, 10.0, 1e-3);
    CHECK(inner_product_drift(ta, tb, Metric::identity(4)) <= 1e-9);
  }
  SUBCASE("diag(i,-i) with the swap metric") {
    const Trajectory t = evolve(diag({I1, -I1}), ones(2), 10.0, 1e-3);
    CHECK(inner_product_drift(t, t, Metric(swap2())) <= 1e-8);
  }
  SUBCASE("diag(i,2i) with the identity drifts") {
    const Trajectory t = evolve(diag({I1, 2.0 * I1}), ones(2), 10.0, 1e-3);
    CHECK(inner_product_drift(t, t, Metric::identity(2)) > 0.1);
  }
  SUBCASE("random metric and random pseudo-Hermitian generator") {
    Rng rng(62);
    const Metric eta = random_metric(4, rng);
    const Op h = random_pseudo_hermitian(eta, 4, 7);
    const StateVec a = random_ginibre(4, 1, rng).col(0);
    const StateVec b = random_ginibre(4, 1, rng).col(0);
    const double dt = 0.01 / h.norm();
    const Trajectory ta = evolve(h, a, 2.0, dt, {50});
    const Trajectory tb = evolve(h, b, 2.0, dt, {50});
    CHECK(inner_product_drift(ta, tb, eta) <= 1e-7);
  }
  SUBCASE("zero initial product uses the absolute drift") {
    const Trajectory ta = evolve(diag({1.0, 2.0}), StateVec::Unit(2, 0), 1.0, 1e-2);
    const Trajectory tb = evolve(diag({1.0, 2.0}), StateVec::Unit(2, 1), 1.0, 1e-2);
    CHECK(inner_product_drift(ta, tb, Metric::identity(2)) < 1e-15);
  }
  SUBCASE("time stamps must match") {
    const Trajectory ta = evolve(diag({1.0}), ones(1), 1.0, 0.1);
    const Trajectory tb = evolve(diag({1.0}), ones(1), 1.0, 0.05);
    CHECK_THROWS_AS(inner_product_drift(ta, tb, Metric::identity(1)), ValidationError);
  }
}

TEST_CASE("time-dependent generator") {
  // i psi' = t psi  ->  psi(t) = exp(-i t^2 / 2)
  const Generator gen = [](double t) {
    Op h(1, 1);
    h(0, 0) = t;
    return h;
  };
  const Trajectory tr = evolve(gen, ones(1), 2.0, 1e-3);
  CHECK(std::abs(tr.states.back()[0] - std::exp(-I1 * 2.0)) <= 1e-10);

  const WdwModel m(0, 1.0, -0.5, Grid1D::make(21, 5.0));
  const Metric eta = wdw_metric(21);
  const StateVec psi = Eigen::VectorXd::LinSpaced(42, 0.1, 1.0).cast<cplx>();
  const Trajectory w = evolve(wdw_generator(m, 0.05), psi, 1.0, 1e-3, {100});
  CHECK(inner_product_drift(w, w, eta) <= 1e-9);
}

TEST_CASE("inner product CSV") {
  const Trajectory t = evolve(diag({I1, -I1}), ones(2), 0.2, 0.1);
  std::ostringstream os;
  write_inner_product_csv(os, t, t, Metric(swap2()));
  const std::string s = os.str();
  CHECK(s.rfind("t,re,im\n", 0) == 0);
  CHECK(std::count(s.begin(), s.end(), '\n') == 4);
  CHECK(inner_product_series(t, t, Metric(swap2())).front() == cplx(2.0, 0.0));
}
