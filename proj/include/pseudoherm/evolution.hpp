// SPDX-License-Identifier: Apache-2.0
//
// Fixed-step RK4 integration of i d/dt |psi> = H(t) |psi> and the
// indefinite inner product bookkeeping used to test its conservation.
// Keep dt <= 0.1 / ||H|| for a stable explicit step.

#pragma once

#include <functional>
#include <ostream>
#include <vector>

#include "pseudoherm/operators.hpp"

namespace pseudoherm {

using Generator = std::function<Op(double)>;

/// Generator returning the same operator at every time.
Generator constant_generator(Op H);

struct Trajectory {
  std::vector<double> times;
  std::vector<StateVec> states;

  std::size_t size() const { return times.size(); }
};

struct EvolveOptions {
  /// Record every `stride`-th step (the final state is always recorded).
  Index stride = 1;
};

/// Integrates from t = 0 to t_final with n = ceil(t_final / dt) equal steps
/// of size t_final / n. H is sampled at t, t + h/2 and t + h. Throws
/// InstabilityError on non-finite amplitudes.
Trajectory evolve(const Generator& H, const StateVec& psi0, double t_final, double dt,
                  const EvolveOptions& options = {});
Trajectory evolve(const Op& H, const StateVec& psi0, double t_final, double dt,
                  const EvolveOptions& options = {});

/// <<psi1(t)|psi2(t)>>_eta at every recorded time.
std::vector<cplx> inner_product_series(const Trajectory& a, const Trajectory& b, const Metric& eta);

/// max_t |<<psi1|psi2>>(t) - <<psi1|psi2>>(0)|, divided by |<<psi1|psi2>>(0)|
/// unless that vanishes. Throws ValidationError on mismatched time stamps.
double inner_product_drift(const Trajectory& a, const Trajectory& b, const Metric& eta);

/// Writes "t,re,im" rows for the inner product series.
void write_inner_product_csv(std::ostream& os, const Trajectory& a, const Trajectory& b,
                             const Metric& eta);

}  // namespace pseudoherm
