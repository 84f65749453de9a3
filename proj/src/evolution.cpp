// SPDX-License-Identifier: Apache-2.0

#include "pseudoherm/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>

namespace pseudoherm {

Generator constant_generator(Op H) {
  return [H = std::move(H)](double) -> Op { return H; };
}

namespace {

// One RK4 step with H sampled at t, t + h/2 and t + h.
StateVec rk4_step(const Op& h0, const Op& hm, const Op& h1, const StateVec& psi, double h) {
  const cplx mi(0.0, -1.0);
  const StateVec k1 = mi * (h0 * psi);
  const StateVec k2 = mi * (hm * (psi + 0.5 * h * k1));
  const StateVec k3 = mi * (hm * (psi + 0.5 * h * k2));
  const StateVec k4 = mi * (h1 * (psi + h * k3));
  return psi + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

void check_args(double t_final, double dt, const EvolveOptions& options) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw ValidationError("dt must be positive");
  if (!(t_final >= 0.0) || !std::isfinite(t_final)) {
    throw ValidationError("t_final must be non-negative");
  }
  if (options.stride < 1) throw ValidationError("stride must be >= 1");
}

Trajectory integrate(const Generator* gen, const Op* fixed, const StateVec& psi0, double t_final,
                     double dt, const EvolveOptions& options) {
  check_args(t_final, dt, options);
  const auto steps = static_cast<Index>(std::ceil(t_final / dt - 1e-12));
  const double h = steps > 0 ? t_final / static_cast<double>(steps) : 0.0;

  Trajectory traj;
  traj.times.push_back(0.0);
  traj.states.push_back(psi0);
  StateVec psi = psi0;
  for (Index s = 0; s < steps; ++s) {
    const double t = static_cast<double>(s) * h;
    if (fixed) {
      psi = rk4_step(*fixed, *fixed, *fixed, psi, h);
    } else {
      const Op h0 = (*gen)(t);
      const Op hm = (*gen)(t + 0.5 * h);
      const Op h1 = (*gen)(t + h);
      if (h0.rows() != psi.size() || hm.rows() != psi.size() || h1.rows() != psi.size()) {
        throw DimensionError("generator dimension changed or does not match psi0");
      }
      psi = rk4_step(h0, hm, h1, psi, h);
    }
    if (!psi.allFinite()) {
      std::ostringstream os;
      os << "non-finite amplitudes at step " << s + 1 << " (t = " << t + h
         << "); reduce dt below 0.1/||H||";
      throw InstabilityError(os.str());
    }
    if ((s + 1) % options.stride == 0 || s + 1 == steps) {
      traj.times.push_back(static_cast<double>(s + 1) * h);
      traj.states.push_back(psi);
    }
  }
  return traj;
}

}  // namespace

Trajectory evolve(const Generator& H, const StateVec& psi0, double t_final, double dt,
                  const EvolveOptions& options) {
  if (!H) throw ValidationError("generator is empty");
  const Op h0 = H(0.0);
  validate_op(h0, "H(0)");
  if (h0.rows() != psi0.size()) throw DimensionError("H(0) dimension does not match psi0");
  return integrate(&H, nullptr, psi0, t_final, dt, options);
}

Trajectory evolve(const Op& H, const StateVec& psi0, double t_final, double dt,
                  const EvolveOptions& options) {
  validate_op(H, "H");
  if (H.rows() != psi0.size()) throw DimensionError("H dimension does not match psi0");
  return integrate(nullptr, &H, psi0, t_final, dt, options);
}

std::vector<cplx> inner_product_series(const Trajectory& a, const Trajectory& b, const Metric& eta) {
  if (a.size() != b.size()) throw ValidationError("trajectories have different lengths");
  std::vector<cplx> out;
  out.reserve(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (std::abs(a.times[k] - b.times[k]) > 1e-12 * (1.0 + std::abs(a.times[k]))) {
      throw ValidationError("trajectories have mismatched time stamps");
    }
    out.push_back(indefinite_inner(a.states[k], b.states[k], eta));
  }
  return out;
}

double inner_product_drift(const Trajectory& a, const Trajectory& b, const Metric& eta) {
  const std::vector<cplx> series = inner_product_series(a, b, eta);
  if (series.empty()) return 0.0;
  const cplx first = series.front();
  double worst = 0.0;
  for (cplx v : series) worst = std::max(worst, std::abs(v - first));
  return std::abs(first) > 0.0 ? worst / std::abs(first) : worst;
}

void write_inner_product_csv(std::ostream& os, const Trajectory& a, const Trajectory& b,
                             const Metric& eta) {
  const std::vector<cplx> series = inner_product_series(a, b, eta);
  os << "t,re,im\n" << std::setprecision(17);
  for (std::size_t k = 0; k < series.size(); ++k) {
    os << a.times[k] << ',' << series[k].real() << ',' << series[k].imag() << '\n';
  }
}

}  // namespace pseudoherm
