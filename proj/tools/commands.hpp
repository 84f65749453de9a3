// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pseudoherm/discretize.hpp"
#include "pseudoherm/psusy.hpp"

namespace pseudoherm::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kNotPseudoHermitian = 2,
  kDefective = 3,
};

struct GlobalOptions {
  double tol = 1e-8;
  std::uint64_t seed = 0;
  std::string format = "csv";
  std::string out_dir;
};

struct GridArgs {
  Index n_points = 201;
  double half_width = 8.0;
  std::string stencil = "central";
};

struct WdwArgs {
  int kappa = 0;
  double mass = 1.0;
  double alpha = 0.0;
  Index n_points = 301;
  double half_width = 0.0;  // 0 selects default_phi_half_width(omega)
  std::string stencil = "central";
};

struct SusyArgs {
  std::string xi = "poly:1:1";
  double lambda = 1.0;
  std::string f_minus;
  GridArgs grid{201, 8.0, "sinc"};
  Index levels = 6;
};

struct SchrodingerArgs {
  std::string v_even = "harmonic";
  std::string v_odd = "zero";
  double mass = 0.5;
  GridArgs grid;
  Index levels = 10;
};

struct EvolveArgs {
  std::string matrix;
  std::string eta;
  double t_final = 10.0;
  double dt = 1e-3;
  Index stride = 100;
};

/// "poly:c0,c1,..." -> coefficients of 1, x, x^2, ...
std::vector<double> parse_poly(const std::string& spec);
RealFn parse_function(const std::string& spec, Parity parity);
XiProfile parse_xi(const std::string& spec);
/// "a:b:n" -> n equally spaced values from a to b inclusive.
std::vector<double> parse_range(const std::string& spec);

int cmd_check(const GlobalOptions& g, const std::string& matrix, const std::string& eta);
int cmd_wdw(const GlobalOptions& g, const WdwArgs& a);
int cmd_wdw_sweep(const GlobalOptions& g, const WdwArgs& a, const std::string& alpha_range);
int cmd_susy(const GlobalOptions& g, const SusyArgs& a);
int cmd_schrodinger(const GlobalOptions& g, const SchrodingerArgs& a);
int cmd_random(const GlobalOptions& g, Index dim);
int cmd_evolve(const GlobalOptions& g, const EvolveArgs& a);
int cmd_demo(const GlobalOptions& g, const std::string& name, const WdwArgs& wdw, int poly_n);

}  // namespace pseudoherm::cli
