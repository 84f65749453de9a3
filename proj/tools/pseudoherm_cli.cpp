// SPDX-License-Identifier: Apache-2.0
//
// pseudoherm: command-line front end.
//
// Exit codes: 0 success, 1 usage or I/O error, 2 not pseudo-Hermitian,
// 3 defective (non-diagonalizable) matrix.

#include <iostream>

#include "CLI11.hpp"
#include "commands.hpp"
#include "pseudoherm/io.hpp"

using namespace pseudoherm;
using namespace pseudoherm::cli;

namespace {

void add_grid(CLI::App* cmd, GridArgs& g) {
  cmd->add_option("--n-points", g.n_points, "odd number of grid points")->capture_default_str();
  cmd->add_option("--half-width", g.half_width, "box half-width L")->capture_default_str();
  cmd->add_option("--stencil", g.stencil, "central or sinc")->capture_default_str();
}

void add_wdw(CLI::App* cmd, WdwArgs& w) {
  cmd->add_option("--kappa", w.kappa, "spatial curvature -1, 0 or 1")->capture_default_str();
  cmd->add_option("--mass", w.mass, "scalar field mass")->capture_default_str();
  cmd->add_option("--alpha", w.alpha, "log scale factor")->capture_default_str();
  cmd->add_option("--n-points", w.n_points, "odd number of phi grid points")->capture_default_str();
  cmd->add_option("--half-width", w.half_width, "phi half-width (0: automatic)")
      ->capture_default_str();
  cmd->add_option("--stencil", w.stencil, "central or sinc")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite-dimensional pseudo-Hermitian quantum mechanics toolkit"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  GlobalOptions g;
  app.add_option("--tol", g.tol, "pair / residual tolerance")->capture_default_str();
  app.add_option("--seed", g.seed, "random seed")->capture_default_str();
  app.add_option("--format", g.format, "stdout format when --out-dir is not given: csv or json")
      ->capture_default_str();
  app.add_option("--out-dir", g.out_dir, "write all outputs into this directory");

  std::string matrix;
  std::string eta;
  auto* check = app.add_subcommand("check", "classify a matrix and certify a metric for it");
  check->add_option("matrix", matrix, "matrix JSON file")->required();
  check->add_option("--eta", eta, "metric JSON file; report the residual only");

  WdwArgs wdw;
  std::string alpha_range;
  auto* wdw_cmd = app.add_subcommand("wdw", "Wheeler-DeWitt minisuperspace spectrum");
  add_wdw(wdw_cmd, wdw);
  auto* sweep = wdw_cmd->add_subcommand("sweep", "classification table over alpha");
  sweep->add_option("--alpha-range", alpha_range, "a:b:n")->required();

  SusyArgs susy;
  auto* susy_cmd = app.add_subcommand("susy", "first-order pseudo-supersymmetric partners");
  susy_cmd->add_option("--xi", susy.xi, "poly:<n>:<ell> or const:<c>")->capture_default_str();
  susy_cmd->add_option("--lambda", susy.lambda, "nonzero amplitude of f+")->capture_default_str();
  susy_cmd->add_option("--f-minus", susy.f_minus, "odd part of f: poly:<c0,c1,...>, linear, cubic");
  susy_cmd->add_option("--levels", susy.levels, "levels compared")->capture_default_str();
  add_grid(susy_cmd, susy.grid);

  SchrodingerArgs sch;
  auto* sch_cmd = app.add_subcommand("schrodinger", "p^2/2m + V_even(x) + i V_odd(x) on a grid");
  sch_cmd->add_option("--v-even", sch.v_even, "zero, harmonic, quartic or poly:<c0,c1,...>")
      ->capture_default_str();
  sch_cmd->add_option("--v-odd", sch.v_odd, "zero, linear, cubic or poly:<c0,c1,...>")
      ->capture_default_str();
  sch_cmd->add_option("--mass", sch.mass, "particle mass")->capture_default_str();
  sch_cmd->add_option("--levels", sch.levels, "levels reported")->capture_default_str();
  add_grid(sch_cmd, sch.grid);

  Index dim = 4;
  auto* random = app.add_subcommand("random", "random pseudo-Hermitian matrix and its metric");
  random->add_option("--dim", dim, "dimension")->capture_default_str();

  EvolveArgs ev;
  auto* evolve = app.add_subcommand("evolve", "RK4 evolution and inner-product drift");
  evolve->add_option("matrix", ev.matrix, "generator JSON file")->required();
  evolve->add_option("--eta", ev.eta, "metric JSON file (default identity)");
  evolve->add_option("--t-final", ev.t_final, "final time")->capture_default_str();
  evolve->add_option("--dt", ev.dt, "time step")->capture_default_str();
  evolve->add_option("--stride", ev.stride, "record every n-th step")->capture_default_str();

  std::string demo_name;
  WdwArgs demo_wdw;
  demo_wdw.kappa = 1;
  demo_wdw.alpha = 0.5;
  int poly_n = 1;
  auto* demo = app.add_subcommand("demo", "reproduce the built-in scenarios");
  demo->add_option("name", demo_name, "pt-examples, wdw or susy-poly")->required();
  add_wdw(demo, demo_wdw);
  demo->add_option("--n", poly_n, "xi = -x^{2n} for susy-poly")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (check->parsed()) return cmd_check(g, matrix, eta);
    if (sweep->parsed()) return cmd_wdw_sweep(g, wdw, alpha_range);
    if (wdw_cmd->parsed()) return cmd_wdw(g, wdw);
    if (susy_cmd->parsed()) return cmd_susy(g, susy);
    if (sch_cmd->parsed()) return cmd_schrodinger(g, sch);
    if (random->parsed()) return cmd_random(g, dim);
    if (evolve->parsed()) return cmd_evolve(g, ev);
    if (demo->parsed()) return cmd_demo(g, demo_name, demo_wdw, poly_n);
  } catch (const DefectiveMatrix& e) {
    std::cerr << "defective matrix: " << e.what() << " (condition number " << e.condition()
              << ")\n";
    return kDefective;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
