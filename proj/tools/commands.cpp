// SPDX-License-Identifier: Apache-2.0

#include "commands.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>

#include "pseudoherm/biorthogonal.hpp"
#include "pseudoherm/evolution.hpp"
#include "pseudoherm/io.hpp"
#include "pseudoherm/sweep.hpp"
#include "pseudoherm/wdw.hpp"

namespace pseudoherm::cli {

namespace {

std::string num(double x) {
  std::ostringstream os;
  os << std::setprecision(10) << x;
  return os.str();
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream is(s);
  while (std::getline(is, item, sep)) out.push_back(item);
  return out;
}

double to_double(const std::string& s, const std::string& context) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ParseError("cannot read a number from '" + s + "' in " + context);
  }
}

// Writes outputs to --out-dir, or the one matching --format to stdout.
class Sink {
 public:
  explicit Sink(const GlobalOptions& g) : g_(g) {
    if (!g.out_dir.empty()) std::filesystem::create_directories(g.out_dir);
  }

  void emit(const std::string& name, const std::string& content) const {
    const std::string ext = std::filesystem::path(name).extension().string();
    if (g_.out_dir.empty()) {
      if (ext == "." + g_.format) std::cout << content;
      return;
    }
    const std::filesystem::path path = std::filesystem::path(g_.out_dir) / name;
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write '" + path.string() + "'");
    out << content;
    std::cerr << "wrote " << path.string() << '\n';
  }

  void summary(const std::string& text) const {
    std::cerr << text;
    if (!g_.out_dir.empty()) {
      std::ofstream out(std::filesystem::path(g_.out_dir) / "summary.txt");
      out << text;
    }
  }

 private:
  const GlobalOptions& g_;
};

RunHeader make_header(const GlobalOptions& g, const std::string& command) {
  RunHeader h;
  h.command = command;
  h.seed = g.seed;
  h.tolerances["pair"] = g.tol;
  return h;
}

void check_globals(const GlobalOptions& g) {
  if (!(g.tol > 0.0)) throw ValidationError("--tol must be positive");
  if (g.format != "csv" && g.format != "json") throw ValidationError("--format must be csv or json");
}

std::vector<Index> multiplicities(const BiSystem& sys) {
  std::vector<Index> m(static_cast<std::size_t>(sys.dim()));
  for (Index k = 0; k < sys.dim(); ++k) m[static_cast<std::size_t>(k)] = sys.multiplicity(k);
  return m;
}

std::vector<Index> multiplicities(const Eigen::VectorXcd& values) {
  const double radius = values.size() ? values.cwiseAbs().maxCoeff() : 0.0;
  std::vector<Index> m(static_cast<std::size_t>(values.size()), 1);
  for (const auto& c : cluster_eigenvalues(values, 1e-8 * std::max(1.0, radius))) {
    for (Index k : c.members) m[static_cast<std::size_t>(k)] = c.multiplicity();
  }
  return m;
}

std::string spectrum_csv(const Eigen::VectorXcd& values, const SpectrumClass& cls,
                         const std::vector<Index>& mult, const RunHeader& h) {
  std::ostringstream os;
  write_spectrum_csv(os, values, cls, mult, h);
  return os.str();
}

Grid1D make_grid(const GridArgs& a) {
  return Grid1D::make(a.n_points, a.half_width);
}

std::string describe(const SpectrumClass& cls) {
  std::ostringstream os;
  os << to_string(cls.kind) << " (" << cls.real_indices.size() << " real, " << cls.pairs.size()
     << " conjugate pairs, " << cls.unpaired.size() << " unpaired)";
  return os.str();
}

int exit_for(const SpectrumClass& cls) {
  return cls.pseudo_hermitian() ? kOk : kNotPseudoHermitian;
}

WdwModel make_wdw(const WdwArgs& a) {
  const double omega = a.mass * std::exp(3.0 * a.alpha);
  const double half = a.half_width > 0.0 ? a.half_width : default_phi_half_width(omega);
  return WdwModel(a.kappa, a.mass, a.alpha, Grid1D::make(a.n_points, half), parse_stencil(a.stencil));
}

void wdw_parameters(RunHeader& h, const WdwModel& m) {
  h.parameters["kappa"] = std::to_string(m.kappa());
  h.parameters["mass"] = num(m.mass());
  h.parameters["alpha"] = num(m.alpha());
  h.parameters["n_points"] = std::to_string(m.phi_grid().n_points());
  h.parameters["half_width"] = num(m.phi_grid().half_width());
  h.parameters["stencil"] = to_string(m.stencil());
}

int run_wdw(const GlobalOptions& g, const WdwArgs& a, const std::string& command) {
  const WdwModel model = make_wdw(a);
  const WdwSpectrum spec = wdw_spectrum(model, g.tol);
  RunHeader h = make_header(g, command);
  wdw_parameters(h, model);

  const Sink sink(g);
  sink.emit("wdw_spectrum.csv",
            spectrum_csv(spec.eigenvalues, spec.classification, multiplicities(spec.eigenvalues), h));

  std::map<std::string, double> values{
      {"real_count", static_cast<double>(spec.classification.real_indices.size())},
      {"pair_count", static_cast<double>(spec.classification.pairs.size())},
      {"boundary_case", spec.boundary_case ? 1.0 : 0.0},
      {"omega", model.omega()}};
  for (int n = 0; n < 4; ++n) {
    if (auto b = wdw_reality_boundary(model, n)) values["alpha_star_" + std::to_string(n)] = *b;
  }
  sink.emit("wdw_report.json",
            report_to_json(values, h, {{"classification", to_string(spec.classification.kind)}}));

  std::ostringstream os;
  os << "WDW kappa=" << model.kappa() << " m=" << model.mass() << " alpha=" << model.alpha()
     << " N=" << model.phi_grid().n_points() << " L=" << model.phi_grid().half_width() << "\n"
     << "  classification: " << describe(spec.classification) << "\n"
     << "  lowest |E|:";
  for (Index k = 0; k < std::min<Index>(6, spec.eigenvalues.size()); ++k) {
    os << ' ' << num(spec.eigenvalues[k].real()) << (spec.eigenvalues[k].imag() < 0 ? "" : "+")
       << num(spec.eigenvalues[k].imag()) << 'i';
  }
  os << '\n';
  if (spec.boundary_case) os << "  warning: D has a zero eigenvalue (exceptional point)\n";
  sink.summary(os.str());
  return exit_for(spec.classification);
}

int run_susy(const GlobalOptions& g, const SusyArgs& a, const std::string& command) {
  if (a.levels < 1) throw ValidationError("--levels must be >= 1");
  FirstOrderData data{make_grid(a.grid), parse_stencil(a.grid.stencil),
                      a.f_minus.empty() ? RealFn() : parse_function(a.f_minus, Parity::Odd),
                      parse_xi(a.xi), a.lambda, RealFn()};
  const FirstOrderTerms terms = hermitian_plus_condition(data);
  const GridOps ops = grid_ops_for(terms);
  const Op D = first_order_D(terms, ops);
  const auto [eta_plus, eta_minus] = parity_metrics(ops);
  const SusyPair pair = build_susy_pair(D, eta_plus, eta_minus);
  const SusyResiduals res = susy_residuals(pair);
  const XiFamily fam = xi_family_hamiltonians(terms, ops);
  const Index resolved = resolved_mode_count(a.grid.n_points);
  const PartnerSpectra spectra =
      compare_partner_spectra(fam.H_plus, fam.H_minus, a.levels, resolved);

  RunHeader h = make_header(g, command);
  h.parameters["xi"] = data.xi.label;
  h.parameters["lambda"] = num(a.lambda);
  h.parameters["f_minus"] = a.f_minus.empty() ? "0" : a.f_minus;
  h.parameters["n_points"] = std::to_string(a.grid.n_points);
  h.parameters["half_width"] = num(a.grid.half_width);
  h.parameters["stencil"] = a.grid.stencil;
  h.parameters["resolved_modes"] = std::to_string(resolved);

  std::ostringstream csv;
  write_csv_header(csv, h);
  csv << "level,plus_re,plus_im,minus_re,minus_im\n" << std::setprecision(17);
  for (Index k = 0; k < spectra.plus.size(); ++k) {
    csv << k << ',' << spectra.plus[k].real() << ',' << spectra.plus[k].imag() << ','
        << spectra.minus[k].real() << ',' << spectra.minus[k].imag() << '\n';
  }

  const std::map<std::string, double> values{
      {"h_plus_hermiticity", relative_difference(fam.H_plus, fam.H_plus.adjoint())},
      {"d_sharp_closed_form", relative_difference(first_order_D_sharp(terms, ops), pair.D_sharp)},
      {"intertwining_product", res.intertwining},
      {"intertwining_closed_form", intertwining_residual(D, fam.H_plus, fam.H_minus)},
      {"superalgebra_q_square", res.q_square},
      {"superalgebra_anticommutator", res.anticommutator},
      {"isospectral_gap", spectra.max_relative_gap},
      {"max_imag_minus_resolved", spectra.max_imag_minus},
      {"h_minus_pt_residual", is_pt_symmetric(fam.H_minus, ops.Par)},
      {"h_minus_p_residual", pseudo_hermiticity_residual(fam.H_minus, eta_minus)},
      {"zero_modes_plus", static_cast<double>(spectra.zero_modes_plus)},
      {"zero_modes_minus", static_cast<double>(spectra.zero_modes_minus)},
      {"degenerate", terms.degenerate ? 1.0 : 0.0}};

  const Sink sink(g);
  sink.emit("susy_spectra.csv", csv.str());
  sink.emit("susy_report.json", report_to_json(values, h));

  std::ostringstream os;
  os << "pseudo-SUSY partners xi=" << data.xi.label << " lambda=" << a.lambda
     << " f_minus=" << (a.f_minus.empty() ? "0" : a.f_minus) << " N=" << a.grid.n_points
     << " L=" << a.grid.half_width << "\n";
  for (const auto& [k, v] : values) os << "  " << std::left << std::setw(30) << k << num(v) << '\n';
  sink.summary(os.str());
  return kOk;
}

Op parse_or_identity(const std::string& path, Index dim) {
  if (path.empty()) return Op::Identity(dim, dim);
  return read_matrix_file(path);
}

}  // namespace

std::vector<double> parse_poly(const std::string& spec) {
  if (spec.rfind("poly:", 0) != 0) throw ParseError("expected poly:<c0,c1,...>, got '" + spec + "'");
  std::vector<double> c;
  for (const std::string& s : split(spec.substr(5), ',')) c.push_back(to_double(s, spec));
  if (c.empty()) throw ParseError("'" + spec + "' has no coefficients");
  return c;
}

RealFn parse_function(const std::string& spec, Parity parity) {
  static const std::map<std::string, std::vector<double>> named_even{
      {"zero", {0.0}}, {"harmonic", {0.0, 0.0, 1.0}}, {"quartic", {0.0, 0.0, 0.0, 0.0, 1.0}}};
  static const std::map<std::string, std::vector<double>> named_odd{
      {"zero", {0.0}}, {"linear", {0.0, 1.0}}, {"cubic", {0.0, 0.0, 0.0, 1.0}}};
  const auto& named = parity == Parity::Even ? named_even : named_odd;
  std::vector<double> c;
  if (auto it = named.find(spec); it != named.end()) {
    c = it->second;
  } else {
    c = parse_poly(spec);
  }
  return [c](double x) {
    double acc = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
    return acc;
  };
}

XiProfile parse_xi(const std::string& spec) {
  const std::vector<std::string> parts = split(spec, ':');
  if (parts.size() == 3 && parts[0] == "poly") {
    const double n = to_double(parts[1], spec);
    if (n != std::floor(n)) throw ParseError("xi order must be an integer in '" + spec + "'");
    return XiProfile::polynomial(static_cast<int>(n), to_double(parts[2], spec));
  }
  if (parts.size() == 2 && parts[0] == "const") return XiProfile::constant(to_double(parts[1], spec));
  throw ParseError("expected --xi poly:<n>:<ell> or const:<c>, got '" + spec + "'");
}

std::vector<double> parse_range(const std::string& spec) {
  const std::vector<std::string> parts = split(spec, ':');
  if (parts.size() != 3) throw ParseError("expected a range a:b:n, got '" + spec + "'");
  const double a = to_double(parts[0], spec);
  const double b = to_double(parts[1], spec);
  const double n = to_double(parts[2], spec);
  if (n < 1 || n != std::floor(n)) throw ParseError("range count must be a positive integer");
  std::vector<double> out;
  const auto count = static_cast<int>(n);
  for (int k = 0; k < count; ++k) out.push_back(count == 1 ? a : a + (b - a) * k / (count - 1));
  return out;
}

int cmd_check(const GlobalOptions& g, const std::string& matrix, const std::string& eta_file) {
  check_globals(g);
  const Op H = read_matrix_file(matrix);
  validate_op(H, "matrix");
  RunHeader h = make_header(g, "check");
  h.parameters["matrix"] = matrix;
  const Sink sink(g);

  if (!eta_file.empty()) {
    const Metric eta(read_matrix_file(eta_file));
    const double r = pseudo_hermiticity_residual(H, eta);
    h.parameters["eta"] = eta_file;
    sink.emit("residual.json",
              report_to_json({{"residual", r}, {"eta_condition", eta.condition_estimate()}}, h));
    std::ostringstream os;
    os << "residual ||eta H - H^dagger eta|| / (||eta|| ||H||) = " << num(r) << '\n';
    sink.summary(os.str());
    return r <= g.tol ? kOk : kNotPseudoHermitian;
  }

  const Certificate cert = certify_pseudo_hermiticity(H, g.tol);
  sink.emit("certificate.json", certificate_to_json(cert, h));
  sink.emit("spectrum.csv", spectrum_csv(cert.system.eigenvalues, cert.classification,
                                         multiplicities(cert.system), h));
  std::ostringstream os;
  os << "spectrum: " << describe(cert.classification) << '\n';
  if (cert.eta) {
    os << "metric residual: " << num(cert.residual) << '\n';
  } else {
    os << "verdict: not pseudo-Hermitian\n";
  }
  sink.summary(os.str());
  return exit_for(cert.classification);
}

int cmd_wdw(const GlobalOptions& g, const WdwArgs& a) {
  check_globals(g);
  return run_wdw(g, a, "wdw");
}

int cmd_wdw_sweep(const GlobalOptions& g, const WdwArgs& a, const std::string& alpha_range) {
  check_globals(g);
  const std::vector<double> alphas = parse_range(alpha_range);
  const WdwModel model = make_wdw(a);
  const auto points = wdw_alpha_sweep(model, alphas, 4, Exec::Parallel);
  RunHeader h = make_header(g, "wdw sweep");
  wdw_parameters(h, model);
  h.parameters["alpha_range"] = alpha_range;
  h.parameters["threads"] = std::to_string(parallel_threads());

  std::ostringstream csv;
  write_csv_header(csv, h);
  csv << "alpha,class,real_count,pair_count,boundary_case,e0_re,e0_im\n" << std::setprecision(17);
  for (const auto& p : points) {
    const cplx e0 = p.lowest.size() ? p.lowest[0] : cplx(0.0, 0.0);
    csv << p.alpha << ',' << to_string(p.kind) << ',' << p.real_count << ',' << p.pair_count << ','
        << (p.boundary_case ? 1 : 0) << ',' << e0.real() << ',' << e0.imag() << '\n';
  }
  const Sink sink(g);
  sink.emit("wdw_sweep.csv", csv.str());
  std::ostringstream os;
  os << "WDW sweep over " << points.size() << " alpha values (kappa=" << model.kappa() << ")\n";
  for (const auto& p : points) {
    os << "  alpha=" << std::setw(10) << num(p.alpha) << "  " << to_string(p.kind) << "  pairs="
       << p.pair_count << '\n';
  }
  sink.summary(os.str());
  return kOk;
}

int cmd_susy(const GlobalOptions& g, const SusyArgs& a) {
  check_globals(g);
  return run_susy(g, a, "susy");
}

int cmd_schrodinger(const GlobalOptions& g, const SchrodingerArgs& a) {
  check_globals(g);
  const GridOps ops = build_ops(make_grid(a.grid), parse_stencil(a.grid.stencil));
  const Op H = schrodinger_hamiltonian(ops, a.mass, parse_function(a.v_even, Parity::Even),
                                       parse_function(a.v_odd, Parity::Odd));
  const Eigen::VectorXcd ev = eigenvalues(H);
  const std::vector<Index> order = order_by_real_part(ev);
  const Index keep = std::min<Index>(a.levels, ev.size());
  Eigen::VectorXcd low(keep);
  for (Index k = 0; k < keep; ++k) low[k] = ev[order[static_cast<std::size_t>(k)]];
  const SpectrumClass cls = classify_eigenvalues(low, g.tol);

  RunHeader h = make_header(g, "schrodinger");
  h.parameters["v_even"] = a.v_even;
  h.parameters["v_odd"] = a.v_odd;
  h.parameters["mass"] = num(a.mass);
  h.parameters["n_points"] = std::to_string(a.grid.n_points);
  h.parameters["half_width"] = num(a.grid.half_width);
  h.parameters["stencil"] = a.grid.stencil;

  const Sink sink(g);
  sink.emit("spectrum.csv", spectrum_csv(low, cls, {}, h));
  const double p_res = pseudo_hermiticity_residual(H, Metric(ops.Par));
  const double pt_res = is_pt_symmetric(H, ops.Par);
  sink.emit("residuals.json", report_to_json({{"p_residual", p_res}, {"pt_residual", pt_res}}, h));
  std::ostringstream os;
  os << "lowest " << keep << " levels: " << describe(cls) << "\n  P residual " << num(p_res)
     << "  PT residual " << num(pt_res) << '\n';
  sink.summary(os.str());
  return kOk;
}

int cmd_random(const GlobalOptions& g, Index dim) {
  check_globals(g);
  if (dim < 1) throw ValidationError("--dim must be >= 1");
  Rng rng(g.seed);
  const Metric eta = random_metric(dim, rng);
  const Op H = random_pseudo_hermitian(eta, dim, derive_seed(g.seed, 1));
  GlobalOptions json_out = g;
  json_out.format = "json";
  const Sink sink(json_out);
  sink.emit("matrix.json", matrix_to_json(H, 2) + "\n");
  if (!g.out_dir.empty()) sink.emit("eta.json", matrix_to_json(eta.op(), 2) + "\n");
  std::ostringstream os;
  os << "random " << dim << "x" << dim << " pseudo-Hermitian matrix, seed " << g.seed
     << ", residual " << num(pseudo_hermiticity_residual(H, eta)) << '\n';
  sink.summary(os.str());
  return kOk;
}

int cmd_evolve(const GlobalOptions& g, const EvolveArgs& a) {
  check_globals(g);
  const Op H = read_matrix_file(a.matrix);
  validate_op(H, "matrix");
  const Metric eta(parse_or_identity(a.eta, H.rows()));
  if (eta.dim() != H.rows()) throw DimensionError("metric and matrix dimensions differ");

  Rng rng(g.seed);
  const StateVec psi1 = random_ginibre(H.rows(), 1, rng).col(0).normalized();
  const StateVec psi2 = random_ginibre(H.rows(), 1, rng).col(0).normalized();
  const EvolveOptions opts{a.stride};
  const Trajectory t1 = evolve(H, psi1, a.t_final, a.dt, opts);
  const Trajectory t2 = evolve(H, psi2, a.t_final, a.dt, opts);
  const double drift = inner_product_drift(t1, t2, eta);

  RunHeader h = make_header(g, "evolve");
  h.parameters["matrix"] = a.matrix;
  h.parameters["eta"] = a.eta.empty() ? "identity" : a.eta;
  h.parameters["t_final"] = num(a.t_final);
  h.parameters["dt"] = num(a.dt);
  std::ostringstream csv;
  write_csv_header(csv, h);
  write_inner_product_csv(csv, t1, t2, eta);

  const Sink sink(g);
  sink.emit("trajectory.csv", csv.str());
  sink.emit("drift.json",
            report_to_json({{"drift", drift},
                            {"pseudo_hermiticity_residual", pseudo_hermiticity_residual(H, eta)}},
                           h));
  std::ostringstream os;
  os << "inner-product drift over t in [0, " << a.t_final << "]: " << num(drift) << '\n';
  sink.summary(os.str());
  return kOk;
}

int cmd_demo(const GlobalOptions& g, const std::string& name, const WdwArgs& wdw, int poly_n) {
  check_globals(g);
  if (name == "pt-examples") {
    const GridOps ops = build_ops(Grid1D::make(201, 10.0));
    const Metric P(ops.Par);
    const Op h1 = example_h1(ops);
    const Op h2 = example_h2(ops);
    RunHeader h = make_header(g, "demo pt-examples");
    h.parameters["n_points"] = "201";
    h.parameters["half_width"] = "10";
    std::ostringstream csv;
    write_csv_header(csv, h);
    csv << "operator,p_residual,pt_residual\n" << std::setprecision(17);
    const double p1 = pseudo_hermiticity_residual(h1, P);
    const double t1 = is_pt_symmetric(h1, ops.Par);
    const double p2 = pseudo_hermiticity_residual(h2, P);
    const double t2 = is_pt_symmetric(h2, ops.Par);
    csv << "H1," << p1 << ',' << t1 << "\nH2," << p2 << ',' << t2 << '\n';
    const Sink sink(g);
    sink.emit("pt_examples.csv", csv.str());
    sink.emit("pt_examples.json",
              report_to_json({{"h1_p_residual", p1}, {"h1_pt_residual", t1},
                              {"h2_p_residual", p2}, {"h2_pt_residual", t2}},
                             h));
    std::ostringstream os;
    os << "operator      P residual        PT residual\n"
       << "p^2 + x^2 p   " << std::setw(16) << num(p1) << "  " << num(t1) << '\n'
       << "p^2 + i{x^2,p}" << std::setw(16) << num(p2) << "  " << num(t2) << '\n';
    sink.summary(os.str());
    return kOk;
  }
  if (name == "wdw") return run_wdw(g, wdw, "demo wdw");
  if (name == "susy-poly") {
    if (poly_n < 1) throw ValidationError("--n must be >= 1");
    SusyArgs a;
    a.xi = "poly:" + std::to_string(poly_n) + ":1";
    return run_susy(g, a, "demo susy-poly");
  }
  throw ValidationError("unknown demo '" + name + "' (pt-examples, wdw, susy-poly)");
}

}  // namespace pseudoherm::cli
