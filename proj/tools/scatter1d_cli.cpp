// Command-line front end: every pipeline stage with reproducible file output.
//
//   scatter1d coeffs         T, R1, R2 on a momentum grid            -> CSV
//   scatter1d classify       generic/exceptional verdict             -> JSON
//   scatter1d bound-states   eigenvalues and residuals               -> CSV
//   scatter1d kernel         propagator kernel slice at one time     -> CSV (--dump)
//   scatter1d decay          sqrt(t) sup|K_t| scan                   -> CSV
//   scatter1d evolve-linear  linear trajectory diagnostics           -> CSV
//   scatter1d evolve-nls     nonlinear trajectory                    -> CSV
//   scatter1d smatrix        packet-probed S-matrix vs Jost formulas -> CSV
//   scatter1d recover-lambda coupling-constant recovery              -> JSON
//   scatter1d verify         invariant suite                         -> JSON, exit code
//
// Exit codes: 0 success, 2 configuration error, 3 numerical error,
// 4 hypothesis violation (e.g. bound states where none are allowed).

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>

#include "scatter1d/fourier.hpp"
#include "scatter1d/io.hpp"
#include "scatter1d/nls.hpp"
#include "scatter1d/propagator.hpp"
#include "scatter1d/quadrature.hpp"
#include "scatter1d/scattering.hpp"

using namespace scatter1d;
using nlohmann::ordered_json;

namespace {

struct Options {
  std::string potential_path;
  std::string out_dir = ".";
  int grid_n = 0;
  double grid_xmax = 0.0;
  double kmax = 8.0;
  double kmin = 0.05;
  int kcount = 64;
  double t = 1.0;
  std::vector<double> times = {0.5, 1.0, 2.0, 4.0, 8.0};
  double lambda = 0.1;
  double p = 5.0;
  double dt = 1e-3;
  double t_end = 10.0;
  std::vector<double> eps = {0.2, 0.1, 0.05};
  double true_lambda = 0.05;
  double horizon = 40.0;
  double smatrix_k = 1.5;
  bool dump = false;
  int snap_stride = 0;
};

PotentialSpec load_or_default(const Options& opt) {
  PotentialConfig cfg;
  if (!opt.potential_path.empty()) {
    cfg = load_potential_json(opt.potential_path);
  } else {
    cfg.spec = zero_potential();
  }
  if (opt.grid_n > 0) cfg.n = opt.grid_n;
  if (opt.grid_xmax > 0.0) cfg.x_max = opt.grid_xmax;
  return build_from_config(cfg);
}

std::filesystem::path out_path(const Options& opt, const std::string& name) {
  std::filesystem::create_directories(opt.out_dir);
  return std::filesystem::path(opt.out_dir) / name;
}

void write_json(const std::filesystem::path& path, const ordered_json& j) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw config_error("cannot write " + path.string());
  out << j.dump(2) << "\n";
}

ComplexField default_state(const SpectralData& sd, double width, double x_norm_target) {
  ComplexField f(static_cast<std::size_t>(sd.grid.n));
  for (int i = 0; i < sd.grid.n; ++i) {
    const double x = sd.grid.x(i);
    f[i] = std::exp(-x * x / (2.0 * width * width));
  }
  const double s = x_norm_target / x_norm(f, sd);
  for (auto& z : f.v) z *= s;
  return f;
}

int cmd_coeffs(const Options& opt) {
  const PotentialSpec v = load_or_default(opt);
  const MomentumGrid kg = MomentumGrid::uniform_punctured(opt.kmin, opt.kmax, opt.kcount);
  const ScatteringCoefficients c = scattering_coefficients(v, kg);
  std::vector<std::vector<double>> rows;
  for (std::size_t j = 0; j < c.k.size(); ++j) {
    rows.push_back({c.k[j], c.T[j].real(), c.T[j].imag(), c.R1[j].real(), c.R1[j].imag(),
                    c.R2[j].real(), c.R2[j].imag(), c.unitarity_defect[j]});
  }
  write_csv(out_path(opt, "coeffs.csv"),
            {"k", "re_T", "im_T", "re_R1", "im_R1", "re_R2", "im_R2", "unitarity_defect"},
            rows);
  return 0;
}

int cmd_classify(const Options& opt) {
  const PotentialSpec v = load_or_default(opt);
  const ClassifyResult res = classify(v);
  const HypothesisResult hyp = hypothesis_check(v, res.classification);
  ordered_json j;
  j["classification"] =
      res.classification == Classification::exceptional ? "exceptional" : "generic";
  if (res.classification == Classification::exceptional) j["a"] = res.a;
  j["wronskian"] = {res.wronskian.real(), res.wronskian.imag()};
  j["threshold"] = res.threshold;
  j["hypothesis_pass"] = hyp.pass;
  j["required_gamma"] = hyp.required_gamma;
  j["gamma_star"] = hyp.report.gamma_star;
  j["unverified_decay"] = v.unverified_decay;
  write_json(out_path(opt, "classify.json"), j);
  return 0;
}

int cmd_bound_states(const Options& opt) {
  const PotentialSpec v = load_or_default(opt);
  const std::vector<BoundState> bs = find_bound_states(v);
  std::vector<std::vector<double>> rows;
  for (const BoundState& b : bs)
    rows.push_back({b.beta, b.norm_residual, b.eigen_residual});
  write_csv(out_path(opt, "bound_states.csv"), {"beta", "norm_residual", "eigen_residual"},
            rows);
  return 0;
}

SpectralData spectral_for(const Options& opt, bool need_maps) {
  const PotentialSpec v = load_or_default(opt);
  SpectralOptions sopt;
  sopt.unitarize = need_maps;
  return build_spectral_data(v, sopt);
}

int cmd_kernel(const Options& opt) {
  const SpectralData sd = spectral_for(opt, false);
  const KernelSlice slice = kernel_continuous(opt.t, sd, {});
  ordered_json j;
  j["t"] = opt.t;
  j["sup_abs"] = slice.sup_abs;
  j["scaled_sup"] = std::sqrt(opt.t) * slice.sup_abs;
  j["window_nodes"] = slice.count();
  write_json(out_path(opt, "kernel_summary.json"), j);
  if (opt.dump) {
    std::vector<std::vector<double>> rows;
    for (int ix = 0; ix < slice.count(); ++ix)
      for (int iy = 0; iy < slice.count(); ++iy)
        rows.push_back({slice.xs[ix], slice.xs[iy], slice.at(ix, iy).real(),
                        slice.at(ix, iy).imag()});
    write_csv(out_path(opt, "kernel.csv"), {"x", "y", "re_K", "im_K"}, rows);
  }
  return 0;
}

int cmd_decay(const Options& opt) {
  const SpectralData sd = spectral_for(opt, false);
  const DecayReport2 rep = decay_scan(sd, opt.times, {});
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < rep.times.size(); ++i)
    rows.push_back({rep.times[i], rep.sup_abs[i], rep.scaled_sup[i]});
  write_csv(out_path(opt, "decay.csv"), {"t", "sup_abs", "scaled_sup"}, rows);
  ordered_json j;
  j["max_over_min"] = rep.max_over_min;
  write_json(out_path(opt, "decay_summary.json"), j);
  return 0;
}

void write_trajectory(const Options& opt, const Trajectory& tr, const SpatialGrid& g) {
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < tr.times.size(); ++i)
    rows.push_back({tr.times[i], tr.mass[i], tr.energy[i], tr.sup[i]});
  write_csv(out_path(opt, "trajectory.csv"), {"t", "mass", "energy", "sup_abs"}, rows);
  if (opt.dump) {
    for (std::size_t s = 0; s < tr.snapshots.size(); ++s) {
      std::vector<std::vector<double>> field;
      for (int i = 0; i < g.n; ++i)
        field.push_back(
            {g.x(i), tr.snapshots[s].psi[i].real(), tr.snapshots[s].psi[i].imag()});
      write_csv(out_path(opt, "field_" + std::to_string(s) + ".csv"),
                {"x", "re_u", "im_u"}, field);
    }
  }
}

int cmd_evolve_linear(const Options& opt) {
  const SpectralData sd = spectral_for(opt, true);
  const ComplexField phi = default_state(sd, 1.0, 0.3);
  NlsConfig cfg;
  cfg.lambda = 0.0;
  cfg.p = 5.0;
  cfg.dt = opt.dt;
  cfg.t0 = 0.0;
  cfg.t1 = opt.t_end;
  cfg.snapshot_stride = opt.snap_stride;
  const Trajectory tr = evolve_nls(phi, cfg, sd);
  write_trajectory(opt, tr, sd.grid);
  return 0;
}

int cmd_evolve_nls(const Options& opt) {
  const SpectralData sd = spectral_for(opt, true);
  const ComplexField phi = default_state(sd, 1.0, 0.3);
  NlsConfig cfg;
  cfg.lambda = opt.lambda;
  cfg.p = opt.p;
  cfg.dt = opt.dt;
  cfg.t0 = 0.0;
  cfg.t1 = opt.t_end;
  cfg.snapshot_stride = opt.snap_stride;
  if (!cfg.stability_ok(phi))
    std::cerr << "note: stability advisory |lambda| sup|u|^{p-1} dt < 0.1 not met\n";
  const Trajectory tr = evolve_nls(phi, cfg, sd);
  write_trajectory(opt, tr, sd.grid);
  return 0;
}

int cmd_smatrix(const Options& opt) {
  const SpectralData sd = spectral_for(opt, true);
  const SMatrixSample s = sl_matrix(opt.smatrix_k, sd);
  const MomentumGrid kg =
      MomentumGrid::uniform_punctured(opt.smatrix_k, 2.0 * opt.smatrix_k, 2);
  const ScatteringCoefficients c = scattering_coefficients(sd.potential, kg);
  const double defect =
      std::max({std::abs(s.t11 - c.t_at(opt.smatrix_k)), std::abs(s.r12 - c.R1[2]),
                std::abs(s.r21 - c.R2[2]), std::abs(s.t22 - c.t_at(opt.smatrix_k))});
  write_csv(out_path(opt, "smatrix.csv"),
            {"k", "re_t11", "im_t11", "re_r12", "im_r12", "re_r21", "im_r21", "re_t22",
             "im_t22", "unitarity_defect", "defect_vs_jost"},
            {{s.k, s.t11.real(), s.t11.imag(), s.r12.real(), s.r12.imag(), s.r21.real(),
              s.r21.imag(), s.t22.real(), s.t22.imag(), s.unitarity_defect, defect}});
  return 0;
}

int cmd_recover_lambda(const Options& opt) {
  const SpectralData sd = spectral_for(opt, true);
  const ComplexField phi = default_state(sd, 1.0, 0.5);
  NlsConfig cfg;
  cfg.lambda = opt.true_lambda;
  cfg.p = opt.p;
  cfg.dt = 0.05;
  const LambdaRecovery rec = recover_lambda(phi, cfg, sd, opt.eps, opt.horizon);
  ordered_json j;
  j["epsilons"] = rec.epsilons;
  ordered_json raws = ordered_json::array();
  for (const Complex& r : rec.raw) raws.push_back({r.real(), r.imag()});
  j["raw"] = raws;
  j["extrapolated"] = {rec.extrapolated.real(), rec.extrapolated.imag()};
  j["kappa"] = {rec.kappa.real(), rec.kappa.imag()};
  j["calibrated"] = rec.calibrated;
  j["true_lambda"] = opt.true_lambda;
  j["denominator"] = rec.denominator;
  j["horizon"] = rec.horizon;
  ordered_json defects;
  for (const auto& [k, v] : rec.defects) defects[k] = v;
  j["defects"] = defects;
  write_json(out_path(opt, "recover_lambda.json"), j);
  return 0;
}

int cmd_verify(const Options& opt) {
  ordered_json checks = ordered_json::array();
  bool all = true;
  auto check = [&](const std::string& name, double value, double tol) {
    const bool pass = value < tol;
    all = all && pass;
    checks.push_back(
        {{"name", name}, {"value", value}, {"tolerance", tol}, {"pass", pass}});
    std::cout << (pass ? "pass  " : "FAIL  ") << name << "  (" << fmt17(value) << " < "
              << fmt17(tol) << ")\n";
  };

  {
    const SpatialGrid g = SpatialGrid::symmetric(12.0, 1024);
    ComplexField f(static_cast<std::size_t>(g.n));
    for (int i = 0; i < g.n; ++i) f[i] = std::exp(-g.x(i) * g.x(i));
    check("quadrature gaussian vs sqrt(pi)",
          std::abs(quadrature(f, g).real() - std::sqrt(std::numbers::pi)), 1e-10);
  }
  {
    const SpatialGrid g = SpatialGrid::symmetric(40.0, 1024);
    ComplexField f(static_cast<std::size_t>(g.n));
    for (int i = 0; i < g.n; ++i)
      f[i] = std::exp(Complex(0.0, 1.3 * g.x(i))) * std::exp(-0.5 * g.x(i) * g.x(i));
    const FourierField fh = fourier_forward(f, g);
    check("fourier Parseval", std::abs(l2_norm(fh.values, fh.grid.dk) - l2_norm(f, g.dx)),
          1e-10);
  }
  {
    const SpatialGrid g = SpatialGrid::symmetric(40.0, 2048);
    const PotentialSpec v = build_potential(poschl_teller(1.0), g);
    const JostSolution s = solve_m(1, v, Complex(1.0, 0.0));
    double worst = 0.0;
    for (int i = 0; i < g.n; ++i) {
      const double x = g.x(i);
      if (std::abs(x) > 10.0) continue;
      const Complex exact =
          (Complex(1.0, 0.0) + Complex(0.0, 1.0) * std::tanh(x)) / Complex(1.0, 1.0);
      worst = std::max(worst, std::abs(s.m[i] - exact));
    }
    check("poschl_teller m1 closed form (k=1)", worst, 1e-6);
    const MomentumGrid kg = MomentumGrid::uniform_punctured(0.5, 4.0, 8);
    const ScatteringCoefficients c = scattering_coefficients(v, kg);
    double unit = 0.0;
    for (double u : c.unitarity_defect) unit = std::max(unit, u);
    check("poschl_teller unitarity", unit, 1e-8);
    const std::vector<BoundState> bs = find_bound_states(v);
    check("poschl_teller bound state count == 1", std::abs(double(bs.size()) - 1.0), 0.5);
    check("poschl_teller beta vs 1", bs.empty() ? 1.0 : std::abs(bs[0].beta - 1.0), 1e-6);
  }
  {
    const SpatialGrid g = SpatialGrid::symmetric(40.0, 1024);
    const ClassifyResult z = classify(build_potential(zero_potential(), g));
    check("zero potential exceptional, a = 1",
          (z.classification == Classification::exceptional ? 0.0 : 1.0) +
              std::abs(z.a - 1.0),
          1e-9);
    const double v0 = std::numbers::pi * std::numbers::pi / 4.0;
    const ClassifyResult r = classify(
        build_potential(square_well(v0, 1.0), make_aligned_grid(1.0, 40.0, 1024)));
    check("resonant well exceptional",
          r.classification == Classification::exceptional ? 0.0 : 1.0, 0.5);
    const ClassifyResult gnr = classify(
        build_potential(square_well(1.0, 1.0), make_aligned_grid(1.0, 40.0, 1024)));
    check("square well (1,1) generic",
          gnr.classification == Classification::generic ? 0.0 : 1.0, 0.5);
  }
  {
    const SpatialGrid g = SpatialGrid::symmetric(40.0, 512);
    SpectralOptions sopt;
    sopt.n_k_half = 255;
    const SpectralData sd =
        build_spectral_data(build_potential(poschl_teller(1.0), g), sopt);
    ComplexField phi(static_cast<std::size_t>(g.n));
    for (int i = 0; i < g.n; ++i) {
      const double x = g.x(i);
      phi[i] = std::exp(Complex(0.0, 0.7 * x)) * std::exp(-(x - 1.0) * (x - 1.0) / 6.0);
    }
    const double total = std::pow(l2_norm(phi, g.dx), 2.0);
    double spec = std::pow(l2_norm(sd.forward_map(phi), sd.kgrid.dk), 2.0);
    for (const BoundState& b : sd.bound) spec += std::norm(inner(phi, b.psi, g.dx));
    check("completeness (Parseval + point spectrum)", std::abs(spec - total) / total,
          1e-6);
    check("free kernel modulus at t=1",
          std::abs(std::abs(free_kernel(1.0, 0.0, 0.0)) -
                   1.0 / std::sqrt(4.0 * std::numbers::pi)),
          1e-12);
  }
  {
    bool ok = true;
    try {
      const WaveOpCalibration cal = calibrate_wave_operator_convention();
      ok = cal.pass && cal.minus_is_fplus;
    } catch (const std::exception&) {
      ok = false;
    }
    check("wave-operator convention calibration", ok ? 0.0 : 1.0, 0.5);
  }

  ordered_json j;
  j["checks"] = checks;
  j["all_pass"] = all;
  write_json(out_path(opt, "verify.json"), j);
  return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"1-D Schrodinger scattering toolkit"};
  app.require_subcommand(1);
  Options opt;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--potential", opt.potential_path, "potential spec JSON");
    sub->add_option("--out", opt.out_dir, "output directory");
    sub->add_option("--grid-n", opt.grid_n, "grid node count override (power of two)");
    sub->add_option("--grid-xmax", opt.grid_xmax, "half box size override");
    sub->add_option("--kmax", opt.kmax, "largest momentum");
    sub->add_option("--kmin", opt.kmin, "puncture radius / smallest momentum");
    sub->add_option("--kcount", opt.kcount, "momentum samples per side");
    sub->add_option("--t", opt.t, "kernel time");
    sub->add_option("--times", opt.times, "decay scan times")->delimiter(',');
    sub->add_option("--lambda", opt.lambda, "nonlinear coupling");
    sub->add_option("--p", opt.p, "nonlinearity power (>= 5)");
    sub->add_option("--dt", opt.dt, "time step");
    sub->add_option("--t-end", opt.t_end, "evolution end time");
    sub->add_option("--eps", opt.eps, "epsilon ladder")->delimiter(',');
    sub->add_option("--true-lambda", opt.true_lambda, "coupling to recover");
    sub->add_option("--horizon", opt.horizon, "scattering horizon T_h");
    sub->add_option("--k", opt.smatrix_k, "smatrix probe momentum");
    sub->add_option("--snap-stride", opt.snap_stride, "field snapshot stride");
    sub->add_flag("--dump", opt.dump, "write full kernel / field dumps");
  };

  auto* coeffs = app.add_subcommand("coeffs", "transmission/reflection coefficients");
  auto* classify_cmd = app.add_subcommand("classify", "generic/exceptional verdict");
  auto* bound = app.add_subcommand("bound-states", "negative eigenvalues");
  auto* kernel = app.add_subcommand("kernel", "propagator kernel slice");
  auto* decay = app.add_subcommand("decay", "dispersive decay scan");
  auto* evl = app.add_subcommand("evolve-linear", "linear evolution trajectory");
  auto* evn = app.add_subcommand("evolve-nls", "nonlinear evolution trajectory");
  auto* smx = app.add_subcommand("smatrix", "packet-probed S-matrix sample");
  auto* rec = app.add_subcommand("recover-lambda", "coupling-constant recovery");
  auto* ver = app.add_subcommand("verify", "invariant suite");
  for (CLI::App* sub : {coeffs, classify_cmd, bound, kernel, decay, evl, evn, smx, rec, ver})
    add_common(sub);

  CLI11_PARSE(app, argc, argv);

  try {
    if (coeffs->parsed()) return cmd_coeffs(opt);
    if (classify_cmd->parsed()) return cmd_classify(opt);
    if (bound->parsed()) return cmd_bound_states(opt);
    if (kernel->parsed()) return cmd_kernel(opt);
    if (decay->parsed()) return cmd_decay(opt);
    if (evl->parsed()) return cmd_evolve_linear(opt);
    if (evn->parsed()) return cmd_evolve_nls(opt);
    if (smx->parsed()) return cmd_smatrix(opt);
    if (rec->parsed()) return cmd_recover_lambda(opt);
    if (ver->parsed()) return cmd_verify(opt);
  } catch (const hypothesis_error& e) {
    std::cerr << "hypothesis violation: " << e.what() << "\n";
    return 4;
  } catch (const numeric_error& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return 3;
  } catch (const config_error& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
